//! `coxinv`: run verification suites, emit computed objects, rewrite
//! invariants in the basic invariants, and time kernel workloads.

mod bench;
mod emit;
mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::suites::{RunConfig, Suite};

#[derive(Parser, Debug)]
#[command(name = "coxinv", version, about = "Exact invariant theory of H3 and H4 over Q(sqrt 5)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one or more verification suites.
    Verify {
        #[arg(long, required = true, value_enum)]
        suite: Vec<Suite>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sample points per prime for modular identity tests.
        #[arg(long, default_value_t = coxinv::algebra::Mode::DEFAULT_POINTS)]
        points: usize,
        /// Expand every identity instead of testing at points.
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a computed object in canonical form.
    Emit {
        #[command(subcommand)]
        object: emit::Object,
        #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
        format: Format,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Write an invariant polynomial in u1, u2, ... in terms of the basic
    /// invariants.
    Solve {
        /// File holding a homogeneous invariant in u1, ..., un.
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_enum)]
        basis: emit::GroupArg,
        #[arg(long, value_enum, default_value_t = emit::VariantArg::Plain)]
        variant: emit::VariantArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time a kernel workload.
    Bench {
        #[arg(value_enum)]
        workload: bench::Workload,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_text(r: &coxinv::VerifyReport) -> String {
    let mut s = format!("{} {}\n", r.suite, if r.passed() { "PASS" } else { "FAIL" });
    for c in &r.checks {
        let mark = if c.passed() { "ok  " } else { "FAIL" };
        if c.detail.is_empty() {
            s.push_str(&format!("  {mark} {}\n", c.label));
        } else {
            s.push_str(&format!("  {mark} {}: {}\n", c.label, c.detail));
        }
    }
    for (k, v) in &r.derived_constants {
        s.push_str(&format!("  const {k} = {v}\n"));
    }
    s
}

/// 0 when every report passed, 1 otherwise.
fn exit_code(reports: &[coxinv::VerifyReport]) -> u8 {
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    }
}

fn render(reports: &[coxinv::VerifyReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => format!("{}\n", reports[0].to_json()),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(reports).expect("serializable")),
        Format::Text => reports.iter().map(report_text).collect(),
    }
}

fn verify(suites: &[Suite], cfg: RunConfig) -> Vec<coxinv::VerifyReport> {
    Suite::expand(suites).par_iter().map(|s| s.run(cfg)).collect()
}

fn configure_threads() {
    if let Some(n) = std::env::var("COXINV_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Runs one command line and returns the process exit code.
fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Verify { suite, seed, points, exact, format, out } => {
            let reports = verify(&suite, RunConfig { seed, points, exact });
            write_out(&render(&reports, format), out.as_ref()).map(|_| exit_code(&reports))
        }
        Command::Emit { object, format, out } => {
            emit::emit(&object, format).and_then(|text| write_out(&text, out.as_ref())).map(|_| 0)
        }
        Command::Solve { target, basis, variant, seed } => match emit::solve(basis, variant, &target, seed) {
            Ok(text) => {
                print!("{text}");
                Ok(0)
            }
            Err(emit::SolveError::Input(e)) => Err(e),
            Err(emit::SolveError::NoExpression(e)) => {
                eprintln!("error: {e}");
                Ok(1)
            }
        },
        Command::Bench { workload, seed } => {
            print!("{}", bench::run(workload, seed));
            Ok(0)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    ExitCode::from(run(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use coxinv::algebra::Poly;
    use coxinv::data::{canonical, canonical_text};
    use coxinv::frobenius::{h3_disc_target, h3_disc_with};

    fn tmp(name: &str) -> PathBuf {
        std::env::temp_dir().join(format!("coxinv-{}-{name}", std::process::id()))
    }

    fn args(line: &str) -> Vec<String> {
        std::iter::once("coxinv").chain(line.split_whitespace()).map(String::from).collect()
    }

    #[test]
    fn passing_suite_exits_zero() {
        let out = tmp("h3-disc.json");
        let line = format!("verify --suite h3-disc --out {}", out.display());
        assert_eq!(run(args(&line)), 0);
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["suite"], "h3-disc");
        assert_eq!(v["status"], "pass");
        fs::remove_file(out).ok();
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(args("verify --suite nope")), 2);
        assert_eq!(run(args("verify")), 2);
        assert_eq!(run(args("emit invariant --name Q3")), 2);
        assert_eq!(run(args("emit y-in-t --j 7")), 2);
        assert_eq!(run(args("solve --target /nonexistent/target.txt --basis h3")), 2);
    }

    #[test]
    fn several_suites_render_an_array_in_order() {
        let reports = verify(&[Suite::H3Disc, Suite::H3Jacobian, Suite::H3Disc], RunConfig { seed: 1, points: 40, exact: false });
        let v: serde_json::Value = serde_json::from_str(&render(&reports, Format::Json)).unwrap();
        let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
        assert_eq!(names, ["h3-disc", "h3-jacobian"]);
    }

    #[test]
    fn corrupted_golden_coefficient_exits_one() {
        let golden = canonical_text(canonical::H3_DISCRIMINANT);
        let printed = h3_disc_target();
        assert_eq!(exit_code(&[h3_disc_with(golden, &printed)]), 0);

        let bad_text = golden.replacen("-1/1000*x1^15", "-1/999*x1^15", 1);
        assert_ne!(bad_text, golden);
        assert_eq!(exit_code(&[h3_disc_with(&bad_text, &printed)]), 1);

        let (m, c) = printed.terms()[2].clone();
        let bad = &printed + &Poly::from_terms(printed.ring(), vec![(m, c)]);
        assert_eq!(exit_code(&[h3_disc_with(golden, &bad)]), 1);
    }

    #[test]
    fn emit_group_order() {
        let text = emit::emit(&emit::Object::Group { group: emit::GroupArg::H4, variant: emit::VariantArg::Plain }, Format::Text)
            .unwrap();
        assert!(text.lines().any(|l| l == "order 14400"));
        assert!(text.lines().any(|l| l == "reflections 60"));
    }

    #[test]
    fn emit_h3_discriminant_is_golden() {
        let text = emit::emit(&emit::Object::Disc { name: emit::DiscArg::H3 }, Format::Text).unwrap();
        assert_eq!(text.trim(), canonical_text(canonical::H3_DISCRIMINANT));
    }

    #[test]
    fn emit_invariant_leads_with_grlex_leading_term() {
        let text = emit::emit(&emit::Object::Invariant { name: "I2".into() }, Format::Text).unwrap();
        assert!(text.starts_with("(20+20*r5)*u1^4*u2^2+"));
        let json = emit::emit(&emit::Object::Invariant { name: "Z2*".into() }, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["canonical"], "u1^2+u2^2+u3^2+u4^2");
    }

    #[test]
    fn emit_y_in_t_writes_header_and_polynomial() {
        let out = tmp("y12.txt");
        assert_eq!(run(args(&format!("emit y-in-t --j 12 --out {}", out.display()))), 0);
        let text = fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("# w0^7*Y12 in (t1, t2, t4, w0)\n"));
        assert!(text.contains(&format!("# coxinv {}\n", env!("CARGO_PKG_VERSION"))));
        fs::remove_file(out).ok();
    }

    #[test]
    fn solve_writes_in_basic_invariants() {
        let target = tmp("target.txt");
        fs::write(&target, "# sum of squares\nu1^2+u2^2+u3^2\n").unwrap();
        assert_eq!(emit::solve(emit::GroupArg::H3, emit::VariantArg::Plain, &target, 1).ok().unwrap(), "1/2*I1\n");
        fs::write(&target, "u1\n").unwrap();
        assert_eq!(run(args(&format!("solve --target {} --basis h3", target.display()))), 1);
        fs::remove_file(target).ok();
    }
}
