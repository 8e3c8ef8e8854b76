//! `emit` and `solve`.

use std::fs;
use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use coxinv::algebra::text::{parse_poly, PolyJson};
use coxinv::algebra::{Formula, Poly};
use coxinv::coxeter::{enumerate_group, find_reflections, GroupType, Variant};
use coxinv::frobenius::{discriminant_poly, psi_tilde, y_in_t, PrepotentialName};
use coxinv::invariants::{basic_invariants, express_in_invariants, u_ring};
use serde_json::json;

use crate::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    H3,
    H4,
}

impl From<GroupArg> for GroupType {
    fn from(g: GroupArg) -> GroupType {
        match g {
            GroupArg::H3 => GroupType::H3,
            GroupArg::H4 => GroupType::H4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plain,
    Star,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Star => Variant::Star,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DiscArg {
    H3,
    H4,
    H3prime,
    #[value(name = "h4_9")]
    H49,
}

#[derive(Subcommand, Debug)]
pub enum Object {
    /// Group order, element count by trace and normalized reflection forms.
    Group {
        #[arg(long = "type", value_enum)]
        group: GroupArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
    },
    /// A basic invariant: I1..I3, J1..J3, Z2, Z12, Z20, Z30, or Z2*.. for
    /// the star group.
    Invariant {
        #[arg(long)]
        name: String,
    },
    /// A discriminant computed from its prepotential (72e6*w0^10*Psi for h4_9).
    Disc {
        #[arg(long, value_enum)]
        name: DiscArg,
    },
    /// w0^k * Y_j in (t1, t2, t4, w0).
    YInT {
        #[arg(long, value_parser = ["2", "12", "20", "30"])]
        j: String,
    },
}

fn poly_out(name: &str, p: &Poly, header: &[String], format: Format) -> String {
    match format {
        Format::Text => {
            let mut s: String = header.iter().map(|h| format!("# {h}\n")).collect();
            s.push_str(&p.canonical());
            s.push('\n');
            s
        }
        Format::Json => {
            let v = json!({ "name": name, "header": header, "canonical": p.canonical(), "poly": PolyJson::of(p) });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
    }
}

fn invariant(name: &str) -> Result<Poly, String> {
    let (base, variant) = match name.strip_suffix('*') {
        Some(b) => (b, Variant::Star),
        None => (name, Variant::Plain),
    };
    let candidates = [
        (GroupType::H3, Variant::Plain),
        (GroupType::H3, Variant::Star),
        (GroupType::H4, variant),
    ];
    for (g, v) in candidates {
        if g == GroupType::H3 && base != name {
            continue;
        }
        if let Some(p) = basic_invariants(g, v).get(base) {
            return Ok(p.clone());
        }
    }
    Err(format!("unknown invariant {name:?}"))
}

pub fn emit(object: &Object, format: Format) -> Result<String, String> {
    match object {
        Object::Group { group, variant } => {
            let g: GroupType = (*group).into();
            let v: Variant = (*variant).into();
            let table = enumerate_group(&g.generators(v)).map_err(|e| e.to_string())?;
            let forms: Vec<String> =
                find_reflections(&table, &u_ring(g.rank())).iter().map(|r| r.form.canonical()).collect();
            let traces = table.trace_counts();
            Ok(match format {
                Format::Text => {
                    let mut s = format!("group {g} {v}\norder {}\n", table.order());
                    for (t, n) in &traces {
                        s.push_str(&format!("trace {t} {n}\n"));
                    }
                    s.push_str(&format!("reflections {}\n", forms.len()));
                    for f in &forms {
                        s.push_str(f);
                        s.push('\n');
                    }
                    s
                }
                Format::Json => {
                    let traces: Vec<_> = traces.iter().map(|(t, n)| json!({ "trace": t, "count": n })).collect();
                    let v = json!({
                        "group": g.to_string(),
                        "variant": v.to_string(),
                        "order": table.order(),
                        "traces": traces,
                        "reflections": forms,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
                }
            })
        }
        Object::Invariant { name } => Ok(poly_out(name, &invariant(name)?, &[], format)),
        Object::Disc { name } => {
            let (label, p) = match name {
                DiscArg::H3 => ("Delta_H3", discriminant_poly(PrepotentialName::H3)),
                DiscArg::H4 => ("Delta_H4", discriminant_poly(PrepotentialName::H4)),
                DiscArg::H3prime => ("Delta_(H3)'", discriminant_poly(PrepotentialName::H3Prime)),
                DiscArg::H49 => ("Psi~", psi_tilde()),
            };
            Ok(poly_out(label, &p.map_err(|e| e.to_string())?, &[], format))
        }
        Object::YInT { j } => {
            let (idx, k) = match j.as_str() {
                "2" => (0, 0),
                "12" => (1, 7),
                "20" => (2, 10),
                _ => (3, 15),
            };
            let y = y_in_t().map_err(|e| e.to_string())?.swap_remove(idx);
            let w0 = Poly::var(y.ring(), "w0").map_err(|e| e.to_string())?;
            let cleared = y.mul_poly(&w0.pow(k));
            let p = cleared.as_poly().cloned().ok_or_else(|| format!("w0^{k}*Y{j} is not a polynomial"))?;
            let header = vec![
                format!("w0^{k}*Y{j} in (t1, t2, t4, w0)"),
                "seed 1 (unused: exact substitution)".to_string(),
                "mode exact".to_string(),
                format!("coxinv {}", env!("CARGO_PKG_VERSION")),
            ];
            Ok(poly_out(&format!("w0^{k}*Y{j}"), &p, &header, format))
        }
    }
}

pub enum SolveError {
    /// Unreadable file, parse error or inhomogeneous target.
    Input(String),
    /// The target is not a polynomial in the basic invariants.
    NoExpression(String),
}

/// Reads a homogeneous invariant in u1, ..., un from `target` and prints
/// it in the basic invariants.
pub fn solve(group: GroupArg, variant: VariantArg, target: &PathBuf, seed: u64) -> Result<String, SolveError> {
    use SolveError::Input;
    let basis = basic_invariants(group.into(), variant.into());
    let src = fs::read_to_string(target).map_err(|e| Input(format!("{}: {e}", target.display())))?;
    let text: String = src.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join(" ");
    let text = text.trim().trim_end_matches(';');
    let f = parse_poly(text, &basis.ring).map_err(|e| Input(e.to_string()))?;
    let mut degrees = f.terms().iter().map(|(m, _)| m.degree());
    let degree = degrees.next().unwrap_or(0);
    if degrees.any(|d| d != degree) {
        return Err(Input("target is not homogeneous".into()));
    }
    let e = express_in_invariants(&Formula::from(&f), degree, &basis, seed)
        .map_err(|e| SolveError::NoExpression(e.to_string()))?;
    Ok(format!("{}\n", e.expr.canonical()))
}
