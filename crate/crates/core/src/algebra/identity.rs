//! Identity testing: exact expansion or evaluation at random points modulo
//! several primes.

use rayon::prelude::*;

use super::formula::Formula;
use super::golden::Golden;
use super::modular::{BadPoint, ModCtx, Rng};
use crate::report::Check;

/// How an identity is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    /// `points` samples per prime, for each of the fixed primes.
    Modular { points: usize, seed: u64 },
}

impl Mode {
    pub const DEFAULT_POINTS: usize = 40;

    pub fn modular(seed: u64) -> Mode {
        Mode::Modular { points: Self::DEFAULT_POINTS, seed }
    }

    pub fn describe(&self) -> String {
        match self {
            Mode::Exact => "exact".into(),
            Mode::Modular { points, seed } => format!("modular({points} points x 3 primes, seed {seed})"),
        }
    }
}

/// Gives up after this many vanishing denominators per prime.
const MAX_BAD_POINTS: usize = 1000;

/// Checks `lhs = rhs` as functions of the input variables.
pub fn check_identity(label: &str, lhs: &Formula, rhs: &Formula, mode: Mode) -> Check {
    match mode {
        Mode::Exact => exact(label, lhs, rhs),
        Mode::Modular { points, seed } => modular(label, lhs, rhs, points, seed),
    }
}

fn exact(label: &str, lhs: &Formula, rhs: &Formula) -> Check {
    let diff = Formula::sub(lhs.clone(), rhs.clone());
    match diff.expand() {
        Ok(d) if d.is_zero() => Check::new(label, true, "exact expansion"),
        Ok(d) => {
            let lead = d.numerator().leading().map(|(m, c)| {
                format!("{}*{}", c.canonical(), m.render(d.ring()))
            });
            Check::new(label, false, format!("exact: difference has leading term {}", lead.unwrap_or_default()))
        }
        Err(e) => Check::new(label, false, format!("exact expansion failed: {e}")),
    }
}

fn modular(label: &str, lhs: &Formula, rhs: &Formula, points: usize, seed: u64) -> Check {
    let diff = Formula::sub(lhs.clone(), rhs.clone());
    let nvars = lhs.ring().nvars();
    let deg = diff.degree_bound().max(1);
    for (k, ctx) in ModCtx::standard().iter().enumerate() {
        let compiled = match diff.compile(ctx) {
            Ok(c) => c,
            Err(BadPoint) => return Check::new(label, false, format!("coefficient denominator vanishes mod {}", ctx.p)),
        };
        let mut rng = Rng::new(seed ^ (0x5851F42D4C957F2D_u64.wrapping_mul(k as u64 + 1)));
        let mut good = 0;
        let mut bad = 0;
        while good < points {
            let batch: Vec<Vec<u64>> =
                (0..points - good).map(|_| (0..nvars).map(|_| rng.below(ctx.p)).collect()).collect();
            let vals: Vec<Result<u64, BadPoint>> = batch.par_iter().map(|pt| compiled.eval(pt, ctx)).collect();
            for (pt, v) in batch.iter().zip(vals) {
                match v {
                    Ok(0) => good += 1,
                    Ok(x) => {
                        return Check::new(
                            label,
                            false,
                            format!("modular: mismatch mod {} at point {:?} (difference {})", ctx.p, pt, x),
                        )
                    }
                    Err(BadPoint) => bad += 1,
                }
            }
            if bad > MAX_BAD_POINTS {
                return Check::new(label, false, format!("modular: too many bad points mod {}", ctx.p));
            }
        }
    }
    let bits_per_point = 62.0 - (deg as f64).log2();
    let bits = bits_per_point * (3 * points) as f64;
    Check::new(
        label,
        true,
        format!("modular: {points} points x 3 primes, degree bound {deg}, false-pass probability < 2^-{}", bits.floor()),
    )
}

/// Finds `c` with `lhs = c·rhs` by exact evaluation at small integer
/// points, then checks the identity under `mode`.
pub fn check_proportional(label: &str, lhs: &Formula, rhs: &Formula, mode: Mode, seed: u64) -> (Check, Option<Golden>) {
    let Some(c) = ratio_at_random_point(lhs, rhs, seed) else {
        return (Check::new(label, false, "right-hand side vanishes at every probe point"), None);
    };
    if c.is_zero() {
        return (Check::new(label, false, "proportionality constant is zero"), Some(c));
    }
    let check = check_identity(label, lhs, &rhs.clone().scaled(c.clone()), mode);
    let detail = format!("constant {}; {}", c.canonical(), check.detail);
    (Check { detail, ..check }, Some(c))
}

/// `lhs(x)/rhs(x)` at the first seeded integer point where `rhs` is nonzero.
pub fn ratio_at_random_point(lhs: &Formula, rhs: &Formula, seed: u64) -> Option<Golden> {
    let n = lhs.ring().nvars();
    let mut rng = Rng::new(seed);
    for _ in 0..64 {
        let pt: Vec<Golden> = (0..n).map(|_| Golden::from_int(rng.range(-9, 9))).collect();
        let Some(r) = rhs.eval(&pt) else { continue };
        if r.is_zero() {
            continue;
        }
        let Some(l) = lhs.eval(&pt) else { continue };
        return Some(&l / &r);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::ring::VarRing;

    #[test]
    fn modular_detects_constant_offset() {
        let ring = VarRing::of(&["u1"]);
        let u = Poly::var(&ring, "u1").unwrap();
        let sq = &u * &u;
        let sq1 = &sq + &Poly::one(&ring);
        let c = check_identity("x", &(&sq).into(), &(&sq1).into(), Mode::Modular { points: 1, seed: 0 });
        assert!(!c.passed());
        let c = check_identity("x", &(&sq).into(), &(&sq).into(), Mode::Modular { points: 1, seed: 0 });
        assert!(c.passed());
    }

    #[test]
    fn exact_mode_compares_expansions() {
        let ring = VarRing::of(&["u1", "u2"]);
        let a = Poly::var(&ring, "u1").unwrap();
        let b = Poly::var(&ring, "u2").unwrap();
        let lhs = Formula::Mul(vec![(&(&a + &b)).into(), (&(&a - &b)).into()]);
        let rhs: Formula = (&(&(&a * &a) - &(&b * &b))).into();
        assert!(check_identity("x", &lhs, &rhs, Mode::Exact).passed());
        assert!(check_identity("x", &lhs, &rhs, Mode::modular(3)).passed());
    }

    #[test]
    fn proportionality_constant_is_recovered() {
        let ring = VarRing::of(&["u1", "u2"]);
        let a = Poly::var(&ring, "u1").unwrap();
        let b = Poly::var(&ring, "u2").unwrap();
        let f = &(&a * &b) + &(&a * &a);
        let g = f.scale(&Golden::sqrt5());
        let (check, c) = check_proportional("p", &(&g).into(), &(&f).into(), Mode::Exact, 0);
        assert!(check.passed());
        assert_eq!(c, Some(Golden::sqrt5()));
    }
}
