//! Kernel timings. No correctness claims.

use std::time::Instant;

use clap::ValueEnum;
use coxinv::algebra::{check_identity, Formula, Mode, Poly, VarRing};
use coxinv::coxeter::Variant;
use coxinv::frobenius::{discriminant_poly, PrepotentialName};
use coxinv::invariants::{basic_invariants_h4, y_in_u, y_in_z};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Workload {
    /// Square the degree-105 truncation of a two-variable slice of Y30(u).
    Mul210,
    /// Modular Y_j = printed(Z) checks, one timing per Y_j.
    Theorem32,
    /// The H4 discriminant determinant.
    Ddet,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

fn mul210() -> Value {
    let t0 = Instant::now();
    let inv = basic_invariants_h4(Variant::Plain);
    let slice = VarRing::of(&["u1", "u2"]);
    let images = [Poly::var_at(&slice, 0), Poly::var_at(&slice, 1), Poly::zero(&slice), Poly::one(&slice)];
    let zs: Vec<Poly> = inv.polys.iter().map(|z| z.compose(&images).expect("same arity")).collect();
    let y30 = y_in_z()[3].compose(&zs).expect("same arity");
    let trunc = Poly::from_terms(&slice, y30.terms().iter().filter(|(m, _)| m.degree() <= 105).cloned().collect());
    let setup = ms(t0);
    let t1 = Instant::now();
    let sq = &trunc * &trunc;
    let mul = ms(t1);
    json!({
        "workload": "mul210",
        "setup_ms": setup,
        "mul_ms": mul,
        "input_terms": trunc.len(),
        "output_terms": sq.len(),
        "output_degree": sq.total_degree(),
    })
}

fn theorem32(seed: u64) -> Value {
    let inv = basic_invariants_h4(Variant::Plain);
    let ys = y_in_u();
    let printed = y_in_z();
    let names = ["Y2", "Y12", "Y20", "Y30"];
    let rows: Vec<Value> = (0..4)
        .map(|j| {
            let t = Instant::now();
            let rhs = Formula::compose(&printed[j], inv.formulas());
            let c = check_identity(names[j], &ys[j], &rhs, Mode::modular(seed));
            json!({ "y": names[j], "ms": ms(t), "passed": c.passed(), "printed_terms": printed[j].len() })
        })
        .collect();
    json!({ "workload": "theorem32", "mode": "modular", "seed": seed, "per_y": rows })
}

fn ddet() -> Value {
    let t = Instant::now();
    let d = discriminant_poly(PrepotentialName::H4);
    let elapsed = ms(t);
    json!({
        "workload": "ddet",
        "ms": elapsed,
        "terms": d.as_ref().map(Poly::len).ok(),
        "degree": d.as_ref().ok().and_then(Poly::total_degree),
    })
}

pub fn run(w: Workload, seed: u64) -> String {
    let v = match w {
        Workload::Mul210 => mul210(),
        Workload::Theorem32 => theorem32(seed),
        Workload::Ddet => ddet(),
    };
    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
}
