//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use coxinv::algebra::{rat, Golden, Mode, Poly, Rng, VarRing};
use coxinv::coxeter::{groups_suite, GroupType};
use coxinv::frobenius::{
    fvw_bridge_suite, h3_disc_suite, h3prime_suite, h4_9_psi_suite, h4_disc_suite, transforms_suite, y_in_t_suite,
};
use coxinv::invariants::{
    h3_intertwine_suite, h3_invariants_suite, h3_jacobian_suite, h4_intertwine_suite, h4_invariants_suite,
    h4_jacobian_suite, theorem32_suite,
};
use coxinv::VerifyReport;

const SEED: u64 = 1;

struct Outcome {
    failures: Vec<String>,
    elapsed: Duration,
}

struct Criterion<'a> {
    number: usize,
    title: &'a str,
    budget: Duration,
    outcome: Outcome,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn timed(f: impl FnOnce() -> Vec<VerifyReport>) -> (Vec<VerifyReport>, Duration) {
    let t = Instant::now();
    let reps = f();
    (reps, t.elapsed())
}

fn failures_of(reps: &[&VerifyReport]) -> Vec<String> {
    reps.iter()
        .flat_map(|r| r.failures().into_iter().map(move |c| format!("{}: {} ({})", r.suite, c.label, c.detail)))
        .collect()
}

fn outcome(reps: &[&VerifyReport], elapsed: Duration) -> Outcome {
    Outcome { failures: failures_of(reps), elapsed }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

/// Ring laws, the chain rule and conjugation on seeded random polynomials.
fn kernel_laws(seed: u64) -> Vec<String> {
    let ring = VarRing::of(&["x", "y", "z"]);
    let mut rng = Rng::new(seed);
    let coeff = |rng: &mut Rng| Golden::new(rat(rng.range(-5, 5), rng.range(1, 4)), rat(rng.range(-3, 3), 2));
    let random_poly = |rng: &mut Rng| {
        (0..5).fold(Poly::zero(&ring), |acc, _| {
            let e = [rng.below(4) as u32, rng.below(4) as u32, rng.below(3) as u32];
            &acc + &Poly::monomial(&ring, &e, coeff(rng))
        })
    };
    let mut out = Vec::new();
    for round in 0..40 {
        let [a, b, c] = [random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng)];
        check(&mut out, &(&a * &b) * &c == &a * &(&b * &c), format!("associativity, round {round}"));
        check(&mut out, &a * &(&b + &c) == &(&a * &b) + &(&a * &c), format!("distributivity, round {round}"));
        check(&mut out, &a * &b == &b * &a, format!("commutativity, round {round}"));
        check(&mut out, (&a * &b).conj() == &a.conj() * &b.conj(), format!("conjugation, round {round}"));
        let g = [b.clone(), c.clone(), a.clone()];
        let lhs = a.compose(&g).expect("same arity").diff(0);
        let rhs = (0..3).fold(Poly::zero(&ring), |acc, k| {
            &acc + &(&a.diff(k).compose(&g).expect("same arity") * &g[k].diff(0))
        });
        check(&mut out, lhs == rhs, format!("chain rule, round {round}"));
    }
    out
}

fn main() {
    let modular = Mode::modular(SEED);
    let mut criteria = Vec::new();

    let (reps, dt) = timed(|| vec![groups_suite(GroupType::H3), groups_suite(GroupType::H4)]);
    criteria.push(Criterion {
        number: 1,
        title: "group orders, reflections and reflection forms",
        budget: secs(60),
        outcome: outcome(&reps.iter().collect::<Vec<_>>(), dt),
    });

    let (reps, dt) = timed(|| vec![h3_disc_suite(), h3_invariants_suite(SEED)]);
    let h3_invariants = reps[1].clone();
    criteria.push(Criterion {
        number: 2,
        title: "Delta_H3 equals the printed polynomial; Delta_H3(I) = -2^15*5^2*D^2",
        budget: secs(30),
        outcome: outcome(&reps.iter().collect::<Vec<_>>(), dt),
    });

    let (reps, dt) = timed(|| vec![h4_disc_suite()]);
    criteria.push(Criterion {
        number: 3,
        title: "Delta_H4 equals the printed degree-60 polynomial",
        budget: secs(120),
        outcome: outcome(&reps.iter().collect::<Vec<_>>(), dt),
    });

    let (reps, dt) = timed(|| vec![h4_invariants_suite(modular)]);
    let h4_invariants = reps[0].clone();
    let mut c4 = outcome(&reps.iter().collect::<Vec<_>>(), dt);
    let k = h4_invariants.derived_constants.get("D^2/Dt(Z)");
    check(&mut c4.failures, k.is_some_and(|k| k != "0"), "D^2/Dt(Z) recorded and nonzero");
    criteria.push(Criterion { number: 4, title: "D^2 = const*Dt(Z)", budget: secs(120), outcome: c4 });

    let (reps, dt) = timed(|| vec![theorem32_suite(modular, SEED)]);
    criteria.push(Criterion {
        number: 5,
        title: "Y_j = printed(Z): Y2, Y12 exact; Y20, Y30 at 40 points x 3 primes",
        budget: secs(600),
        outcome: outcome(&reps.iter().collect::<Vec<_>>(), dt),
    });

    let (reps, dt) = timed(|| vec![h3_jacobian_suite(), h4_jacobian_suite(modular)]);
    criteria.push(Criterion {
        number: 6,
        title: "Jacobians, c1*Q0, and the chain identity with c' = 2^10*3^2",
        budget: secs(600),
        outcome: outcome(&reps.iter().collect::<Vec<_>>(), dt),
    });

    let (reps, dt) = timed(|| vec![transforms_suite(modular, SEED)]);
    let transforms = reps[0].clone();
    let transforms_time = dt;
    let (reps, dt) = timed(|| vec![h3prime_suite(), fvw_bridge_suite()]);
    let weight_map: Vec<String> = failures_of(&[&transforms])
        .into_iter()
        .filter(|f| f.contains("weight map"))
        .collect();
    let mut c7 = outcome(&reps.iter().collect::<Vec<_>>(), dt);
    c7.failures.extend(weight_map);
    criteria.push(Criterion {
        number: 7,
        title: "(H3)': printed discriminant, homogeneity, weight map, FVW chain with m = 3c0/400",
        budget: secs(120),
        outcome: c7,
    });

    let (reps, dt) = timed(|| vec![h4_9_psi_suite()]);
    let mut c8 = outcome(&[&reps[0]], dt + transforms_time);
    c8.failures.extend(failures_of(&[&transforms]).into_iter().filter(|f| !f.contains("weight map")));
    criteria.push(Criterion {
        number: 8,
        title: "Psi~ printed; Psi o map-t-x ~ Delta_H4; Psi o map-t-x-Z ~ Dt; round trips",
        budget: secs(600),
        outcome: c8,
    });

    let (reps, dt) = timed(|| vec![y_in_t_suite(SEED)]);
    criteria.push(Criterion {
        number: 9,
        title: "w0-cleared Y_j are polynomials; Z-route = t-route at 10 points",
        budget: secs(600),
        outcome: outcome(&reps.iter().collect::<Vec<_>>(), dt),
    });

    let t = Instant::now();
    let (reps, _) = timed(|| vec![h3_intertwine_suite(SEED), h4_intertwine_suite(SEED)]);
    let mut c10 = outcome(&[&reps[0], &reps[1], &h3_invariants, &h4_invariants], Duration::ZERO);
    c10.failures.extend(kernel_laws(SEED));
    c10.elapsed = t.elapsed();
    criteria.push(Criterion {
        number: 10,
        title: "kernel laws, invariance, anti-invariance of D, intertwining on 20 words",
        budget: secs(300),
        outcome: c10,
    });

    let mut all_ok = true;
    for c in &criteria {
        let mut failures = c.outcome.failures.clone();
        if c.outcome.elapsed > c.budget {
            failures.push(format!("runtime {:.1}s over budget {}s", c.outcome.elapsed.as_secs_f64(), c.budget.as_secs()));
        }
        let ok = failures.is_empty();
        all_ok &= ok;
        println!(
            "criterion {:>2}: {} ({:.1}s) {}",
            c.number,
            if ok { "PASS" } else { "FAIL" },
            c.outcome.elapsed.as_secs_f64(),
            c.title
        );
        for f in failures {
            println!("    {f}");
        }
    }
    if !all_ok {
        std::process::exit(1);
    }
}
