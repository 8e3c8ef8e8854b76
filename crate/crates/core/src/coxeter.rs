//! The matrix groups W(H3), W(H4), their Galois conjugates, and their
//! reflections.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Golden, Matrix, Poly, Ring, VarRing};
use crate::data::{transcribed, Defs};
use crate::report::VerifyReport;

/// Plain representation or its image under √5 ↦ −√5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Star,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plain => "plain",
            Variant::Star => "star",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupType {
    H3,
    H4,
}

impl GroupType {
    pub fn rank(self) -> usize {
        match self {
            GroupType::H3 => 3,
            GroupType::H4 => 4,
        }
    }

    pub fn generators(self, variant: Variant) -> GeneratorSet {
        match self {
            GroupType::H3 => generators_h3(variant),
            GroupType::H4 => generators_h4(variant),
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::H3 => "H3",
            GroupType::H4 => "H4",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("group closure exceeded {0} elements; generators are corrupted")]
    CapExceeded(usize),
}

/// Generators together with their Coxeter matrix.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub gens: Vec<Matrix>,
    pub coxeter_orders: Vec<Vec<u32>>,
}

impl GeneratorSet {
    pub fn n(&self) -> usize {
        self.gens[0].n()
    }

    /// Product of generators along a word of 0-based indices.
    pub fn word(&self, word: &[usize]) -> Matrix {
        word.iter().fold(Matrix::identity(self.n()), |acc, &i| acc.mul(&self.gens[i]))
    }

    pub fn conj(&self) -> GeneratorSet {
        GeneratorSet { gens: self.gens.iter().map(Matrix::conj).collect(), coxeter_orders: self.coxeter_orders.clone() }
    }
}

fn g(n: i64, d: i64) -> Golden {
    Golden::from_ratio(n, d)
}

fn half(x: Golden) -> Golden {
    &x * &g(1, 2)
}

fn diag(entries: &[i64]) -> Matrix {
    let n = entries.len();
    let rows = (0..n).map(|i| (0..n).map(|j| if i == j { g(entries[i], 1) } else { Golden::zero() }).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

fn scaled_half(rows: Vec<Vec<Golden>>) -> Matrix {
    Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(half).collect()).collect()).expect("square")
}

fn rho_s2() -> Matrix {
    let a = Golden::phi();
    let ab = Golden::phi_bar();
    let one = Golden::one();
    scaled_half(vec![
        vec![ab.clone(), one.clone(), -&a],
        vec![one.clone(), a.clone(), -&ab],
        vec![-&a, -&ab, one],
    ])
}

/// σ(s₄). The printed display has −ā in position (2,2), which is not an
/// involution; `ā` there is the only one-entry change satisfying all
/// relations.
fn sigma_s4() -> Matrix {
    sigma_s4_with(Golden::phi_bar())
}

/// σ(s₄) exactly as printed, kept to show that it breaks s₄² = 1.
pub fn sigma_s4_as_printed() -> Matrix {
    sigma_s4_with(-&Golden::phi_bar())
}

fn sigma_s4_with(corner: Golden) -> Matrix {
    let a = Golden::phi();
    let ab = Golden::phi_bar();
    let one = Golden::one();
    let z = Golden::zero();
    scaled_half(vec![
        vec![g(2, 1), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), corner, -&a, one.clone()],
        vec![z.clone(), -&a, one.clone(), -&ab],
        vec![z, one, -&ab, a],
    ])
}

fn embed4(m: &Matrix) -> Matrix {
    let rows = (0..4)
        .map(|i| (0..4).map(|j| if i < 3 && j < 3 { m.get(i, j).clone() } else if i == j { Golden::one() } else { Golden::zero() }).collect())
        .collect();
    Matrix::from_rows(rows).expect("square")
}

fn coxeter_matrix(n: usize, pairs: &[(usize, usize, u32)]) -> Vec<Vec<u32>> {
    let mut m = vec![vec![2; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(i, j, k) in pairs {
        m[i][j] = k;
        m[j][i] = k;
    }
    m
}

/// ρ(s₁), ρ(s₂), ρ(s₃).
pub fn generators_h3(variant: Variant) -> GeneratorSet {
    let plain = GeneratorSet {
        gens: vec![diag(&[-1, 1, 1]), rho_s2(), diag(&[1, 1, -1])],
        coxeter_orders: coxeter_matrix(3, &[(0, 1, 5), (1, 2, 3)]),
    };
    match variant {
        Variant::Plain => plain,
        Variant::Star => plain.conj(),
    }
}

/// σ(s₁), …, σ(s₄).
pub fn generators_h4(variant: Variant) -> GeneratorSet {
    let h3 = generators_h3(Variant::Plain);
    let mut gens: Vec<Matrix> = h3.gens.iter().map(embed4).collect();
    gens.push(sigma_s4());
    let plain = GeneratorSet { gens, coxeter_orders: coxeter_matrix(4, &[(0, 1, 5), (1, 2, 3), (2, 3, 3)]) };
    match variant {
        Variant::Plain => plain,
        Variant::Star => plain.conj(),
    }
}

/// Multiplicative order of `m`, up to `cap`.
fn order(m: &Matrix, cap: u32) -> Option<u32> {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

/// Verifies gᵢ² = 1 and that gᵢgⱼ has order exactly m_ij.
pub fn check_relations(gs: &GeneratorSet) -> VerifyReport {
    let mut r = VerifyReport::new("relations");
    let n = gs.gens.len();
    for i in 0..n {
        let sq = gs.gens[i].mul(&gs.gens[i]);
        r.check(format!("s{}^2", i + 1), sq.is_identity(), "");
        for j in i + 1..n {
            let want = gs.coxeter_orders[i][j];
            let got = order(&gs.gens[i].mul(&gs.gens[j]), 12);
            let detail = match got {
                Some(k) => format!("order {k}, expected {want}"),
                None => format!("order exceeds 12, expected {want}"),
            };
            r.check(format!("(s{}s{})^{}", i + 1, j + 1, want), got == Some(want), detail);
        }
    }
    r.finish()
}

/// Deduplicated elements of a finite matrix group.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub elements: Vec<Matrix>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conj(&self) -> GroupTable {
        GroupTable { elements: self.elements.iter().map(Matrix::conj).collect() }
    }

    pub fn keys(&self) -> HashSet<String> {
        self.elements.iter().map(Matrix::key).collect()
    }

    /// Number of elements per trace, sorted by trace text.
    pub fn trace_counts(&self) -> Vec<(String, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for e in &self.elements {
            *counts.entry(e.trace().canonical()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

pub const GROUP_CAP: usize = 20000;

/// Breadth-first closure from the identity under right multiplication by
/// generators.
pub fn enumerate_group(gs: &GeneratorSet) -> Result<GroupTable, CoxeterError> {
    let id = Matrix::identity(gs.n());
    let mut seen: HashSet<String> = HashSet::from([id.key()]);
    let mut elements = vec![id.clone()];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let products: Vec<(String, Matrix)> = frontier
            .par_iter()
            .flat_map_iter(|m| gs.gens.iter().map(move |s| m.mul(s)))
            .map(|p| (p.key(), p))
            .collect();
        let mut next = Vec::new();
        for (k, p) in products {
            if seen.insert(k) {
                elements.push(p.clone());
                next.push(p);
                if elements.len() > GROUP_CAP {
                    return Err(CoxeterError::CapExceeded(GROUP_CAP));
                }
            }
        }
        frontier = next;
    }
    Ok(GroupTable { elements })
}

/// A reflection and the linear form of its fixed hyperplane.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub matrix: Matrix,
    pub form: Poly,
}

/// Scales a linear form so its first nonzero coefficient (in variable
/// order) is 1.
pub fn normalize_form(form: &Poly) -> Poly {
    let n = form.ring().nvars();
    for i in 0..n {
        let mut exps = vec![0; n];
        exps[i] = 1;
        let c = form.coeff_of(&exps);
        if !c.is_zero() {
            return form.scale(&c.inv().expect("nonzero"));
        }
    }
    form.clone()
}

/// Elements with M² = 1 and rank(M − 1) = 1. The hyperplane fixed under
/// u ↦ u·M is cut out by any nonzero column of M − 1.
pub fn find_reflections(t: &GroupTable, u_ring: &Ring) -> Vec<Reflection> {
    let n = u_ring.nvars();
    let mut out: Vec<Reflection> = t
        .elements
        .par_iter()
        .filter_map(|m| {
            if m.is_identity() || !m.mul(m).is_identity() {
                return None;
            }
            let d = m.sub(&Matrix::identity(n));
            if d.rank() != 1 {
                return None;
            }
            let col = (0..n).find(|&j| (0..n).any(|i| !d.get(i, j).is_zero()))?;
            let mut form = Poly::zero(u_ring);
            for i in 0..n {
                form = form.try_add(&Poly::var_at(u_ring, i).scale(d.get(i, col))).expect("same ring");
            }
            Some(Reflection { matrix: m.clone(), form: normalize_form(&form) })
        })
        .collect();
    out.sort_by_cached_key(|r| r.form.canonical());
    out
}

/// Compares the trace of one word in two representations; passes when
/// they differ, which rules out equivalence.
pub fn character_mismatch(plain: &GeneratorSet, star: &GeneratorSet, word: &[usize]) -> VerifyReport {
    let mut r = VerifyReport::new("character");
    let tp = plain.word(word).trace();
    let ts = star.word(word).trace();
    let name: String = word.iter().map(|i| format!("s{}", i + 1)).collect();
    r.check(
        format!("trace of {name} differs"),
        tp != ts,
        format!("plain {}, star {}", tp.canonical(), ts.canonical()),
    );
    r.finish()
}

/// Suite: relations, closure, reflections against the printed forms, and
/// the plain/star relationship for one group.
pub fn groups_suite(group: GroupType) -> VerifyReport {
    let mut rep = VerifyReport::new(format!("groups-{}", group.to_string().to_lowercase()));
    let plain = group.generators(Variant::Plain);
    let star = group.generators(Variant::Star);
    rep.absorb(check_relations(&plain));
    let mut star_rel = check_relations(&star);
    star_rel.suite = "relations*".into();
    rep.absorb(star_rel);
    let (order, n_refl, src) = match group {
        GroupType::H3 => (120, 15, transcribed::H3_FORMS),
        GroupType::H4 => (14400, 60, transcribed::H4_FORMS),
    };
    let table = match enumerate_group(&plain) {
        Ok(t) => t,
        Err(e) => {
            rep.check("closure", false, e.to_string());
            return rep.finish();
        }
    };
    rep.check(format!("order {order}"), table.order() == order, table.order().to_string());
    let orthogonal = table.elements.iter().all(|m| m.transpose().mul(m).is_identity());
    rep.check("elements orthogonal", orthogonal, "");
    let ring = (0..group.rank()).map(|i| format!("u{}", i + 1)).collect::<Vec<_>>();
    let ring = VarRing::new(&ring).expect("valid ring");
    let refl = find_reflections(&table, &ring);
    rep.check(format!("{n_refl} reflections"), refl.len() == n_refl, refl.len().to_string());
    let found: BTreeSet<String> = refl.iter().map(|r| r.form.canonical()).collect();
    let printed: BTreeSet<String> = Defs::parse_poly(src, &ring)
        .and_then(|d| d.numbered("l"))
        .map(|fs| fs.iter().map(|f| normalize_form(f).canonical()).collect())
        .unwrap_or_default();
    rep.check("reflection forms match printed list up to scalar", found == printed, "");
    match enumerate_group(&star) {
        Ok(st) => {
            rep.check("star group is the Galois conjugate", st.keys() == table.conj().keys(), "");
        }
        Err(e) => {
            rep.check("star closure", false, e.to_string());
        }
    }
    rep.absorb(character_mismatch(&plain, &star, &[0, 1]));
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarRing;

    #[test]
    fn h3_generator_entries() {
        let p = generators_h3(Variant::Plain);
        assert_eq!(p.gens[0], diag(&[-1, 1, 1]));
        let s = generators_h3(Variant::Star);
        assert_eq!(s.gens[0], p.gens[0]);
        assert_eq!(*s.gens[1].get(0, 0), half(Golden::phi()));
    }

    #[test]
    fn h4_generator_entries() {
        let p = generators_h4(Variant::Plain);
        assert_eq!(*p.gens[0].get(3, 3), Golden::one());
        assert_eq!(*p.gens[3].get(0, 0), Golden::one());
        let s = generators_h4(Variant::Star);
        assert_eq!(*s.gens[3].get(1, 2), half(-&Golden::phi_bar()));
    }

    #[test]
    fn relations_hold_and_corruption_is_caught() {
        assert!(check_relations(&generators_h3(Variant::Plain)).passed());
        assert!(check_relations(&generators_h4(Variant::Star)).passed());
        let mut bad = generators_h4(Variant::Plain);
        bad.gens[3] = Matrix::identity(4);
        let r = check_relations(&bad);
        assert!(!r.passed());
        assert!(r.checks.iter().find(|c| c.label == "s4^2").unwrap().passed());
        assert!(!r.checks.iter().find(|c| c.label == "(s3s4)^3").unwrap().passed());
    }

    #[test]
    fn printed_s4_is_not_an_involution() {
        let m = sigma_s4_as_printed();
        assert!(!m.mul(&m).is_identity());
        let mut gs = generators_h4(Variant::Plain);
        gs.gens[3] = m;
        assert!(!check_relations(&gs).passed());
    }

    #[test]
    fn h3_order_and_reflections() {
        let t = enumerate_group(&generators_h3(Variant::Plain)).unwrap();
        assert_eq!(t.order(), 120);
        let ring = VarRing::of(&["u1", "u2", "u3"]);
        let refl = find_reflections(&t, &ring);
        assert_eq!(refl.len(), 15);
        assert!(refl.iter().any(|r| r.form == Poly::var_at(&ring, 0)));
        let st = enumerate_group(&generators_h3(Variant::Star)).unwrap();
        assert_eq!(st.order(), 120);
        assert_eq!(st.keys(), t.conj().keys());
    }

    #[test]
    fn trace_witness() {
        let p = generators_h3(Variant::Plain);
        let s = generators_h3(Variant::Star);
        assert!(character_mismatch(&p, &s, &[0, 1]).passed());
        assert!(!character_mismatch(&p, &s, &[0]).passed());
    }
}
