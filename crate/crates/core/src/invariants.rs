//! Basic invariants of W(H3), W(H4) and their star forms, the equivariant
//! maps P, discriminant products and the identities relating them.

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::linalg::{solve, SolveError};
use crate::algebra::matrix::det;
use crate::algebra::{
    check_identity, check_proportional, jacobian_det, rat_int, AlgebraError, Formula, Golden, Matrix, Mode, Poly,
    Ring, Rng, VarRing,
};
use crate::coxeter::{normalize_form, GeneratorSet, GroupType, Variant};
use crate::data::{canonical, canonical_text, transcribed, Defs};
use crate::report::{Check, VerifyReport};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("target is not in the invariant subring: {0}")]
    Solve(#[from] SolveError),
    #[error("held-out point {0} disagrees with the solved expression")]
    HeldOut(usize),
    #[error("target cannot be evaluated at enough points")]
    NoPoints,
}

/// `u1, ..., un`.
pub fn u_ring(n: usize) -> Ring {
    let names: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    VarRing::new(&names).expect("valid ring")
}

fn var(ring: &Ring, i: usize) -> Poly {
    Poly::var_at(ring, i)
}

fn c(n: i64) -> Golden {
    Golden::from_int(n)
}

fn r(n: i64, d: i64) -> Golden {
    Golden::from_ratio(n, d)
}

/// Elementary symmetric functions of u₁², u₂², u₃² and their difference
/// product, in the first three variables of `ring`.
fn elementary_in(ring: &Ring) -> (Poly, Poly, Poly, Poly) {
    let s: Vec<Poly> = (0..3).map(|i| var(ring, i).pow(2)).collect();
    let e1 = &(&s[0] + &s[1]) + &s[2];
    let e2 = &(&(&s[0] * &s[1]) + &(&s[0] * &s[2])) + &(&s[1] * &s[2]);
    let e3 = &(&s[0] * &s[1]) * &s[2];
    let delta = &(&(&s[0] - &s[1]) * &(&s[0] - &s[2])) * &(&s[1] - &s[2]);
    (e1, e2, e3, delta)
}

/// (ε₁, ε₂, ε₃, δ) on a ring of three variables.
pub fn elementary_data(ring: &Ring) -> Result<(Poly, Poly, Poly, Poly), AlgebraError> {
    if ring.nvars() != 3 {
        return Err(AlgebraError::ArityMismatch { expected: 3, found: ring.nvars() });
    }
    Ok(elementary_in(ring))
}

/// I₁, I₂, I₃ (or J's) in the first three variables of `ring`.
fn h3_basic_in(ring: &Ring, variant: Variant) -> [Poly; 3] {
    let (e1, e2, e3, dl) = elementary_in(ring);
    let s5 = Golden::sqrt5();
    let i1 = e1.scale(&c(2));
    let i2 = (&(&e3.scale(&c(-11)) + &(&e1 * &e2)) + &dl.scale(&s5)).scale(&c(20));
    let e1sq = e1.pow(2);
    let parts = [
        (&e2 * &e3).scale(&c(95)),
        (&e1sq * &e3).scale(&c(-32)),
        (&e1 * &e2.pow(2)).scale(&c(-5)),
        (&e1.pow(3) * &e2).scale(&c(2)),
        e1.pow(5).scale(&r(-1, 25)),
        (&e2 * &dl).scale(&(&c(3) * &s5)),
    ];
    let i3 = parts.iter().fold(Poly::zero(ring), |acc, p| &acc + p).scale(&c(80));
    let out = [i1, i2, i3];
    match variant {
        Variant::Plain => out,
        Variant::Star => out.map(|p| p.conj()),
    }
}

/// h₂, h₆, h₁₀ (or k's) in the first three variables of `ring`.
fn h_in(ring: &Ring, variant: Variant) -> [Poly; 3] {
    let [i1, i2, i3] = h3_basic_in(ring, variant);
    [i1.scale(&r(1, 2)), i2.scale(&r(1, 20)), i3.scale(&r(1, 80))]
}

/// Named basic invariants of one group in the u-ring.
#[derive(Clone, Debug)]
pub struct InvariantSet {
    pub group: GroupType,
    pub variant: Variant,
    pub ring: Ring,
    pub names: Vec<String>,
    pub polys: Vec<Poly>,
    pub degrees: Vec<u32>,
}

impl InvariantSet {
    pub fn get(&self, name: &str) -> Option<&Poly> {
        self.names.iter().position(|n| n == name).map(|i| &self.polys[i])
    }

    /// Ring of the invariant symbols, weighted by degree.
    pub fn symbol_ring(&self) -> Ring {
        VarRing::weighted(&self.names, self.degrees.iter().map(|&d| rat_int(d as i64)).collect())
            .expect("positive weights")
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.polys.iter().map(Formula::from).collect()
    }
}

pub fn basic_invariants_h3(variant: Variant) -> InvariantSet {
    let ring = u_ring(3);
    let names = match variant {
        Variant::Plain => ["I1", "I2", "I3"],
        Variant::Star => ["J1", "J2", "J3"],
    };
    InvariantSet {
        group: GroupType::H3,
        variant,
        polys: h3_basic_in(&ring, variant).to_vec(),
        ring,
        names: names.map(String::from).to_vec(),
        degrees: vec![2, 6, 10],
    }
}

/// h₂, h₆, h₁₀ of the plain group, or k₂, k₆, k₁₀ of the star group.
pub fn h_invariants(variant: Variant) -> [Poly; 3] {
    h_in(&u_ring(3), variant)
}

/// Z₂, Z₁₂, Z₂₀, Z₃₀ as polynomials in (h₂, h₆, h₁₀, u₄).
pub fn z_in_h() -> Vec<Poly> {
    let ring = VarRing::of(&["h2", "h6", "h10", "u4"]);
    let defs = Defs::parse_poly(transcribed::H4_INVARIANTS, &ring).expect("bundled data parses");
    ["Z2", "Z12", "Z20", "Z30"].iter().map(|n| defs.poly(n).expect("bundled data")).collect()
}

/// The form of h₁₀ the Z-polynomials are written in:
/// h₁₀ + h₂⁵/25, i.e. I₃/80 without its ε₁⁵ term.
fn h10_for_z(h2: &Poly, h10: &Poly) -> Poly {
    h10 + &h2.pow(5).scale(&r(1, 25))
}

pub fn basic_invariants_h4(variant: Variant) -> InvariantSet {
    let ring = u_ring(4);
    let [h2, h6, h10] = h_in(&ring, variant);
    let h10 = h10_for_z(&h2, &h10);
    let images = [h2, h6, h10, var(&ring, 3)];
    let polys = z_in_h().iter().map(|z| z.compose(&images).expect("same arity")).collect();
    InvariantSet {
        group: GroupType::H4,
        variant,
        ring,
        names: ["Z2", "Z12", "Z20", "Z30"].map(String::from).to_vec(),
        polys,
        degrees: vec![2, 12, 20, 30],
    }
}

pub fn basic_invariants(group: GroupType, variant: Variant) -> InvariantSet {
    match group {
        GroupType::H3 => basic_invariants_h3(variant),
        GroupType::H4 => basic_invariants_h4(variant),
    }
}

/// Checks f(u·g) = f(u) for every generator g.
pub fn check_invariance(label: &str, f: &Poly, gs: &GeneratorSet, mode: Mode) -> VerifyReport {
    let mut rep = VerifyReport::new(label);
    for (i, g) in gs.gens.iter().enumerate() {
        let images = g.linear_images(f.ring());
        let name = format!("{label} under s{}", i + 1);
        match mode {
            Mode::Exact => {
                let moved = f.compose(&images).expect("same ring");
                rep.check(name, moved == *f, "exact");
            }
            Mode::Modular { .. } => {
                let lhs = Formula::compose(f, images.iter().map(Formula::from).collect());
                rep.push(check_identity(&name, &lhs, &Formula::from(f), mode));
            }
        }
    }
    rep.finish()
}

/// Balanced product.
pub fn product(fs: &[Poly]) -> Poly {
    match fs.len() {
        0 => panic!("empty product"),
        1 => fs[0].clone(),
        n => {
            let (a, b) = fs.split_at(n / 2);
            let (x, y) = rayon::join(|| product(a), || product(b));
            &x * &y
        }
    }
}

/// Product of the hyperplane forms.
pub fn discriminant_product(forms: &[Poly]) -> Poly {
    product(forms)
}

/// Forms with √5 ↦ −√5 applied to every coefficient.
pub fn star_forms(forms: &[Poly]) -> Vec<Poly> {
    forms.iter().map(Poly::conj).collect()
}

/// The hyperplane forms in their printed normalization.
pub fn printed_forms(group: GroupType) -> Vec<Poly> {
    let (src, n) = match group {
        GroupType::H3 => (transcribed::H3_FORMS, 3),
        GroupType::H4 => (transcribed::H4_FORMS, 4),
    };
    Defs::parse_poly(src, &u_ring(n)).and_then(|d| d.numbered("l")).expect("bundled data parses")
}

/// Scalar `s` with D(u·g) = s·D(u), found by matching each moved form to
/// a multiple of a listed one; `None` if the forms are not permuted.
pub fn form_permutation_sign(forms: &[Poly], g: &Matrix) -> Option<Golden> {
    let ring = forms[0].ring();
    let images = g.linear_images(ring);
    let keys: Vec<String> = forms.iter().map(|f| normalize_form(f).canonical()).collect();
    let mut used = vec![false; forms.len()];
    let mut scalar = Golden::one();
    for f in forms {
        let moved = f.compose(&images).ok()?;
        let key = normalize_form(&moved).canonical();
        let k = keys.iter().enumerate().position(|(i, kk)| !used[i] && *kk == key)?;
        used[k] = true;
        let (m, cm) = moved.leading()?;
        scalar = &scalar * &(cm / &forms[k].coeff(*m));
    }
    Some(scalar)
}

/// Anti-invariance D∘g = det(g)·D for each generator, decided exactly by
/// how g permutes the forms.
pub fn check_anti_invariance(label: &str, forms: &[Poly], gs: &GeneratorSet) -> VerifyReport {
    let mut rep = VerifyReport::new(label);
    for (i, g) in gs.gens.iter().enumerate() {
        let got = form_permutation_sign(forms, g);
        let want = g.det();
        let detail = match &got {
            Some(s) => format!("scalar {}, det {}", s.canonical(), want.canonical()),
            None => "forms are not permuted".into(),
        };
        rep.check(format!("D under s{}", i + 1), got.as_ref() == Some(&want), detail);
    }
    rep.finish()
}

#[derive(Clone, Debug)]
pub struct EquivariantMap {
    pub group: GroupType,
    pub components: Vec<Poly>,
}

impl EquivariantMap {
    pub fn formulas(&self) -> Vec<Formula> {
        self.components.iter().map(Formula::from).collect()
    }

    /// `f(P₁(u), ..., Pₙ(u))` without expansion.
    pub fn pull_back(&self, f: impl Into<Formula>) -> Formula {
        Formula::compose(f, self.formulas())
    }

    /// `f(P₁(u), ..., Pₙ(u))` expanded.
    pub fn pull_back_poly(&self, f: &Poly) -> Poly {
        f.compose(&self.components).expect("same arity")
    }
}

/// f(u₁,u₂,u₃,u₄) = (1/168)·u₄(−21h₆ + 14h₂²u₄² − 14h₂u₄⁴ + 2u₄⁶).
fn h4_building_block(ring: &Ring) -> Poly {
    let [h2, h6, _] = h_in(ring, Variant::Plain);
    let u4 = var(ring, 3);
    let terms = [
        h6.scale(&c(-21)),
        (&h2.pow(2) * &u4.pow(2)).scale(&c(14)),
        (&h2 * &u4.pow(4)).scale(&c(-14)),
        u4.pow(6).scale(&c(2)),
    ];
    let sum = terms.iter().fold(Poly::zero(ring), |acc, p| &acc + p);
    (&u4 * &sum).scale(&r(1, 168))
}

pub fn equivariant_map(group: GroupType) -> EquivariantMap {
    let components = match group {
        GroupType::H3 => Defs::parse_poly(transcribed::H3_EQUIVARIANT, &u_ring(3))
            .and_then(|d| d.numbered("P"))
            .expect("bundled data parses"),
        GroupType::H4 => {
            let ring = u_ring(4);
            let f = h4_building_block(&ring);
            let u: Vec<Poly> = (0..4).map(|i| var(&ring, i)).collect();
            [[3, 2, 1, 0], [2, 3, 0, 1], [1, 0, 3, 2], [0, 1, 2, 3]]
                .iter()
                .map(|perm| f.compose(&perm.map(|i| u[i].clone())).expect("same arity"))
                .collect()
        }
    };
    EquivariantMap { group, components }
}

/// P(u·g) = P(u)·g* for one pair of matrices.
fn intertwines(map: &EquivariantMap, g: &Matrix, g_star: &Matrix) -> bool {
    let ring = map.components[0].ring();
    let images = g.linear_images(ring);
    let lhs: Vec<Poly> = map.components.iter().map(|p| p.compose(&images).expect("same ring")).collect();
    let rhs = g_star.act_row(&map.components);
    lhs == rhs
}

/// Intertwining for every generator.
pub fn check_intertwining(map: &EquivariantMap, plain: &GeneratorSet, star: &GeneratorSet) -> VerifyReport {
    let mut rep = VerifyReport::new("intertwining");
    for (j, (g, gs)) in plain.gens.iter().zip(&star.gens).enumerate() {
        rep.check(format!("P(u s{0}) = P(u) s{0}*", j + 1), intertwines(map, g, gs), "exact");
    }
    rep.finish()
}

/// Intertwining for `count` seeded random words of length 1 to 12.
pub fn check_intertwining_words(
    map: &EquivariantMap,
    plain: &GeneratorSet,
    star: &GeneratorSet,
    count: usize,
    seed: u64,
) -> VerifyReport {
    let mut rng = Rng::new(seed);
    let n = plain.gens.len() as u64;
    let words: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let len = rng.range(1, 12) as usize;
            (0..len).map(|_| rng.below(n) as usize).collect()
        })
        .collect();
    let results: Vec<bool> =
        words.par_iter().map(|w| intertwines(map, &plain.word(w), &star.word(w))).collect();
    let mut rep = VerifyReport::new("intertwining-words");
    for (w, ok) in words.iter().zip(results) {
        let name: String = w.iter().map(|i| format!("s{}", i + 1)).collect();
        rep.check(format!("word {name}"), ok, "exact");
    }
    rep.finish()
}

/// A polynomial in the invariant symbols.
#[derive(Clone, Debug)]
pub struct BasisExpr {
    pub expr: Poly,
}

impl BasisExpr {
    /// The expression with the invariants substituted, unexpanded.
    pub fn in_u(&self, basis: &InvariantSet) -> Formula {
        Formula::compose(&self.expr, basis.formulas())
    }
}

/// Exponent vectors with Σ eᵢ·wᵢ = degree, in descending order.
pub fn weighted_monomials(weights: &[u32], degree: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == weights.len() {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let w = weights[prefix.len()];
        for e in (0..=left / w).rev() {
            prefix.push(e);
            rec(weights, left - e * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, degree, &mut Vec::new(), &mut out);
    out
}

const HELD_OUT: usize = 5;

/// Writes a homogeneous invariant of degree `degree` as a polynomial in the
/// basic invariants, by exact linear algebra on seeded integer points in
/// [−9, 9].
pub fn express_in_invariants(
    target: &Formula,
    degree: u32,
    basis: &InvariantSet,
    seed: u64,
) -> Result<BasisExpr, InvariantError> {
    let monos = weighted_monomials(&basis.degrees, degree);
    let ring = basis.symbol_ring();
    let n = basis.ring.nvars();
    let mut rng = Rng::new(seed);
    if monos.is_empty() {
        for k in 0..HELD_OUT {
            let pt: Vec<Golden> = (0..n).map(|_| c(rng.range(-9, 9))).collect();
            if target.eval(&pt).is_some_and(|v| !v.is_zero()) {
                return Err(InvariantError::HeldOut(k));
            }
        }
        return Ok(BasisExpr { expr: Poly::zero(&ring) });
    }
    let cap = 4 * monos.len() + 20;
    let mut want = monos.len() + 4;
    let mut rows: Vec<(Vec<Golden>, Golden)> = Vec::new();
    let mut tries = 0;
    loop {
        let pts: Vec<Vec<Golden>> =
            (0..want + HELD_OUT - rows.len()).map(|_| (0..n).map(|_| c(rng.range(-9, 9))).collect()).collect();
        tries += pts.len();
        let new_rows: Vec<Option<(Vec<Golden>, Golden)>> = pts
            .par_iter()
            .map(|pt| {
                let t = target.eval(pt)?;
                let vals: Vec<Golden> = basis.polys.iter().map(|p| p.eval(pt)).collect();
                let row = monos
                    .iter()
                    .map(|e| e.iter().zip(&vals).fold(Golden::one(), |acc, (&k, v)| &acc * &v.pow(k)))
                    .collect();
                Some((row, t))
            })
            .collect();
        rows.extend(new_rows.into_iter().flatten());
        if rows.len() < want + HELD_OUT {
            if tries > 10 * cap {
                return Err(InvariantError::NoPoints);
            }
            continue;
        }
        let (fit, held) = rows.split_at(want);
        let a = fit.iter().map(|(row, _)| row.clone()).collect();
        let b = fit.iter().map(|(_, t)| t.clone()).collect();
        match solve(a, b) {
            Ok(x) => {
                for (k, (row, t)) in held.iter().enumerate() {
                    let v = row.iter().zip(&x).fold(Golden::zero(), |acc, (m, xi)| &acc + &(m * xi));
                    if v != *t {
                        return Err(InvariantError::HeldOut(k));
                    }
                }
                let mut expr = Poly::zero(&ring);
                for (e, xi) in monos.iter().zip(&x) {
                    if !xi.is_zero() {
                        expr = &expr + &Poly::monomial(&ring, e, xi.clone());
                    }
                }
                return Ok(BasisExpr { expr });
            }
            Err(SolveError::RankDeficient { .. }) if want < cap => {
                want = (want * 2).min(cap);
                rows.truncate(0);
            }
            Err(e) => return Err(e.into()),
        }
    }
}

/// The transcribed H3 discriminant in x₁, x₂, x₃.
pub fn h3_discriminant_printed() -> Poly {
    let ring = VarRing::of(&["x1", "x2", "x3"]);
    Defs::parse_poly(transcribed::H3_DISCRIMINANT, &ring).and_then(|d| d.poly("Delta")).expect("bundled data")
}

fn z_symbols() -> Ring {
    VarRing::weighted(&["Z2", "Z12", "Z20", "Z30"], [2, 12, 20, 30].iter().map(|&w| rat_int(w)).collect())
        .expect("positive weights")
}

/// D̃ in Z₂, Z₁₂, Z₂₀, Z₃₀.
pub fn dtilde() -> Poly {
    Defs::parse_poly(transcribed::H4_DTILDE, &z_symbols()).and_then(|d| d.poly("Dt")).expect("bundled data")
}

/// Y₂, Y₁₂, Y₂₀, Y₃₀ as printed, in Z₂, Z₁₂, Z₂₀, Z₃₀.
pub fn y_in_z() -> Vec<Poly> {
    let defs = Defs::parse_poly(transcribed::H4_Y_IN_Z, &z_symbols()).expect("bundled data");
    ["Y2", "Y12", "Y20", "Y30"].iter().map(|n| defs.poly(n).expect("bundled data")).collect()
}

/// Y_j = Z*_j(P₁, ..., P₄) as unexpanded formulas in u.
pub fn y_in_u() -> Vec<Formula> {
    let map = equivariant_map(GroupType::H4);
    let star = basic_invariants_h4(Variant::Star);
    star.polys.iter().map(|z| map.pull_back(z)).collect()
}

/// Suite: H3 invariants, anti-invariance, the discriminant in I and the
/// star invariants of P in I.
pub fn h3_invariants_suite(seed: u64) -> VerifyReport {
    let mut rep = VerifyReport::new("h3-invariants");
    let plain = GroupType::H3.generators(Variant::Plain);
    let star = GroupType::H3.generators(Variant::Star);
    let inv = basic_invariants_h3(Variant::Plain);
    let inv_star = basic_invariants_h3(Variant::Star);
    for (name, p) in inv.names.iter().zip(&inv.polys) {
        rep.absorb(check_invariance(name, p, &plain, Mode::Exact));
    }
    for (name, p) in inv_star.names.iter().zip(&inv_star.polys) {
        rep.absorb(check_invariance(name, p, &star, Mode::Exact));
    }
    let i2_moved = inv.polys[1].compose(&star.gens[1].linear_images(&inv.ring)).expect("same ring");
    rep.check("I2 is not star-invariant", i2_moved != inv.polys[1], "");

    let forms = printed_forms(GroupType::H3);
    rep.absorb(check_anti_invariance("D", &forms, &plain));
    rep.absorb(check_anti_invariance("D*", &star_forms(&forms), &star));

    let d = discriminant_product(&forms);
    let d_star = d.conj();
    let delta = h3_discriminant_printed();
    let delta_i = delta.compose(&inv.polys).expect("three invariants");
    let factor = c(-(1 << 15) * 25);
    rep.check(
        "Delta(I) = -2^15*5^2*D^2",
        delta_i == d.pow(2).scale(&factor),
        "exact expansion",
    );
    let delta_j = delta.compose(&inv_star.polys).expect("three invariants");
    let d_star_sq = d_star.pow(2);
    let ratio = delta_j.div_exact(&d_star_sq).ok().and_then(|q| q.ok()).and_then(|q| q.as_constant());
    if let Some(k) = &ratio {
        rep.constant("Delta(J)/D*^2", k);
    }
    rep.check("Delta(J) = -2^15*5^2*D*^2", ratio == Some(factor), "exact division");

    rep.absorb(j_in_i_suite(seed));
    rep.finish()
}

/// J_k(P(u)) in I with c₀ fixed by J₁.
fn j_in_i_suite(seed: u64) -> VerifyReport {
    let mut rep = VerifyReport::new("J(P) in I");
    let inv = basic_invariants_h3(Variant::Plain);
    let inv_star = basic_invariants_h3(Variant::Star);
    let map = equivariant_map(GroupType::H3);
    let ring = VarRing::of(&["I1", "I2", "I3", "c0"]);
    let printed = Defs::parse_poly(transcribed::H3_J_IN_I, &ring).and_then(|d| d.numbered("J")).expect("bundled data");
    let mut c0: Option<Golden> = None;
    for (k, j) in inv_star.polys.iter().enumerate() {
        let target = map.pull_back(j);
        let label = format!("J{}(P)", k + 1);
        let solved = match express_in_invariants(&target, 3 * inv.degrees[k], &inv, seed) {
            Ok(s) => s,
            Err(e) => {
                rep.check(label, false, e.to_string());
                continue;
            }
        };
        if k == 0 {
            let i1 = Poly::var_at(&solved.expr.ring().clone(), 0);
            let i2 = Poly::var_at(&solved.expr.ring().clone(), 1);
            let bracket = &i1.pow(3) + &i2.scale(&c(3));
            c0 = solved.expr.div_exact(&bracket).ok().and_then(|q| q.ok()).and_then(|q| q.as_constant());
            match &c0 {
                Some(v) => rep.constant("c0", v),
                None => {
                    rep.check("J1(P) = c0*(I1^3+3*I2)", false, solved.expr.canonical());
                }
            }
        }
        let Some(c0v) = &c0 else { continue };
        let sring = solved.expr.ring().clone();
        let images: Vec<Poly> =
            (0..3).map(|i| Poly::var_at(&sring, i)).chain([Poly::constant(&sring, c0v.clone())]).collect();
        let expected = printed[k].compose(&images).expect("four images");
        rep.check(format!("{label} matches printed with c0"), solved.expr == expected, solved.expr.canonical());
        let back = check_identity(&format!("{label} round trip"), &target, &solved.in_u(&inv), Mode::Exact);
        rep.push(back);
    }
    rep.finish()
}

/// Suite: the H3 equivariant map intertwines ρ and ρ*.
pub fn h3_intertwine_suite(seed: u64) -> VerifyReport {
    let mut rep = VerifyReport::new("h3-intertwine");
    let map = equivariant_map(GroupType::H3);
    let plain = GroupType::H3.generators(Variant::Plain);
    let star = GroupType::H3.generators(Variant::Star);
    rep.absorb(check_intertwining(&map, &plain, &star));
    rep.absorb(check_intertwining_words(&map, &plain, &star, 20, seed));
    rep.finish()
}

/// Suite: the H4 equivariant map intertwines σ and σ*.
pub fn h4_intertwine_suite(seed: u64) -> VerifyReport {
    let mut rep = VerifyReport::new("h4-intertwine");
    let map = equivariant_map(GroupType::H4);
    let plain = GroupType::H4.generators(Variant::Plain);
    let star = GroupType::H4.generators(Variant::Star);
    rep.absorb(check_intertwining(&map, &plain, &star));
    rep.absorb(check_intertwining_words(&map, &plain, &star, 20, seed));
    rep.finish()
}

/// Exact quotients φ*(P)/φ over the printed forms; an error names the
/// first form that does not divide.
pub fn quotient_forms(map: &EquivariantMap, forms: &[Poly]) -> Result<Vec<Poly>, String> {
    forms
        .par_iter()
        .map(|phi| {
            let num = map.pull_back_poly(&phi.conj());
            match num.div_exact(phi) {
                Ok(Ok(q)) => Ok(q),
                Ok(Err(f)) => Err(format!("{}: {f}", phi.canonical())),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect()
}

fn check_quotients(rep: &mut VerifyReport, map: &EquivariantMap, forms: &[Poly], degree: u32) -> Option<Vec<Poly>> {
    match quotient_forms(map, forms) {
        Ok(qs) => {
            let homogeneous = qs.iter().all(|q| q.terms().iter().all(|(m, _)| m.degree() == degree));
            rep.check(
                format!("{} quotients exact, homogeneous of degree {degree}", forms.len()),
                homogeneous,
                "",
            );
            Some(qs)
        }
        Err(e) => {
            rep.check("quotients exact", false, e);
            None
        }
    }
}

/// Reports `lhs = c·rhs` exactly with the constant recorded.
fn exact_proportional(rep: &mut VerifyReport, label: &str, name: &str, lhs: &Poly, rhs: &Poly) {
    let (chk, k) = check_proportional(label, &Formula::from(lhs), &Formula::from(rhs), Mode::Exact, 1);
    if let Some(k) = k {
        rep.constant(name, &k);
    }
    rep.push(chk);
}

/// Suite: H3 quotient forms, c₁·Q₀ and the Jacobian of P.
pub fn h3_jacobian_suite() -> VerifyReport {
    let mut rep = VerifyReport::new("h3-jacobian");
    let map = equivariant_map(GroupType::H3);
    let inv = basic_invariants_h3(Variant::Plain);
    let forms = printed_forms(GroupType::H3);
    check_quotients(&mut rep, &map, &forms, 2);

    let d = discriminant_product(&forms);
    let d_star_p = product(&star_forms(&forms).iter().map(|f| map.pull_back_poly(f)).collect::<Vec<_>>());
    let iring = VarRing::of(&["I1", "I2", "I3"]);
    let q0 = Defs::parse_poly(transcribed::H3_Q0, &iring).and_then(|d| d.poly("Q0")).expect("bundled data");
    rep.check("Q0 matches printed", q0.canonical() == canonical_text(canonical::H3_Q0), "");
    let q0_u = q0.compose(&inv.polys).expect("three invariants");
    let c1 = d_star_p.div_exact(&(&q0_u * &d)).ok().and_then(|q| q.ok()).and_then(|q| q.as_constant());
    if let Some(v) = &c1 {
        rep.constant("c1", v);
    }
    rep.check(
        "D*(P) = c1*Q0(I)*D",
        c1.as_ref().is_some_and(|v| !v.is_zero()),
        "exact division",
    );

    let jac = jacobian_det(&map.components, &[0, 1, 2]).expect("three components");
    let target = &inv.polys[1] - &inv.polys[0].pow(3);
    exact_proportional(&mut rep, "det dP/du ~ I2-I1^3", "det dP/du / (I2-I1^3)", &jac, &target);
    rep.finish()
}

/// Suite: H4 invariants, anti-invariance and D² against D̃.
pub fn h4_invariants_suite(mode: Mode) -> VerifyReport {
    let mut rep = VerifyReport::new("h4-invariants");
    let plain = GroupType::H4.generators(Variant::Plain);
    let star = GroupType::H4.generators(Variant::Star);
    for (set, gs) in [(basic_invariants_h4(Variant::Plain), &plain), (basic_invariants_h4(Variant::Star), &star)] {
        for (name, p) in set.names.iter().zip(&set.polys) {
            let name = format!("{name}{}", if set.variant == Variant::Star { "*" } else { "" });
            rep.absorb(check_invariance(&name, p, gs, Mode::Exact));
        }
    }
    let forms = printed_forms(GroupType::H4);
    rep.absorb(check_anti_invariance("D", &forms, &plain));
    rep.absorb(check_anti_invariance("D*", &star_forms(&forms), &star));

    let dt = dtilde();
    let wd = dt.weighted_degree().ok().and_then(|r| r.ok());
    rep.check(
        "Dt weighted-homogeneous of degree 120",
        wd == Some(crate::algebra::WeightedDegree::Degree(rat_int(120))),
        wd.map_or("not homogeneous".to_string(), |d| d.to_string()),
    );
    let inv = basic_invariants_h4(Variant::Plain);
    let d_sq = Formula::Mul(forms.iter().map(Formula::from).collect()).pow(2);
    let dt_u = Formula::compose(&dt, inv.formulas());
    let (chk, k) = check_proportional("D^2 = const*Dt(Z)", &d_sq, &dt_u, mode, 7);
    if let Some(k) = k {
        rep.constant("D^2/Dt(Z)", &k);
    }
    rep.push(chk);
    rep.finish()
}

/// Suite: the printed Y_j against Z*_j(P).
pub fn theorem32_suite(mode: Mode, seed: u64) -> VerifyReport {
    theorem32_with(&y_in_z(), mode, seed)
}

/// [`theorem32_suite`] against supplied Y-polynomials.
pub fn theorem32_with(printed: &[Poly], mode: Mode, seed: u64) -> VerifyReport {
    let mut rep = VerifyReport::new("h4-theorem32");
    let ys = y_in_u();
    let inv = basic_invariants_h4(Variant::Plain);
    let names = ["Y2", "Y12", "Y20", "Y30"];
    let goldens = [canonical::H4_Y2, canonical::H4_Y12, canonical::H4_Y20, canonical::H4_Y30];
    let degrees = [14, 84, 140, 210];
    let checks: Vec<Vec<Check>> = (0..4)
        .into_par_iter()
        .map(|j| {
            let mut out = Vec::new();
            let rhs = Formula::compose(&printed[j], inv.formulas());
            if j < 2 {
                match express_in_invariants(&ys[j], degrees[j], &inv, seed) {
                    Ok(e) => {
                        let got = e.expr.canonical();
                        out.push(Check::new(
                            format!("{} solved in Z matches printed", names[j]),
                            got == canonical_text(goldens[j]) && e.expr == printed[j],
                            format!("{} terms", e.expr.len()),
                        ));
                    }
                    Err(e) => out.push(Check::new(format!("{} solved in Z", names[j]), false, e.to_string())),
                }
                out.push(check_identity(&format!("{} = printed(Z)", names[j]), &ys[j], &rhs, Mode::Exact));
            } else {
                out.push(check_identity(&format!("{} = printed(Z)", names[j]), &ys[j], &rhs, mode));
            }
            out
        })
        .collect();
    for c in checks.into_iter().flatten() {
        rep.push(c);
    }
    let plain = GroupType::H4.generators(Variant::Plain);
    let check_mode = match mode {
        Mode::Exact => Mode::modular(seed),
        m => m,
    };
    for (j, y) in ys.iter().enumerate() {
        for (i, g) in plain.gens.iter().enumerate() {
            let moved: Vec<Formula> = g.linear_images(&inv.ring).iter().map(Formula::from).collect();
            let lhs = Formula::compose(y.clone(), moved);
            rep.push(check_identity(&format!("{} invariant under s{}", names[j], i + 1), &lhs, y, check_mode));
        }
    }
    rep.finish()
}

/// det(∂Yᵢ/∂Zⱼ) of the printed Y's.
pub fn y_jacobian(printed: &[Poly]) -> Formula {
    let m: Vec<Vec<Formula>> = printed.iter().map(|y| (0..4).map(|j| Formula::from(y.diff(j))).collect()).collect();
    det(&m)
}

pub const C_PRIME: i64 = 9216;

/// Suite: H4 quotient forms, the Jacobian of P, the chain identity and c′.
pub fn h4_jacobian_suite(mode: Mode) -> VerifyReport {
    let mut rep = VerifyReport::new("h4-jacobian");
    let map = equivariant_map(GroupType::H4);
    let inv = basic_invariants_h4(Variant::Plain);
    let forms = printed_forms(GroupType::H4);
    let quotients = check_quotients(&mut rep, &map, &forms, 6);

    let [z2, z12, z20, _] = [&inv.polys[0], &inv.polys[1], &inv.polys[2], &inv.polys[3]];
    let factor = &(&z2.pow(2) * z20) - &z12.pow(2);
    let jac = jacobian_det(&map.components, &[0, 1, 2, 3]).expect("four components");
    exact_proportional(&mut rep, "det dP/du ~ Z2^2*Z20-Z12^2", "det dP/du / (Z2^2*Z20-Z12^2)", &jac, &factor);

    let chain_mode = match mode {
        Mode::Exact => Mode::modular(11),
        m => m,
    };
    if let Some(qs) = quotients {
        let prod_g = Formula::Mul(qs.iter().map(Formula::from).collect());
        let d = Formula::Mul(forms.iter().map(Formula::from).collect());
        let d_star_p = Formula::Mul(star_forms(&forms).iter().map(|f| map.pull_back(f)).collect());
        rep.push(check_identity(
            "D*(P) = D * prod G",
            &d_star_p,
            &Formula::Mul(vec![d, prod_g.clone()]),
            chain_mode,
        ));
        let lhs = Formula::compose(y_jacobian(&y_in_z()), inv.formulas());
        let rhs = Formula::Mul(vec![Formula::from(&factor), prod_g]);
        let (chk, k) = check_proportional("det dY/dZ ~ (Z2^2*Z20-Z12^2)*prod G", &lhs, &rhs, chain_mode, 5);
        if let Some(k) = k {
            rep.constant("det dY/dZ / ((Z2^2*Z20-Z12^2)*prod G)", &k);
        }
        rep.push(chk);
        rep.push(check_identity(
            "det dY/dZ = c'*(Z2^2*Z20-Z12^2)*prod G with c' = 2^10*3^2",
            &lhs,
            &rhs.scaled(c(C_PRIME)),
            chain_mode,
        ));
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(p: &Poly, pt: &[i64]) -> Golden {
        p.eval(&pt.iter().map(|&x| c(x)).collect::<Vec<_>>())
    }

    #[test]
    fn elementary_values() {
        let (e1, e2, e3, dl) = elementary_data(&u_ring(3)).unwrap();
        assert_eq!([&e1, &e2, &e3, &dl].map(|p| at(p, &[1, 1, 1])), [c(3), c(3), c(1), c(0)]);
        assert_eq!([&e1, &e2, &e3, &dl].map(|p| at(p, &[1, 0, 0])), [c(1), c(0), c(0), c(0)]);
        assert_eq!(at(&dl, &[1, 2, 3]), c(-120));
        assert!(elementary_data(&u_ring(4)).is_err());
    }

    #[test]
    fn h3_invariant_values() {
        let i = basic_invariants_h3(Variant::Plain);
        assert_eq!(at(&i.polys[0], &[1, 1, 1]), c(6));
        assert_eq!(at(&i.polys[1], &[1, 1, 1]), c(-40));
        assert_eq!(basic_invariants_h3(Variant::Star).polys[1], i.polys[1].conj());
    }

    #[test]
    fn h4_invariant_values() {
        let z = basic_invariants_h4(Variant::Plain);
        assert_eq!(at(&z.polys[0], &[1, 0, 0, 0]), c(1));
        assert_eq!(at(&z.polys[0], &[0, 0, 0, 1]), c(1));
    }

    #[test]
    fn invariance_checks() {
        let plain = GroupType::H3.generators(Variant::Plain);
        let i = basic_invariants_h3(Variant::Plain);
        assert!(check_invariance("I2", &i.polys[1], &plain, Mode::Exact).passed());
        let u1 = Poly::var_at(&i.ring, 0);
        let rep = check_invariance("u1", &u1, &plain, Mode::Exact);
        assert!(!rep.checks[0].passed());
    }

    #[test]
    fn star_forms_and_products() {
        let forms = printed_forms(GroupType::H3);
        let st = star_forms(&forms);
        assert_eq!(st[6].canonical(), "u1+(-1/2+1/2*r5)*u2+(-1/2-1/2*r5)*u3");
        assert_eq!(st[0], forms[0]);
        assert_eq!(star_forms(&st), forms);
        let d = discriminant_product(&forms);
        assert_eq!(d.total_degree(), Some(15));
        assert!(at(&d, &[1, 0, 0]).is_zero());
        let plain = GroupType::H3.generators(Variant::Plain);
        let moved = d.compose(&plain.gens[0].linear_images(d.ring())).unwrap();
        assert_eq!(moved, d.neg());
    }

    #[test]
    fn equivariant_values() {
        let p3 = equivariant_map(GroupType::H3);
        assert_eq!(at(&p3.components[0], &[1, 0, 0]), c(1));
        assert_eq!(at(&p3.components[1], &[0, 1, 0]), c(1));
        let p4 = equivariant_map(GroupType::H4);
        assert_eq!(at(&p4.components[3], &[0, 0, 0, 1]), r(1, 84));
    }

    #[test]
    fn intertwining_on_generators() {
        for g in [GroupType::H3, GroupType::H4] {
            let rep = check_intertwining(&equivariant_map(g), &g.generators(Variant::Plain), &g.generators(Variant::Star));
            assert!(rep.passed(), "{g}: {:?}", rep.failures());
        }
    }

    #[test]
    fn quotient_examples() {
        let map = equivariant_map(GroupType::H3);
        let qs = quotient_forms(&map, &printed_forms(GroupType::H3)).unwrap();
        assert_eq!(qs[0].canonical(), "u1^2+(-3/2+3/2*r5)*u2^2+(-3/2-3/2*r5)*u3^2");
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(weighted_monomials(&[2, 6, 10], 6), vec![vec![3, 0, 0], vec![0, 1, 0]]);
        assert_eq!(weighted_monomials(&[2, 12, 20, 30], 14).len(), 2);
    }

    #[test]
    fn solver_recovers_j1() {
        let inv = basic_invariants_h3(Variant::Plain);
        let map = equivariant_map(GroupType::H3);
        let j1 = &basic_invariants_h3(Variant::Star).polys[0];
        let e = express_in_invariants(&map.pull_back(j1), 6, &inv, 3).unwrap();
        assert_eq!(e.expr.canonical(), "1/4*I1^3+3/4*I2");
    }

    #[test]
    fn solver_rejects_non_invariants() {
        let inv = basic_invariants_h3(Variant::Plain);
        let u1 = Poly::var_at(&inv.ring, 0).pow(2);
        assert!(express_in_invariants(&Formula::from(u1), 2, &inv, 3).is_err());
    }

    #[test]
    fn corrupted_y30_fails_modular_check() {
        let mut ys = y_in_z();
        let (m, cf) = ys[3].terms()[0].clone();
        let bump = Poly::monomial(ys[3].ring(), &m.exps(4), &cf + &Golden::one()) - Poly::monomial(ys[3].ring(), &m.exps(4), cf);
        ys[3] = &ys[3] + &bump;
        let inv = basic_invariants_h4(Variant::Plain);
        let ok = check_identity("Y30", &y_in_u()[3], &Formula::compose(&ys[3], inv.formulas()), Mode::Modular { points: 3, seed: 1 });
        assert!(!ok.passed());
    }
}
