//! Sparse multivariate polynomials over Q(√5).
//!
//! Terms are kept in a vector sorted by descending graded-lexicographic
//! order with no zero coefficients. Products accumulate into a hash map over
//! integer (denominator-cleared) coefficients and are frozen back into the
//! sorted form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::error::AlgebraError;
use super::golden::{Golden, Rat};
use super::ring::{same_vars, Mono, Ring, VarRing};

#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Mono, Golden)>,
}

/// Result of [`Poly::weighted_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    /// All terms share this weighted degree.
    Degree(Rat),
    /// The zero polynomial is homogeneous of every degree.
    AnyDegree,
}

impl fmt::Display for WeightedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightedDegree::Degree(d) => write!(f, "weighted degree {d}"),
            WeightedDegree::AnyDegree => f.write_str("zero"),
        }
    }
}

/// Two terms of different weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotHomogeneous {
    pub first: String,
    pub second: String,
}

/// Raised by [`Poly::div_exact`] when the divisor does not divide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityFailure {
    pub obstruction: String,
}

impl fmt::Display for DivisibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not divisible, obstructing term {}", self.obstruction)
    }
}

/// Products with at least this many term pairs are split across threads.
const PAR_THRESHOLD: usize = 1 << 14;

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, Golden::one())
    }

    pub fn constant(ring: &Ring, c: Golden) -> Poly {
        let terms = if c.is_zero() { Vec::new() } else { vec![(Mono::ONE, c)] };
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Poly, AlgebraError> {
        let i = ring.var_index(name)?;
        Ok(Poly::var_at(ring, i))
    }

    pub fn var_at(ring: &Ring, i: usize) -> Poly {
        assert!(i < ring.nvars());
        Poly { ring: ring.clone(), terms: vec![(Mono::var(i, 1), Golden::one())] }
    }

    pub fn monomial(ring: &Ring, exps: &[u32], c: Golden) -> Poly {
        assert_eq!(exps.len(), ring.nvars());
        Poly::from_terms(ring, vec![(Mono::from_exps(exps), c)])
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(ring: &Ring, terms: Vec<(Mono, Golden)>) -> Poly {
        let mut map: FxHashMap<Mono, Golden> = FxHashMap::default();
        for (m, c) in terms {
            *map.entry(m).or_default() += &c;
        }
        Poly::from_map(ring, map)
    }

    fn from_map(ring: &Ring, map: FxHashMap<Mono, Golden>) -> Poly {
        let mut terms: Vec<(Mono, Golden)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(&mut terms);
        Poly { ring: ring.clone(), terms }
    }

    /// Terms already sorted and free of zeros.
    fn from_sorted(ring: &Ring, terms: Vec<(Mono, Golden)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0.grlex_key() > w[1].0.grlex_key()));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Mono, Golden)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Golden> {
        match self.terms.as_slice() {
            [] => Some(Golden::zero()),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Golden)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: Mono) -> Golden {
        let key = m.grlex_key();
        match self.terms.binary_search_by(|(t, _)| key.cmp(&t.grlex_key())) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Golden::zero(),
        }
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Golden {
        self.coeff(Mono::from_exps(exps))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    fn check_ring(&self, o: &Poly) -> Result<(), AlgebraError> {
        if same_vars(&self.ring, &o.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch(self.ring.to_string(), o.ring.to_string()))
        }
    }

    pub fn try_add(&self, o: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(o)?;
        Ok(self.merge(o, false))
    }

    pub fn try_sub(&self, o: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(o)?;
        Ok(self.merge(o, true))
    }

    pub fn try_mul(&self, o: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(o)?;
        Ok(self.mul_unchecked(o))
    }

    /// Sorted merge of two term lists.
    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Less
            } else if j == b.len() {
                std::cmp::Ordering::Greater
            } else {
                a[i].0.grlex_key().cmp(&b[j].0.grlex_key())
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted(&self.ring, out)
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Poly::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &Golden) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        Poly::from_sorted(&self.ring, terms)
    }

    /// Multiplies by a monomial `c·m`.
    pub fn mul_term(&self, m: Mono, c: &Golden) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        // multiplying by a monomial preserves grlex order
        let terms = self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect();
        Poly::from_sorted(&self.ring, terms)
    }

    fn mul_unchecked(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.ring);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return o.mul_term(*m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = &o.terms[0];
            return self.mul_term(*m, c);
        }
        for v in 0..self.ring.nvars() {
            assert!(self.degree_in(v) + o.degree_in(v) < 1 << 16, "exponent overflow in product");
        }
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let fa = IntForm::of(big);
        let fb = IntForm::of(small);
        let acc = if big.terms.len() * small.terms.len() >= PAR_THRESHOLD && rayon::current_num_threads() > 1 {
            let chunk = (fa.terms.len() / (4 * rayon::current_num_threads())).max(1);
            fa.terms
                .par_chunks(chunk)
                .map(|part| IntForm::mul_into(part, &fb.terms))
                .reduce(FxHashMap::default, merge_int_maps)
        } else {
            IntForm::mul_into(&fa.terms, &fb.terms)
        };
        let den = &fa.den * &fb.den;
        let mut terms: Vec<(Mono, Golden)> = acc
            .into_iter()
            .filter(|(_, (a, b))| !(a.is_zero() && b.is_zero()))
            .map(|(m, (a, b))| {
                (Mono(m), Golden::new(Rat::new(a, den.clone()), Rat::new(b, den.clone())))
            })
            .collect();
        sort_terms(&mut terms);
        Poly::from_sorted(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Galois conjugation applied to every coefficient.
    pub fn conj(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.conj())).collect();
        Poly::from_sorted(&self.ring, terms)
    }

    pub fn diff(&self, var: usize) -> Poly {
        assert!(var < self.ring.nvars());
        let terms: Vec<(Mono, Golden)> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(var);
                (e > 0).then(|| (m.with_exp(var, e - 1), c * &Golden::from_int(e as i64)))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    pub fn diff_by_name(&self, name: &str) -> Result<Poly, AlgebraError> {
        Ok(self.diff(self.ring.var_index(name)?))
    }

    /// Exact quotient `self / g`, or the first term that blocks division.
    pub fn div_exact(&self, g: &Poly) -> Result<Result<Poly, DivisibilityFailure>, AlgebraError> {
        self.check_ring(g)?;
        if g.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(c) = g.as_constant() {
            return Ok(Ok(self.scale(&c.inv().expect("nonzero constant"))));
        }
        let (lm, lc) = g.terms[0].clone();
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem: BTreeMap<(u32, u128), Golden> =
            self.terms.iter().map(|(m, c)| (m.grlex_key(), c.clone())).collect();
        let mut quot = Vec::new();
        while let Some(((_, mraw), c)) = rem.pop_last() {
            let m = Mono(mraw);
            let Some(qm) = m.div(lm) else {
                let t = Poly::from_terms(&self.ring, vec![(m, c)]);
                return Ok(Err(DivisibilityFailure { obstruction: t.canonical() }));
            };
            let qc = &c * &lc_inv;
            for (gm, gc) in &g.terms[1..] {
                let key = gm.mul(qm).grlex_key();
                let delta = &qc * gc;
                let entry = rem.entry(key).or_default();
                *entry -= &delta;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.push((qm, qc));
        }
        Ok(Ok(Poly::from_sorted(&self.ring, quot)))
    }

    /// Weighted degree under the ring's weights.
    pub fn weighted_degree(&self) -> Result<Result<WeightedDegree, NotHomogeneous>, AlgebraError> {
        let w = self.ring.weights().ok_or(AlgebraError::NoWeights)?;
        Ok(self.weighted_degree_with(w))
    }

    pub fn weighted_degree_with(&self, w: &[Rat]) -> Result<WeightedDegree, NotHomogeneous> {
        let Some((m0, _)) = self.terms.first() else {
            return Ok(WeightedDegree::AnyDegree);
        };
        let d0 = m0.weighted_degree(w);
        for (m, _) in &self.terms[1..] {
            if m.weighted_degree(w) != d0 {
                return Err(NotHomogeneous { first: m0.render(&self.ring), second: m.render(&self.ring) });
            }
        }
        Ok(WeightedDegree::Degree(d0))
    }

    /// Same polynomial viewed in another ring; variables are matched by
    /// name and must all exist in the target.
    pub fn embed(&self, target: &Ring) -> Result<Poly, AlgebraError> {
        let map: Vec<usize> =
            self.ring.names().iter().map(|n| target.var_index(n)).collect::<Result<_, _>>()?;
        let n = self.ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = Mono::ONE;
                for (i, &j) in map.iter().enumerate().take(n) {
                    out = out.with_exp(j, m.exp(i));
                }
                (out, c.clone())
            })
            .collect();
        Ok(Poly::from_terms(target, terms))
    }

    /// Relabels the ring without touching exponents (same arity).
    pub fn with_ring(&self, ring: &Ring) -> Result<Poly, AlgebraError> {
        if ring.nvars() != self.ring.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.ring.nvars(), found: ring.nvars() });
        }
        Ok(Poly { ring: ring.clone(), terms: self.terms.clone() })
    }

    /// Substitutes polynomial images for every variable.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, AlgebraError> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.ring.nvars(), found: images.len() });
        }
        let Some(first) = images.first() else {
            return Err(AlgebraError::ArityMismatch { expected: 1, found: 0 });
        };
        for im in images {
            first.check_ring(im)?;
        }
        Ok(super::compose::compose(self, images, &Poly::one(first.ring())))
    }

    /// Exact value at a point with coordinates in Q(√5).
    pub fn eval(&self, point: &[Golden]) -> Golden {
        assert_eq!(point.len(), self.ring.nvars());
        let tables: Vec<Vec<Golden>> = (0..point.len())
            .map(|v| {
                let d = self.degree_in(v) as usize;
                let mut t = Vec::with_capacity(d + 1);
                t.push(Golden::one());
                for k in 1..=d {
                    let next = &t[k - 1] * &point[v];
                    t.push(next);
                }
                t
            })
            .collect();
        let mut acc = Golden::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, table) in tables.iter().enumerate() {
                let e = m.exp(v) as usize;
                if e > 0 {
                    t = &t * &table[e];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Primitive integer form: scaled so that all coefficients are coprime
    /// integers in Z[√5] componentwise with a positive leading rational part.
    /// Returns the scale factor `s` with `primitive = s·self`.
    pub fn primitive(&self) -> (Poly, Rat) {
        if self.is_zero() {
            return (self.clone(), Rat::one());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            den = den.lcm(&c.denom_lcm());
        }
        for (_, c) in &self.terms {
            for part in [&c.a, &c.b] {
                let v = part * Rat::from_integer(den.clone());
                num = num.gcd(v.numer());
            }
        }
        let mut s = Rat::new(den, num);
        let lead = &self.terms[0].1;
        let lead_sign = if lead.a.is_zero() { &lead.b } else { &lead.a };
        if *lead_sign < Rat::zero() {
            s = -s;
        }
        (self.scale(&Golden::from_rat(s.clone())), s)
    }

    /// Canonical whitespace-free text form.
    pub fn canonical(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono = m.render(&self.ring);
            let coeff = c.canonical();
            let body = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono
            } else if *c == Golden::from_int(-1) {
                format!("-{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            if i > 0 && !body.starts_with('-') {
                out.push('+');
            }
            out.push_str(&body);
        }
        out
    }
}

impl PartialEq for Poly {
    fn eq(&self, o: &Poly) -> bool {
        same_vars(&self.ring, &o.ring) && self.terms == o.terms
    }
}

impl Eq for Poly {}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

fn sort_terms(terms: &mut [(Mono, Golden)]) {
    terms.sort_unstable_by(|x, y| y.0.grlex_key().cmp(&x.0.grlex_key()));
}

type IntMap = FxHashMap<u128, (BigInt, BigInt)>;

/// Polynomial with a common denominator pulled out: value is
/// `Σ (A + B√5)·m / den` with integer `A`, `B`.
struct IntForm {
    den: BigInt,
    terms: Vec<(u128, BigInt, BigInt)>,
}

impl IntForm {
    fn of(p: &Poly) -> IntForm {
        let mut den = BigInt::one();
        for (_, c) in &p.terms {
            den = den.lcm(&c.denom_lcm());
        }
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                let a = c.a.numer() * (&den / c.a.denom());
                let b = c.b.numer() * (&den / c.b.denom());
                (m.0, a, b)
            })
            .collect();
        IntForm { den, terms }
    }

    fn mul_into(left: &[(u128, BigInt, BigInt)], right: &[(u128, BigInt, BigInt)]) -> IntMap {
        let mut acc: IntMap = FxHashMap::default();
        acc.reserve(left.len() * 4);
        for (ma, aa, ab) in left {
            let a_irr = !ab.is_zero();
            for (mb, ba, bb) in right {
                let e = acc.entry(ma + mb).or_insert_with(|| (BigInt::zero(), BigInt::zero()));
                let b_irr = !bb.is_zero();
                e.0 += aa * ba;
                if a_irr && b_irr {
                    e.0 += ab * bb * 5u32;
                }
                if b_irr {
                    e.1 += aa * bb;
                }
                if a_irr {
                    e.1 += ab * ba;
                }
            }
        }
        acc
    }
}

fn merge_int_maps(mut a: IntMap, b: IntMap) -> IntMap {
    if a.len() < b.len() {
        return merge_int_maps(b, a);
    }
    for (m, (x, y)) in b {
        let e = a.entry(m).or_insert_with(|| (BigInt::zero(), BigInt::zero()));
        e.0 += x;
        e.1 += y;
    }
    a
}

impl VarRing {
    /// Convenience: polynomial variable by name, panicking when absent.
    pub fn poly_var(ring: &Ring, name: &str) -> Poly {
        Poly::var(ring, name).expect("variable exists")
    }
}

// Operator sugar for ring-compatible operands; panics on ring mismatch.
macro_rules! poly_binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl<'a> std::ops::$tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly {
                self.$m(o).expect("ring mismatch")
            }
        }
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                self.$m(&o).expect("ring mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::golden::rat;
    use crate::algebra::text::parse_poly;

    fn ring() -> Ring {
        VarRing::of(&["u1", "u2", "u3"])
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ring()).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&p("u1+u2") * &p("u1-u2"), p("u1^2-u2^2"));
        assert_eq!(&p("u1+u3^2") * &Poly::one(&ring()), p("u1+u3^2"));
        let sq = p("u1+r5*u2").pow(2);
        assert_eq!(sq.canonical(), "u1^2+2*r5*u1*u2+5*u2^2");
    }

    #[test]
    fn parallel_product_matches_serial() {
        let f = p("(u1 + 2*u2 - r5*u3 + 1/3)^12");
        let g = p("(u1 - u2 + u3*r5/2 - 7)^11");
        let big = &f * &g;
        let serial = Poly::from_terms(
            &ring(),
            f.terms()
                .iter()
                .flat_map(|(m, c)| g.terms().iter().map(move |(n, d)| (m.mul(*n), c * d)))
                .collect(),
        );
        assert!(f.len() * g.len() >= PAR_THRESHOLD);
        assert_eq!(big, serial);
    }

    #[test]
    fn differentiation() {
        assert_eq!(p("u1^3").diff(0), p("3*u1^2"));
        assert!(p("7").diff(1).is_zero());
        assert!(p("u1").diff_by_name("x").is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("u1^2-u2^2").div_exact(&p("u1-u2")).unwrap(), Ok(p("u1+u2")));
        let f = p("u1^3 - r5*u2*u3 + 4");
        assert_eq!(f.div_exact(&f).unwrap(), Ok(Poly::one(&ring())));
        let fail = p("u1^2+1").div_exact(&p("u1")).unwrap().unwrap_err();
        assert_eq!(fail.obstruction, "1");
        assert_eq!(p("u1").div_exact(&Poly::zero(&ring())), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn weighted_degrees() {
        let r = VarRing::weighted(&["x1", "x2", "x3"], vec![rat(1, 5), rat(3, 5), rat(1, 1)]).unwrap();
        let h = parse_poly("x3^3 + x1^5*x3^2 + x1^2*x2*x3^2", &r).unwrap();
        assert_eq!(h.weighted_degree().unwrap(), Ok(WeightedDegree::Degree(rat(3, 1))));
        let bad = parse_poly("x1+x2", &r).unwrap();
        assert!(bad.weighted_degree().unwrap().is_err());
        assert_eq!(Poly::zero(&r).weighted_degree().unwrap(), Ok(WeightedDegree::AnyDegree));
        assert_eq!(p("u1").weighted_degree(), Err(AlgebraError::NoWeights));
    }

    #[test]
    fn composition() {
        let x = VarRing::of(&["x1"]);
        let f = parse_poly("x1^2", &x).unwrap();
        assert_eq!(f.compose(&[p("u1+u2")]).unwrap(), p("u1^2+2*u1*u2+u2^2"));
        assert!(f.compose(&[p("u1"), p("u2")]).is_err());
        let g = p("u1^3*u2 + u2^2*u3 - 5 + r5*u3^4");
        let ids: Vec<Poly> = (0..3).map(|i| Poly::var_at(&ring(), i)).collect();
        assert_eq!(g.compose(&ids).unwrap(), g);
    }

    #[test]
    fn primitive_part() {
        let (prim, s) = p("3/4*u1^2 - 3/2*u2").primitive();
        assert_eq!(prim, p("u1^2-2*u2"));
        assert_eq!(s, rat(4, 3));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let other = VarRing::of(&["x"]);
        assert!(p("u1").try_mul(&Poly::var(&other, "x").unwrap()).is_err());
    }
}
