//! Polynomials localized at a declared set of denominators.

use std::fmt;
use std::sync::Arc;

use super::compose::{compose, Algebra};
use super::error::AlgebraError;
use super::golden::Golden;
use super::poly::Poly;
use super::ring::{same_vars, Mono, Ring};

/// Ordered list of polynomials that may appear in denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenomBasis {
    ring: Ring,
    elems: Vec<Poly>,
    /// For basis elements that are a bare variable, its index.
    bare_var: Vec<Option<usize>>,
}

pub type Basis = Arc<DenomBasis>;

impl DenomBasis {
    pub fn new(ring: &Ring, elems: Vec<Poly>) -> Result<Basis, AlgebraError> {
        for e in &elems {
            if !same_vars(e.ring(), ring) {
                return Err(AlgebraError::RingMismatch(e.ring().to_string(), ring.to_string()));
            }
            if e.is_zero() || e.is_constant() {
                return Err(AlgebraError::BasisMismatch);
            }
        }
        let bare_var = elems
            .iter()
            .map(|e| match e.terms() {
                [(m, c)] if c.is_one() && m.degree() == 1 => (0..ring.nvars()).find(|&i| m.exp(i) == 1),
                _ => None,
            })
            .collect();
        Ok(Arc::new(DenomBasis { ring: ring.clone(), elems, bare_var }))
    }

    /// Empty basis: plain polynomials.
    pub fn trivial(ring: &Ring) -> Basis {
        Arc::new(DenomBasis { ring: ring.clone(), elems: Vec::new(), bare_var: Vec::new() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elems(&self) -> &[Poly] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `∏ bᵢ^eᵢ`
    pub fn product(&self, exps: &[u32]) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for (b, &e) in self.elems.iter().zip(exps) {
            if e > 0 {
                acc = &acc * &b.pow(e);
            }
        }
        acc
    }
}

/// `numerator / ∏ basisᵢ^expsᵢ`, kept with no basis factor dividing the
/// numerator.
#[derive(Clone, Debug)]
pub struct LocPoly {
    num: Poly,
    basis: Basis,
    exps: Vec<u32>,
}

impl LocPoly {
    pub fn new(num: Poly, basis: &Basis, exps: Vec<u32>) -> Result<LocPoly, AlgebraError> {
        if !same_vars(num.ring(), basis.ring()) {
            return Err(AlgebraError::RingMismatch(num.ring().to_string(), basis.ring().to_string()));
        }
        if exps.len() != basis.len() {
            return Err(AlgebraError::ArityMismatch { expected: basis.len(), found: exps.len() });
        }
        Ok(LocPoly::normalized(num, basis.clone(), exps))
    }

    pub fn from_poly(p: Poly, basis: &Basis) -> LocPoly {
        assert!(same_vars(p.ring(), basis.ring()), "ring mismatch");
        LocPoly { num: p, basis: basis.clone(), exps: vec![0; basis.len()] }
    }

    pub fn constant(basis: &Basis, c: Golden) -> LocPoly {
        LocPoly::from_poly(Poly::constant(basis.ring(), c), basis)
    }

    /// `1 / basisᵢ^e`
    pub fn basis_inverse(basis: &Basis, i: usize, e: u32) -> LocPoly {
        let mut exps = vec![0; basis.len()];
        exps[i] = e;
        LocPoly::normalized(Poly::one(basis.ring()), basis.clone(), exps)
    }

    fn normalized(mut num: Poly, basis: Basis, mut exps: Vec<u32>) -> LocPoly {
        if num.is_zero() {
            exps.iter_mut().for_each(|e| *e = 0);
            return LocPoly { num, basis, exps };
        }
        for i in 0..basis.len() {
            if exps[i] == 0 {
                continue;
            }
            if let Some(v) = basis.bare_var[i] {
                let k = num.terms().iter().map(|(m, _)| m.exp(v)).min().unwrap_or(0).min(exps[i]);
                if k > 0 {
                    let shift = Mono::var(v, k);
                    let terms = num.terms().iter().map(|(m, c)| (m.div(shift).expect("divisible"), c.clone())).collect();
                    num = Poly::from_terms(num.ring(), terms);
                    exps[i] -= k;
                }
                continue;
            }
            while exps[i] > 0 {
                match num.div_exact(&basis.elems[i]).expect("same ring") {
                    Ok(q) => {
                        num = q;
                        exps[i] -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        LocPoly { num, basis, exps }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn ring(&self) -> &Ring {
        self.basis.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value when no denominator remains.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.exps.iter().all(|&e| e == 0).then_some(&self.num)
    }

    pub fn denominator(&self) -> Poly {
        self.basis.product(&self.exps)
    }

    fn check_basis(&self, o: &LocPoly) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.basis, &o.basis) || self.basis == o.basis {
            Ok(())
        } else {
            Err(AlgebraError::BasisMismatch)
        }
    }

    /// Numerators of both operands brought to the common denominator.
    fn common(&self, o: &LocPoly) -> (Poly, Poly, Vec<u32>) {
        let exps: Vec<u32> = self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect();
        let lift = |x: &LocPoly| {
            let extra: Vec<u32> = exps.iter().zip(&x.exps).map(|(e, f)| e - f).collect();
            &x.num * &self.basis.product(&extra)
        };
        (lift(self), lift(o), exps)
    }

    pub fn try_add(&self, o: &LocPoly) -> Result<LocPoly, AlgebraError> {
        self.check_basis(o)?;
        let (a, b, exps) = self.common(o);
        Ok(LocPoly::normalized(&a + &b, self.basis.clone(), exps))
    }

    pub fn try_sub(&self, o: &LocPoly) -> Result<LocPoly, AlgebraError> {
        self.check_basis(o)?;
        let (a, b, exps) = self.common(o);
        Ok(LocPoly::normalized(&a - &b, self.basis.clone(), exps))
    }

    pub fn try_mul(&self, o: &LocPoly) -> Result<LocPoly, AlgebraError> {
        self.check_basis(o)?;
        let exps = self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect();
        Ok(LocPoly::normalized(&self.num * &o.num, self.basis.clone(), exps))
    }

    pub fn mul_poly(&self, p: &Poly) -> LocPoly {
        LocPoly::normalized(&self.num * p, self.basis.clone(), self.exps.clone())
    }

    pub fn scale(&self, c: &Golden) -> LocPoly {
        LocPoly { num: self.num.scale(c), basis: self.basis.clone(), exps: self.exps.clone() }
            .zero_fixed()
    }

    fn zero_fixed(mut self) -> LocPoly {
        if self.num.is_zero() {
            self.exps.iter_mut().for_each(|e| *e = 0);
        }
        self
    }

    pub fn pow(&self, e: u32) -> LocPoly {
        let num = self.num.pow(e);
        let exps = self.exps.iter().map(|x| x * e).collect();
        LocPoly { num, basis: self.basis.clone(), exps }
    }

    /// Inverse when the numerator is a constant times a product of basis
    /// elements.
    pub fn try_inverse(&self) -> Result<LocPoly, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut rest = self.num.clone();
        let mut up = vec![0u32; self.basis.len()];
        for (i, b) in self.basis.elems.iter().enumerate() {
            while !rest.is_constant() {
                match rest.div_exact(b).expect("same ring") {
                    Ok(q) => {
                        rest = q;
                        up[i] += 1;
                    }
                    Err(_) => break,
                }
            }
        }
        let c = rest.as_constant().ok_or_else(|| AlgebraError::NotInvertible(self.num.canonical()))?;
        let cinv = c.inv().ok_or(AlgebraError::DivisionByZero)?;
        let num = self.basis.product(&self.exps).scale(&cinv);
        Ok(LocPoly::normalized(num, self.basis.clone(), up))
    }

    pub fn diff(&self, var: usize) -> LocPoly {
        let basis = &self.basis;
        let mut acc = LocPoly { num: self.num.diff(var), basis: basis.clone(), exps: self.exps.clone() };
        for (i, b) in basis.elems.iter().enumerate() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            let db = b.diff(var);
            if db.is_zero() {
                continue;
            }
            let mut exps = self.exps.clone();
            exps[i] += 1;
            let num = (&self.num * &db).scale(&Golden::from_int(-(e as i64)));
            let term = LocPoly { num, basis: basis.clone(), exps };
            acc = acc.add_raw(&term);
        }
        LocPoly::normalized(acc.num, acc.basis, acc.exps)
    }

    /// Sum without the normalization pass.
    fn add_raw(&self, o: &LocPoly) -> LocPoly {
        let (a, b, exps) = self.common(o);
        LocPoly { num: &a + &b, basis: self.basis.clone(), exps }
    }

    /// Substitutes images (all over one target basis) for the variables.
    /// Source denominators must become invertible in the target.
    pub fn compose(&self, images: &[LocPoly]) -> Result<LocPoly, AlgebraError> {
        let Some(first) = images.first() else {
            return Err(AlgebraError::ArityMismatch { expected: self.ring().nvars(), found: 0 });
        };
        if images.len() != self.ring().nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.ring().nvars(), found: images.len() });
        }
        for im in images {
            first.check_basis(im)?;
        }
        let one = LocPoly::constant(&first.basis, Golden::one());
        let num = compose(&self.num, images, &one);
        let mut acc = num;
        for (i, b) in self.basis.elems.iter().enumerate() {
            if self.exps[i] == 0 {
                continue;
            }
            let bi = compose(b, images, &one).try_inverse()?;
            acc = acc.try_mul(&bi.pow(self.exps[i]))?;
        }
        Ok(acc)
    }

    /// Re-expresses over another basis of the same ring, which must make
    /// every current denominator invertible.
    pub fn rebase(&self, target: &Basis) -> Result<LocPoly, AlgebraError> {
        if !same_vars(self.ring(), target.ring()) {
            return Err(AlgebraError::RingMismatch(self.ring().to_string(), target.ring().to_string()));
        }
        let mut acc = LocPoly::from_poly(self.num.clone(), target);
        for (i, b) in self.basis.elems.iter().enumerate() {
            if self.exps[i] > 0 {
                let inv = LocPoly::from_poly(b.clone(), target).try_inverse()?;
                acc = acc.try_mul(&inv.pow(self.exps[i]))?;
            }
        }
        Ok(acc)
    }

    /// Exact value, or `None` when a denominator vanishes.
    pub fn eval(&self, point: &[Golden]) -> Option<Golden> {
        let d = self.denominator().eval(point);
        let inv = d.inv()?;
        Some(&self.num.eval(point) * &inv)
    }

    pub fn conj(&self) -> LocPoly {
        LocPoly { num: self.num.conj(), basis: self.basis.clone(), exps: self.exps.clone() }
    }
}

impl PartialEq for LocPoly {
    fn eq(&self, o: &LocPoly) -> bool {
        if self.check_basis(o).is_err() {
            return false;
        }
        let (a, b, _) = self.common(o);
        a == b
    }
}

impl fmt::Display for LocPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.as_poly().is_some() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        let mut first = true;
        for (b, &e) in self.basis.elems.iter().zip(&self.exps) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "({b})")?;
            } else {
                write!(f, "({b})^{e}")?;
            }
        }
        f.write_str(")")
    }
}

impl Algebra for LocPoly {
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("basis mismatch")
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("basis mismatch")
    }
    fn scale(&self, c: &Golden) -> Self {
        LocPoly::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        LocPoly::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::VarRing;
    use crate::algebra::text::parse_poly;

    fn setup() -> (Ring, Basis) {
        let r = VarRing::of(&["t", "z"]);
        let d = parse_poly("t+4*z^3", &r).unwrap();
        let w = Poly::var(&r, "z").unwrap();
        let basis = DenomBasis::new(&r, vec![d, w]).unwrap();
        (r, basis)
    }

    #[test]
    fn normalization_cancels_basis_factors() {
        let (r, basis) = setup();
        let num = parse_poly("(t+4*z^3)^2*z^3*(t-1)", &r).unwrap();
        let l = LocPoly::new(num, &basis, vec![1, 2]).unwrap();
        assert_eq!(l.exps(), &[0, 0]);
        assert_eq!(l.numerator(), &parse_poly("(t+4*z^3)*z*(t-1)", &r).unwrap());
    }

    #[test]
    fn representation_independence() {
        let (r, basis) = setup();
        let a = LocPoly::new(parse_poly("t^2+z", &r).unwrap(), &basis, vec![1, 0]).unwrap();
        let raw = LocPoly {
            num: parse_poly("(t^2+z)*(t+4*z^3)", &r).unwrap(),
            basis: basis.clone(),
            exps: vec![2, 0],
        };
        assert_eq!(a, raw);
    }

    #[test]
    fn inverse_and_quotient_rule() {
        let (r, basis) = setup();
        let d = LocPoly::from_poly(parse_poly("3*z^2*(t+4*z^3)", &r).unwrap(), &basis);
        let inv = d.try_inverse().unwrap();
        assert_eq!(inv.try_mul(&d).unwrap(), LocPoly::constant(&basis, Golden::one()));
        assert!(LocPoly::from_poly(parse_poly("t+1", &r).unwrap(), &basis).try_inverse().is_err());
        // d/dt of 1/(t+4z^3) = -1/(t+4z^3)^2
        let x = LocPoly::basis_inverse(&basis, 0, 1);
        let dx = x.diff(0);
        let expect = LocPoly::basis_inverse(&basis, 0, 2).scale(&Golden::from_int(-1));
        assert_eq!(dx, expect);
    }

    #[test]
    fn localized_composition() {
        let (r, basis) = setup();
        let src = VarRing::of(&["a"]);
        let sb = DenomBasis::new(&src, vec![Poly::var(&src, "a").unwrap()]).unwrap();
        // 1/a with a -> z*(t+4z^3)
        let f = LocPoly::basis_inverse(&sb, 0, 1);
        let img = LocPoly::from_poly(parse_poly("z*(t+4*z^3)", &r).unwrap(), &basis);
        let out = f.compose(&[img]).unwrap();
        assert_eq!(out.exps(), &[1, 1]);
        assert!(out.numerator().is_constant());
    }
}
