//! Variable rings and packed monomials.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::error::AlgebraError;
use super::golden::{fmt_rat, Rat};

/// Maximum number of variables a ring may carry.
pub const MAX_VARS: usize = 8;
const BITS: u32 = 16;
const MASK: u128 = (1 << BITS) - 1;

/// An ordered list of variable names with optional rational weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarRing {
    names: Vec<String>,
    weights: Option<Vec<Rat>>,
}

pub type Ring = Arc<VarRing>;

impl VarRing {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring, AlgebraError> {
        Self::build(names, None)
    }

    pub fn weighted<S: AsRef<str>>(names: &[S], weights: Vec<Rat>) -> Result<Ring, AlgebraError> {
        Self::build(names, Some(weights))
    }

    fn build<S: AsRef<str>>(names: &[S], weights: Option<Vec<Rat>>) -> Result<Ring, AlgebraError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        if let Some(w) = &weights {
            if w.len() != names.len() {
                return Err(AlgebraError::ArityMismatch { expected: names.len(), found: w.len() });
            }
            if w.iter().any(|x| !x.is_positive()) {
                return Err(AlgebraError::NonPositiveWeight);
            }
        }
        Ok(Arc::new(VarRing { names, weights }))
    }

    /// Ring without weights; panics on invalid names. Intended for the fixed
    /// rings built inside the crate.
    pub fn of(names: &[&str]) -> Ring {
        Self::new(names).expect("valid ring")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn weights(&self) -> Option<&[Rat]> {
        self.weights.as_deref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Same ring with different (or no) weights.
    pub fn with_weights(&self, weights: Option<Vec<Rat>>) -> Result<Ring, AlgebraError> {
        Self::build(&self.names, weights)
    }
}

impl fmt::Display for VarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(","))?;
        if let Some(w) = &self.weights {
            let ws: Vec<String> = w.iter().map(fmt_rat).collect();
            write!(f, " weights [{}]", ws.join(","))?;
        }
        Ok(())
    }
}

/// Whether two ring handles describe the same variables (weights ignored).
pub fn same_vars(a: &VarRing, b: &VarRing) -> bool {
    std::ptr::eq(a, b) || a.names == b.names
}

/// Exponent vector packed into 16-bit lanes, variable 0 in the most
/// significant lane, so that integer comparison of two monomials of equal
/// total degree is lexicographic comparison.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Mono(pub u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    #[inline]
    fn shift(i: usize) -> u32 {
        BITS * (MAX_VARS as u32 - 1 - i as u32)
    }

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS);
        let mut m = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!((e as u128) <= MASK, "exponent overflow");
            m |= (e as u128) << Self::shift(i);
        }
        Mono(m)
    }

    pub fn var(i: usize, e: u32) -> Mono {
        assert!((e as u128) <= MASK, "exponent overflow");
        Mono((e as u128) << Self::shift(i))
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & MASK) as u32
    }

    pub fn exps(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    /// Product of monomials. Lanes must not overflow; callers bound
    /// exponents beforehand.
    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        Mono(self.0 + o.0)
    }

    /// Quotient when `o` divides `self`.
    pub fn div(self, o: Mono) -> Option<Mono> {
        if self.divisible_by(o) {
            Some(Mono(self.0 - o.0))
        } else {
            None
        }
    }

    pub fn divisible_by(self, o: Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) >= o.exp(i))
    }

    pub fn with_exp(self, i: usize, e: u32) -> Mono {
        let s = Self::shift(i);
        Mono((self.0 & !(MASK << s)) | ((e as u128) << s))
    }

    /// Weighted degree under the given weights.
    pub fn weighted_degree(self, weights: &[Rat]) -> Rat {
        let mut d = Rat::zero();
        for (i, w) in weights.iter().enumerate() {
            let e = self.exp(i);
            if e > 0 {
                d += w * Rat::from_integer(e.into());
            }
        }
        d
    }

    /// Graded-lex sort key: larger keys come first in canonical order.
    #[inline]
    pub fn grlex_key(self) -> (u32, u128) {
        (self.degree(), self.0)
    }

    pub fn render(self, ring: &VarRing) -> String {
        let mut parts = Vec::new();
        for (i, name) in ring.names().iter().enumerate() {
            match self.exp(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trip() {
        let m = Mono::from_exps(&[3, 0, 210, 7]);
        assert_eq!(m.exps(4), vec![3, 0, 210, 7]);
        assert_eq!(m.degree(), 220);
        let n = Mono::from_exps(&[1, 2, 0, 0]);
        assert_eq!(m.mul(n).exps(4), vec![4, 2, 210, 7]);
        assert_eq!(m.mul(n).div(n), Some(m));
        assert_eq!(n.div(m), None);
    }

    #[test]
    fn packed_order_is_lex() {
        let a = Mono::from_exps(&[1, 0, 5]);
        let b = Mono::from_exps(&[0, 9, 9]);
        assert!(a > b);
    }

    #[test]
    fn ring_rejects_duplicates_and_bad_weights() {
        assert!(VarRing::new(&["x", "x"]).is_err());
        assert!(VarRing::weighted(&["x"], vec![Rat::zero()]).is_err());
        let r = VarRing::of(&["u1", "u2"]);
        assert_eq!(r.var_index("u2").unwrap(), 1);
        assert!(r.var_index("u3").is_err());
    }
}
