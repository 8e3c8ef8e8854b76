//! Exact arithmetic in the real quadratic field Q(√5).
//!
//! Every coefficient in the crate is a [`Golden`] value `a + b·√5` with
//! arbitrary-precision rational parts. Rationals embed with `b = 0`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational. The invariants (reduced, positive
/// denominator, zero as `0/1`) are maintained by `num_rational`.
pub type Rat = num_rational::BigRational;

/// Builds `n/d` as a reduced rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `a + b·√5` of Q(√5).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Golden {
    pub a: Rat,
    pub b: Rat,
}

impl Golden {
    pub fn new(a: Rat, b: Rat) -> Self {
        Golden { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        Golden { a, b: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Golden::from_rat(rat_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Golden::from_rat(rat(n, d))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Golden::from_rat(Rat::from_integer(n))
    }

    /// √5
    pub fn sqrt5() -> Self {
        Golden { a: Rat::zero(), b: Rat::one() }
    }

    /// The golden ratio a = (1+√5)/2.
    pub fn phi() -> Self {
        Golden { a: rat(1, 2), b: rat(1, 2) }
    }

    /// Its Galois conjugate ā = (1−√5)/2.
    pub fn phi_bar() -> Self {
        Golden { a: rat(1, 2), b: rat(-1, 2) }
    }

    pub fn zero() -> Self {
        Golden::default()
    }

    pub fn one() -> Self {
        Golden::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugation √5 ↦ −√5.
    pub fn conj(&self) -> Self {
        Golden { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm a² − 5b².
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(5.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Golden { a: c.a / &n, b: c.b / &n })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Golden::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// Sign of the real number `a + b√5`.
    pub fn signum(&self) -> i32 {
        // compare a with -b√5 by squaring where signs agree
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = Rat::from_integer(5.into()) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    /// Canonical text: `n/d`, `n/d*r5` or `(n/d+n'/d'*r5)` when both parts
    /// are present.
    pub fn canonical(&self) -> String {
        if self.b.is_zero() {
            return fmt_rat(&self.a);
        }
        let bpart = format!("{}*r5", fmt_rat(&self.b));
        if self.a.is_zero() {
            return bpart;
        }
        let sep = if self.b.is_negative() { "" } else { "+" };
        format!("({}{}{})", fmt_rat(&self.a), sep, bpart)
    }
}

fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

impl fmt::Display for Golden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl From<i64> for Golden {
    fn from(n: i64) -> Self {
        Golden::from_int(n)
    }
}

impl From<Rat> for Golden {
    fn from(r: Rat) -> Self {
        Golden::from_rat(r)
    }
}

impl<'a> Add<&'a Golden> for &'a Golden {
    type Output = Golden;
    fn add(self, o: &Golden) -> Golden {
        Golden { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a Golden> for &'a Golden {
    type Output = Golden;
    fn sub(self, o: &Golden) -> Golden {
        Golden { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a Golden> for &'a Golden {
    type Output = Golden;
    fn mul(self, o: &Golden) -> Golden {
        if self.b.is_zero() && o.b.is_zero() {
            return Golden::from_rat(&self.a * &o.a);
        }
        let five = Rat::from_integer(5.into());
        Golden {
            a: &self.a * &o.a + five * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl<'a> Div<&'a Golden> for &'a Golden {
    type Output = Golden;
    fn div(self, o: &Golden) -> Golden {
        self * &o.inv().expect("division by zero in Q(sqrt5)")
    }
}

impl Add for Golden {
    type Output = Golden;
    fn add(self, o: Golden) -> Golden {
        &self + &o
    }
}

impl Sub for Golden {
    type Output = Golden;
    fn sub(self, o: Golden) -> Golden {
        &self - &o
    }
}

impl Mul for Golden {
    type Output = Golden;
    fn mul(self, o: Golden) -> Golden {
        &self * &o
    }
}

impl Div for Golden {
    type Output = Golden;
    fn div(self, o: Golden) -> Golden {
        &self / &o
    }
}

impl Neg for Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden { a: -self.a, b: -self.b }
    }
}

impl Neg for &Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl AddAssign<&Golden> for Golden {
    fn add_assign(&mut self, o: &Golden) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&Golden> for Golden {
    fn sub_assign(&mut self, o: &Golden) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&Golden> for Golden {
    fn mul_assign(&mut self, o: &Golden) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conj_of_phi() {
        assert_eq!(Golden::phi().conj(), Golden::phi_bar());
        assert_eq!(Golden::from_ratio(7, 3).conj(), Golden::from_ratio(7, 3));
    }

    #[test]
    fn conj_is_multiplicative_on_example() {
        let x = Golden::new(rat_int(1), rat_int(1));
        let y = Golden::new(rat_int(2), rat_int(-3));
        let xy = &x * &y;
        assert_eq!(xy, Golden::new(rat_int(-13), rat_int(-1)));
        assert_eq!(xy.conj(), Golden::new(rat_int(-13), rat_int(1)));
        assert_eq!(xy.conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn phi_satisfies_its_minimal_polynomial() {
        let p = Golden::phi();
        assert_eq!(&p * &p, &p + &Golden::one());
        assert_eq!(&p * &Golden::phi_bar(), Golden::from_int(-1));
    }

    #[test]
    fn inverse_and_norm() {
        let x = Golden::new(rat(3, 2), rat(-1, 7));
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
        assert!(Golden::zero().inv().is_none());
    }

    #[test]
    fn signum_of_irrationals() {
        assert_eq!(Golden::phi_bar().signum(), -1);
        assert_eq!(Golden::phi().signum(), 1);
        assert_eq!(Golden::new(rat_int(3), rat_int(-1)).signum(), 1);
        assert_eq!(Golden::new(rat_int(2), rat_int(-1)).signum(), -1);
    }

    #[test]
    fn canonical_text() {
        assert_eq!(Golden::phi().canonical(), "(1/2+1/2*r5)");
        assert_eq!(Golden::phi_bar().canonical(), "(1/2-1/2*r5)");
        assert_eq!(Golden::sqrt5().canonical(), "1*r5");
        assert_eq!(Golden::from_ratio(-7, 3).canonical(), "-7/3");
    }
}
