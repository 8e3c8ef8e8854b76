//! Arithmetic modulo 62-bit primes in which 5 is a square, used for
//! randomized identity testing.
//!
//! Sample points come from xorshift64* (`x ^= x >> 12; x ^= x << 25;
//! x ^= x >> 27; out = x * 0x2545F4914F6CDD1D`) whose state is seeded by one
//! round of splitmix64, so every seed (including 0) is valid.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::golden::{Golden, Rat};
use super::poly::Poly;
use super::ring::Mono;

/// Fixed primes ≡ ±1 (mod 5), the three largest below 2⁶² with that property.
pub const PRIMES: [u64; 3] = [4611686018427387761, 4611686018427387751, 4611686018427387709];

/// A point at which some denominator vanishes modulo p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BadPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModCtx {
    pub p: u64,
    /// The smaller square root of 5.
    pub sqrt5: u64,
}

impl ModCtx {
    /// Context for `p`, or `None` if `p` is not an odd prime with 5 a square.
    pub fn new(p: u64) -> Option<ModCtx> {
        if p < 7 || p >= 1 << 62 || p % 2 == 0 || !is_prime(p) {
            return None;
        }
        let r = sqrt_mod(5, p)?;
        Some(ModCtx { p, sqrt5: r.min(p - r) })
    }

    pub fn standard() -> Vec<ModCtx> {
        PRIMES.iter().map(|&p| ModCtx::new(p).expect("fixed prime")).collect()
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        powmod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| powmod(a, self.p - 2, self.p))
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let mut r = n % &m;
        if r < BigInt::zero() {
            r += &m;
        }
        r.to_u64().expect("reduced")
    }

    pub fn reduce_rat(&self, r: &Rat) -> Result<u64, BadPoint> {
        let n = self.reduce_int(r.numer());
        let d = self.inv(self.reduce_int(r.denom())).ok_or(BadPoint)?;
        Ok(self.mul(n, d))
    }

    pub fn reduce(&self, x: &Golden) -> Result<u64, BadPoint> {
        let a = self.reduce_rat(&x.a)?;
        if x.b.is_zero() {
            return Ok(a);
        }
        let b = self.reduce_rat(&x.b)?;
        Ok(self.add(a, self.mul(b, self.sqrt5)))
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli–Shanks square root of `a` modulo an odd prime.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// xorshift64* generator.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        let mut z = seed.wrapping_add(0x9E3779B97F4A7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^= z >> 31;
        Rng { state: if z == 0 { 1 } else { z } }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in `[0, n)` by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// A polynomial with coefficients reduced modulo one prime.
#[derive(Clone, Debug)]
pub struct ModPoly {
    terms: Vec<(Mono, u64)>,
    degs: Vec<u32>,
}

impl ModPoly {
    pub fn reduce(f: &Poly, ctx: &ModCtx) -> Result<ModPoly, BadPoint> {
        let n = f.ring().nvars();
        let terms = f.terms().iter().map(|(m, c)| Ok((*m, ctx.reduce(c)?))).collect::<Result<Vec<_>, BadPoint>>()?;
        let degs = (0..n).map(|v| f.degree_in(v)).collect();
        Ok(ModPoly { terms, degs })
    }

    pub fn eval(&self, point: &[u64], ctx: &ModCtx) -> u64 {
        let tables: Vec<Vec<u64>> = self
            .degs
            .iter()
            .zip(point)
            .map(|(&d, &x)| {
                let mut t = Vec::with_capacity(d as usize + 1);
                t.push(1);
                for k in 1..=d as usize {
                    t.push(ctx.mul(t[k - 1], x));
                }
                t
            })
            .collect();
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (v, table) in tables.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t = ctx.mul(t, table[e as usize]);
                }
            }
            acc = ctx.add(acc, t);
        }
        acc
    }
}

/// Evaluates `f` at a point modulo `ctx.p`.
pub fn eval_mod(f: &Poly, point: &[u64], ctx: &ModCtx) -> Result<u64, BadPoint> {
    Ok(ModPoly::reduce(f, ctx)?.eval(point, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::golden::rat;
    use crate::algebra::ring::VarRing;

    #[test]
    fn fixed_primes_have_expected_square_roots() {
        let ctx = ModCtx::standard();
        assert_eq!(ctx[0].sqrt5, 276037557651519577);
        assert_eq!(ctx[1].sqrt5, 1111591874474287041);
        assert_eq!(ctx[2].sqrt5, 505889068530541980);
        for c in &ctx {
            assert_eq!(c.mul(c.sqrt5, c.sqrt5), 5);
        }
    }

    #[test]
    fn rejects_primes_where_five_is_not_square() {
        assert!(ModCtx::new(13).is_none());
        assert!(ModCtx::new(11).is_some());
        assert!(ModCtx::new(15).is_none());
    }

    #[test]
    fn evaluation_examples() {
        let ring = VarRing::of(&["u1", "u2"]);
        let f = &Poly::var(&ring, "u1").unwrap() + &Poly::var(&ring, "u2").unwrap();
        for ctx in ModCtx::standard() {
            assert_eq!(eval_mod(&f, &[2, 3], &ctx), Ok(5));
            let s = Poly::constant(&ring, Golden::sqrt5());
            assert_eq!(eval_mod(&s, &[7, 9], &ctx), Ok(ctx.sqrt5));
        }
        let ctx = ModCtx::new(11).unwrap();
        let bad = Poly::constant(&ring, Golden::from_rat(rat(1, 22)));
        assert_eq!(eval_mod(&bad, &[0, 0], &ctx), Err(BadPoint));
    }

    #[test]
    fn rng_is_reproducible_and_seed_zero_works() {
        let mut a = Rng::new(0);
        let mut b = Rng::new(0);
        let xs: Vec<u64> = (0..5).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..5).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().any(|&x| x != 0));
        let mut c = Rng::new(1);
        assert_ne!(c.next_u64(), xs[0]);
        for _ in 0..100 {
            let r = a.range(-9, 9);
            assert!((-9..=9).contains(&r));
        }
    }
}
