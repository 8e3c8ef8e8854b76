//! Substitution of ring elements into a polynomial by multivariate Horner
//! evaluation with cached powers.

use super::golden::Golden;
use super::poly::Poly;
use super::ring::Mono;

/// Commutative ring element that polynomials can be evaluated in.
pub trait Algebra: Clone {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `c · self`.
    fn scale(&self, c: &Golden) -> Self;
    fn is_zero(&self) -> bool;

    fn neg(&self) -> Self {
        self.scale(&Golden::from_int(-1))
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Algebra for Poly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Golden) -> Self {
        Poly::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl Algebra for Golden {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Golden) -> Self {
        self * c
    }
    fn is_zero(&self) -> bool {
        Golden::is_zero(self)
    }
}

/// Evaluates `f` with variable `i` replaced by `images[i]`; `one` is the
/// unit of the target algebra.
pub fn compose<T: Algebra>(f: &Poly, images: &[T], one: &T) -> T {
    assert_eq!(images.len(), f.ring().nvars());
    let mut terms: Vec<(Mono, Golden)> = f.terms().to_vec();
    if terms.is_empty() {
        return one.scale(&Golden::zero());
    }
    let mut cache = PowCache { images, powers: vec![Vec::new(); images.len()] };
    horner(&mut terms, 0, one, &mut cache)
}

struct PowCache<'a, T> {
    images: &'a [T],
    powers: Vec<Vec<T>>,
}

impl<T: Algebra> PowCache<'_, T> {
    /// `images[v]^e` for `e ≥ 1`.
    fn get(&mut self, v: usize, e: u32) -> T {
        let table = &mut self.powers[v];
        if table.is_empty() {
            table.push(self.images[v].clone());
        }
        while table.len() < e as usize {
            let next = table.last().expect("nonempty").mul(&self.images[v]);
            table.push(next);
        }
        table[e as usize - 1].clone()
    }
}

fn horner<T: Algebra>(terms: &mut [(Mono, Golden)], v: usize, one: &T, cache: &mut PowCache<'_, T>) -> T {
    let n = cache.images.len();
    if v == n {
        let mut c = Golden::zero();
        for (_, x) in terms.iter() {
            c += x;
        }
        return one.scale(&c);
    }
    terms.sort_by(|a, b| b.0.exp(v).cmp(&a.0.exp(v)));
    let mut acc: Option<T> = None;
    let mut prev = 0u32;
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0.exp(v);
        let mut end = start + 1;
        while end < terms.len() && terms[end].0.exp(v) == e {
            end += 1;
        }
        let inner = horner(&mut terms[start..end], v + 1, one, cache);
        acc = Some(match acc {
            None => inner,
            Some(a) => a.mul(&cache.get(v, prev - e)).add(&inner),
        });
        prev = e;
        start = end;
    }
    let acc = acc.expect("nonempty group");
    if prev > 0 {
        acc.mul(&cache.get(v, prev))
    } else {
        acc
    }
}
