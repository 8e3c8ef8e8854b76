//! Unexpanded expression graphs over polynomials.
//!
//! Large identities (degree 200 and more after substitution) are checked by
//! evaluating both sides at sample points without ever expanding them; the
//! same graph can be expanded exactly when that is affordable.

use std::sync::Arc;

use super::compose::Algebra;
use super::error::AlgebraError;
use super::golden::Golden;
use super::locpoly::{Basis, DenomBasis, LocPoly};
use super::modular::{BadPoint, ModCtx, ModPoly};
use super::poly::Poly;
use super::ring::{same_vars, Ring};

#[derive(Clone, Debug)]
pub enum Formula {
    Poly(Arc<Poly>),
    Loc(Arc<LocPoly>),
    /// Outer expression evaluated at the values of the inner ones.
    Compose(Arc<Formula>, Vec<Formula>),
    Sum(Vec<Formula>),
    Mul(Vec<Formula>),
    Scale(Golden, Arc<Formula>),
    Pow(Arc<Formula>, u32),
}

impl From<Poly> for Formula {
    fn from(p: Poly) -> Formula {
        Formula::Poly(Arc::new(p))
    }
}

impl From<&Poly> for Formula {
    fn from(p: &Poly) -> Formula {
        Formula::Poly(Arc::new(p.clone()))
    }
}

impl From<LocPoly> for Formula {
    fn from(p: LocPoly) -> Formula {
        Formula::Loc(Arc::new(p))
    }
}

impl Formula {
    pub fn compose(outer: impl Into<Formula>, inner: Vec<Formula>) -> Formula {
        Formula::Compose(Arc::new(outer.into()), inner)
    }

    pub fn sub(a: Formula, b: Formula) -> Formula {
        Formula::Sum(vec![a, b.scaled(Golden::from_int(-1))])
    }

    pub fn scaled(self, c: Golden) -> Formula {
        Formula::Scale(c, Arc::new(self))
    }

    pub fn pow(self, e: u32) -> Formula {
        Formula::Pow(Arc::new(self), e)
    }

    /// Ring of the input variables.
    pub fn ring(&self) -> Ring {
        match self {
            Formula::Poly(p) => p.ring().clone(),
            Formula::Loc(l) => l.ring().clone(),
            Formula::Compose(_, inner) => inner[0].ring(),
            Formula::Sum(xs) | Formula::Mul(xs) => xs[0].ring(),
            Formula::Scale(_, x) | Formula::Pow(x, _) => x.ring(),
        }
    }

    /// Bound on the total degree of the numerator of the difference of two
    /// formulas, used for the Schwartz–Zippel soundness estimate.
    pub fn degree_bound(&self) -> u64 {
        match self {
            Formula::Poly(p) => p.total_degree().unwrap_or(0) as u64,
            Formula::Loc(l) => {
                let den: u64 = l
                    .basis()
                    .elems()
                    .iter()
                    .zip(l.exps())
                    .map(|(b, &e)| b.total_degree().unwrap_or(0) as u64 * e as u64)
                    .sum();
                l.numerator().total_degree().unwrap_or(0) as u64 + den
            }
            Formula::Compose(outer, inner) => {
                outer.degree_bound() * inner.iter().map(|f| f.degree_bound()).max().unwrap_or(0).max(1)
            }
            Formula::Sum(xs) => xs.iter().map(|f| f.degree_bound()).sum::<u64>(),
            Formula::Mul(xs) => xs.iter().map(|f| f.degree_bound()).sum(),
            Formula::Scale(_, x) => x.degree_bound(),
            Formula::Pow(x, e) => x.degree_bound() * *e as u64,
        }
    }

    /// Exact value at a point; `None` when a denominator vanishes.
    pub fn eval(&self, point: &[Golden]) -> Option<Golden> {
        match self {
            Formula::Poly(p) => Some(p.eval(point)),
            Formula::Loc(l) => l.eval(point),
            Formula::Compose(outer, inner) => {
                let vals = inner.iter().map(|f| f.eval(point)).collect::<Option<Vec<_>>>()?;
                outer.eval(&vals)
            }
            Formula::Sum(xs) => {
                let mut acc = Golden::zero();
                for x in xs {
                    acc += &x.eval(point)?;
                }
                Some(acc)
            }
            Formula::Mul(xs) => {
                let mut acc = Golden::one();
                for x in xs {
                    acc *= &x.eval(point)?;
                }
                Some(acc)
            }
            Formula::Scale(c, x) => Some(c * &x.eval(point)?),
            Formula::Pow(x, e) => Some(x.eval(point)?.pow(*e)),
        }
    }

    /// Reduces all coefficients modulo `ctx.p` for repeated evaluation.
    pub fn compile(&self, ctx: &ModCtx) -> Result<ModFormula, BadPoint> {
        Ok(match self {
            Formula::Poly(p) => ModFormula::Poly(ModPoly::reduce(p, ctx)?),
            Formula::Loc(l) => {
                let dens = l
                    .basis()
                    .elems()
                    .iter()
                    .zip(l.exps())
                    .filter(|(_, &e)| e > 0)
                    .map(|(b, &e)| Ok((ModPoly::reduce(b, ctx)?, e)))
                    .collect::<Result<Vec<_>, BadPoint>>()?;
                ModFormula::Loc(ModPoly::reduce(l.numerator(), ctx)?, dens)
            }
            Formula::Compose(outer, inner) => ModFormula::Compose(
                Box::new(outer.compile(ctx)?),
                inner.iter().map(|f| f.compile(ctx)).collect::<Result<_, _>>()?,
            ),
            Formula::Sum(xs) => ModFormula::Sum(xs.iter().map(|f| f.compile(ctx)).collect::<Result<_, _>>()?),
            Formula::Mul(xs) => ModFormula::Mul(xs.iter().map(|f| f.compile(ctx)).collect::<Result<_, _>>()?),
            Formula::Scale(c, x) => ModFormula::Scale(ctx.reduce(c)?, Box::new(x.compile(ctx)?)),
            Formula::Pow(x, e) => ModFormula::Pow(Box::new(x.compile(ctx)?), *e),
        })
    }

    /// Full exact expansion.
    pub fn expand(&self) -> Result<LocPoly, AlgebraError> {
        match self {
            Formula::Poly(p) => Ok(LocPoly::from_poly((**p).clone(), &DenomBasis::trivial(p.ring()))),
            Formula::Loc(l) => Ok((**l).clone()),
            Formula::Compose(outer, inner) => {
                let outer = outer.expand()?;
                let mut vals = inner.iter().map(|f| f.expand()).collect::<Result<Vec<_>, _>>()?;
                let basis = widest_basis(&vals)?;
                for v in vals.iter_mut() {
                    *v = lift(v, &basis)?;
                }
                outer.compose(&vals)
            }
            Formula::Sum(xs) | Formula::Mul(xs) => {
                let vals = xs.iter().map(|f| f.expand()).collect::<Result<Vec<_>, _>>()?;
                let basis = widest_basis(&vals)?;
                let is_sum = matches!(self, Formula::Sum(_));
                let mut acc: Option<LocPoly> = None;
                for v in &vals {
                    let v = lift(v, &basis)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) if is_sum => a.try_add(&v)?,
                        Some(a) => a.try_mul(&v)?,
                    });
                }
                acc.ok_or_else(|| AlgebraError::SizeMismatch("empty sum or product".into()))
            }
            Formula::Scale(c, x) => Ok(x.expand()?.scale(c)),
            Formula::Pow(x, e) => Ok(x.expand()?.pow(*e)),
        }
    }

    /// Expansion that must be a polynomial.
    pub fn expand_poly(&self) -> Result<Poly, AlgebraError> {
        let l = self.expand()?;
        l.as_poly().cloned().ok_or_else(|| AlgebraError::NotDivisible(l.denominator().canonical()))
    }
}

/// Basis shared by all values: the unique nonempty one, or the trivial one.
fn widest_basis(vals: &[LocPoly]) -> Result<Basis, AlgebraError> {
    let mut chosen: Option<&Basis> = None;
    for v in vals {
        if v.basis().is_empty() {
            continue;
        }
        match chosen {
            None => chosen = Some(v.basis()),
            Some(b) if **b == **v.basis() => {}
            Some(_) => return Err(AlgebraError::BasisMismatch),
        }
    }
    match chosen {
        Some(b) => Ok(b.clone()),
        None => Ok(vals[0].basis().clone()),
    }
}

fn lift(v: &LocPoly, basis: &Basis) -> Result<LocPoly, AlgebraError> {
    if **v.basis() == **basis {
        return Ok(v.clone());
    }
    if !same_vars(v.ring(), basis.ring()) {
        return Err(AlgebraError::RingMismatch(v.ring().to_string(), basis.ring().to_string()));
    }
    v.rebase(basis)
}

/// A [`Formula`] with coefficients reduced modulo one prime.
#[derive(Clone, Debug)]
pub enum ModFormula {
    Poly(ModPoly),
    Loc(ModPoly, Vec<(ModPoly, u32)>),
    Compose(Box<ModFormula>, Vec<ModFormula>),
    Sum(Vec<ModFormula>),
    Mul(Vec<ModFormula>),
    Scale(u64, Box<ModFormula>),
    Pow(Box<ModFormula>, u32),
}

impl ModFormula {
    pub fn eval(&self, point: &[u64], ctx: &ModCtx) -> Result<u64, BadPoint> {
        Ok(match self {
            ModFormula::Poly(p) => p.eval(point, ctx),
            ModFormula::Loc(num, dens) => {
                let mut d = 1u64;
                for (b, e) in dens {
                    d = ctx.mul(d, ctx.pow(b.eval(point, ctx), *e as u64));
                }
                let dinv = ctx.inv(d).ok_or(BadPoint)?;
                ctx.mul(num.eval(point, ctx), dinv)
            }
            ModFormula::Compose(outer, inner) => {
                let vals = inner.iter().map(|f| f.eval(point, ctx)).collect::<Result<Vec<_>, _>>()?;
                outer.eval(&vals, ctx)?
            }
            ModFormula::Sum(xs) => {
                let mut acc = 0;
                for x in xs {
                    acc = ctx.add(acc, x.eval(point, ctx)?);
                }
                acc
            }
            ModFormula::Mul(xs) => {
                let mut acc = 1;
                for x in xs {
                    acc = ctx.mul(acc, x.eval(point, ctx)?);
                }
                acc
            }
            ModFormula::Scale(c, x) => ctx.mul(*c, x.eval(point, ctx)?),
            ModFormula::Pow(x, e) => ctx.pow(x.eval(point, ctx)?, *e as u64),
        })
    }
}

impl Algebra for Formula {
    fn add(&self, o: &Self) -> Self {
        Formula::Sum(vec![self.clone(), o.clone()])
    }
    fn mul(&self, o: &Self) -> Self {
        Formula::Mul(vec![self.clone(), o.clone()])
    }
    fn scale(&self, c: &Golden) -> Self {
        self.clone().scaled(c.clone())
    }
    fn is_zero(&self) -> bool {
        false
    }
}
