//! Small dense matrices over Q(√5) and cofactor determinants.

use std::fmt;

use super::compose::Algebra;
use super::error::AlgebraError;
use super::golden::Golden;
use super::poly::Poly;
use super::ring::Ring;

/// Square matrix acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    n: usize,
    entries: Vec<Golden>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Golden>>) -> Result<Matrix, AlgebraError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::SizeMismatch(format!("matrix rows must all have length {n}")));
        }
        Ok(Matrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(n: usize) -> Matrix {
        let mut entries = vec![Golden::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Golden::one();
        }
        Matrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Golden {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Golden] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut entries = vec![Golden::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Matrix { n, entries }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        (0..e).fold(Matrix::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect();
        Matrix { n: self.n, entries }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Matrix { n, entries }
    }

    pub fn conj(&self) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(Golden::conj).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn trace(&self) -> Golden {
        let mut t = Golden::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn det(&self) -> Golden {
        let rows: Vec<Vec<Golden>> = (0..self.n).map(|i| self.row(i).to_vec()).collect();
        det(&rows)
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a: Vec<Vec<Golden>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, piv);
            let inv = a[rank][col].inv().expect("nonzero pivot");
            for r in 0..n {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] * &inv;
                    for c in col..n {
                        let d = &f * &a[rank][c];
                        a[r][c] -= &d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Canonical key: entries in row-major order, canonical text.
    pub fn key(&self) -> String {
        self.entries.iter().map(Golden::canonical).collect::<Vec<_>>().join(",")
    }

    /// Image of a row vector of polynomials: `(v·M)_j = Σᵢ vᵢ Mᵢⱼ`.
    pub fn act_row<T: Algebra>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|j| {
                let mut acc: Option<T> = None;
                for (i, vi) in v.iter().enumerate() {
                    let c = self.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let t = vi.scale(c);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.add(&t),
                    });
                }
                acc.unwrap_or_else(|| v[0].scale(&Golden::zero()))
            })
            .collect()
    }

    /// The linear substitution `u ↦ u·M` as polynomial images of the
    /// ring's variables.
    pub fn linear_images(&self, ring: &Ring) -> Vec<Poly> {
        let vars: Vec<Poly> = (0..ring.nvars()).map(|i| Poly::var_at(ring, i)).collect();
        self.act_row(&vars)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(Golden::canonical).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn det<T: Algebra>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    let cols: Vec<usize> = (0..n).collect();
    minor(m, 0, &cols)
}

fn minor<T: Algebra>(m: &[Vec<T>], row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc: Option<T> = None;
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = minor(m, row + 1, &rest);
        if sub.is_zero() {
            continue;
        }
        let term = m[row][c].mul(&sub);
        acc = Some(match acc {
            None if k % 2 == 0 => term,
            None => term.neg(),
            Some(a) if k % 2 == 0 => a.add(&term),
            Some(a) => a.sub(&term),
        });
    }
    acc.unwrap_or_else(|| m[row][cols[0]].scale(&Golden::zero()))
}

/// `det(∂fᵢ/∂x_{vars[j]})`.
pub fn jacobian_det(fs: &[Poly], vars: &[usize]) -> Result<Poly, AlgebraError> {
    if fs.len() != vars.len() || fs.is_empty() || fs.len() > 4 {
        return Err(AlgebraError::SizeMismatch(format!(
            "jacobian needs n functions in n variables with n <= 4, got {} and {}",
            fs.len(),
            vars.len()
        )));
    }
    let ring = fs[0].ring().clone();
    for f in fs {
        if f.ring().names() != ring.names() {
            return Err(AlgebraError::RingMismatch(f.ring().to_string(), ring.to_string()));
        }
    }
    if let Some(&v) = vars.iter().find(|&&v| v >= ring.nvars()) {
        return Err(AlgebraError::UnknownVariable(format!("#{v}")));
    }
    let m: Vec<Vec<Poly>> = fs.iter().map(|f| vars.iter().map(|&v| f.diff(v)).collect()).collect();
    Ok(det(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::VarRing;

    #[test]
    fn determinant_and_rank() {
        let m = Matrix::from_rows(vec![
            vec![Golden::from_int(2), Golden::from_int(1)],
            vec![Golden::from_int(4), Golden::from_int(2)],
        ])
        .unwrap();
        assert!(m.det().is_zero());
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::identity(3).det(), Golden::one());
        assert_eq!(Matrix::identity(4).rank(), 4);
    }

    #[test]
    fn jacobian_of_identity_and_swap() {
        let ring = VarRing::of(&["u1", "u2", "u3"]);
        let u: Vec<Poly> = (0..3).map(|i| Poly::var_at(&ring, i)).collect();
        assert_eq!(jacobian_det(&u, &[0, 1, 2]).unwrap(), Poly::one(&ring));
        let swapped = vec![u[1].clone(), u[0].clone(), u[2].clone()];
        assert_eq!(jacobian_det(&swapped, &[0, 1, 2]).unwrap(), Poly::constant(&ring, Golden::from_int(-1)));
        assert!(jacobian_det(&u[..2], &[0, 1, 2]).is_err());
    }

    #[test]
    fn row_action() {
        let ring = VarRing::of(&["u1", "u2"]);
        let swap = Matrix::from_rows(vec![
            vec![Golden::zero(), Golden::one()],
            vec![Golden::one(), Golden::zero()],
        ])
        .unwrap();
        let imgs = swap.linear_images(&ring);
        assert_eq!(imgs[0], Poly::var_at(&ring, 1));
        assert_eq!(imgs[1], Poly::var_at(&ring, 0));
    }
}
