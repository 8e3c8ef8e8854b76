//! Exact dense linear systems over Q(√5).

use thiserror::Error;

use super::golden::Golden;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system has rank {rank} < {unknowns} unknowns")]
    RankDeficient { rank: usize, unknowns: usize },
}

/// Unique solution of `A x = b` for an overdetermined system with full
/// column rank. Extra equations must be consistent.
pub fn solve(mut a: Vec<Vec<Golden>>, mut b: Vec<Golden>) -> Result<Vec<Golden>, SolveError> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r][c..].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let (btop, brest) = b.split_at_mut(r + 1);
        for (row, bi) in rest.iter_mut().zip(brest.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..cols {
                if !prow[k].is_zero() {
                    let d = &f * &prow[k];
                    row[k] -= &d;
                }
            }
            let d = &f * &btop[r];
            *bi -= &d;
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return Err(SolveError::Inconsistent);
    }
    if r < cols {
        return Err(SolveError::RankDeficient { rank: r, unknowns: cols });
    }
    let mut x = vec![Golden::zero(); cols];
    for i in (0..r).rev() {
        let c = pivots[i];
        let mut v = b[i].clone();
        for k in c + 1..cols {
            if !a[i][k].is_zero() {
                v -= &(&a[i][k] * &x[k]);
            }
        }
        x[c] = v;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> Golden {
        Golden::from_int(n)
    }

    #[test]
    fn solves_overdetermined_consistent_system() {
        let a = vec![vec![g(1), g(1)], vec![g(1), g(-1)], vec![g(2), g(0)]];
        let b = vec![g(3), g(1), g(4)];
        assert_eq!(solve(a, b).unwrap(), vec![g(2), g(1)]);
    }

    #[test]
    fn detects_inconsistency_and_rank_deficiency() {
        let a = vec![vec![g(1), g(1)], vec![g(1), g(1)]];
        assert_eq!(solve(a.clone(), vec![g(1), g(2)]), Err(SolveError::Inconsistent));
        assert!(matches!(solve(a, vec![g(1), g(1)]), Err(SolveError::RankDeficient { .. })));
    }
}
