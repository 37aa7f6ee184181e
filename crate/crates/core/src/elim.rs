//! Exact Gaussian elimination and the routines built directly on it.
//!
//! Plain rational elimination with canonical reduction at every step. The
//! matrices handled here are small (n ≤ ~32 for the parametrized systems);
//! if larger inputs ever show up, a fraction-free (Bareiss) pass over the
//! cleared-denominator integer matrix is the place to swap in.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

/// Result of [`eliminate`]: `transform · m = rref`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub rref: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub transform: ExactMatrix,
}

/// In-place reduction to reduced row echelon form, choosing pivots only in
/// columns `< pivot_cols`. Returns the pivot columns.
fn reduce(m: &mut [Vec<Scalar>], pivot_cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        if !inv.is_one() {
            for v in m[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_rows(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Row-reduces `m`, tracking the accumulated row operations.
pub fn eliminate(m: &ExactMatrix) -> Elimination {
    let (rows, cols) = m.shape();
    let aug = m.hstack(&ExactMatrix::identity(rows)).expect("same row count");
    let mut work = to_rows(&aug);
    let pivots = reduce(&mut work, cols);
    let full = ExactMatrix::from_vec(rows, cols + rows, work.into_iter().flatten().collect());
    Elimination {
        rref: full.block(0, rows, 0, cols),
        rank: pivots.len(),
        pivots,
        transform: full.block(0, rows, cols, cols + rows),
    }
}

/// Reduced row echelon form and pivot columns, without the transform.
pub fn rref(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let mut work = to_rows(m);
    let pivots = reduce(&mut work, m.cols());
    (
        ExactMatrix::from_vec(m.rows(), m.cols(), work.into_iter().flatten().collect()),
        pivots,
    )
}

pub fn rank(m: &ExactMatrix) -> usize {
    rref(m).1.len()
}

/// Solves `a · x = b`. Free variables are fixed to zero; `None` when the
/// system is inconsistent.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "solve",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let n = a.cols();
    let mut work = to_rows(&a.hstack(b)?);
    let pivots = reduce(&mut work, n);
    let r = pivots.len();
    if work[r..].iter().any(|row| row[n..].iter().any(|v| !v.is_zero())) {
        return Ok(None);
    }
    let mut x = ExactMatrix::zeros(n, b.cols());
    for (k, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, work[k][n + j].clone());
        }
    }
    Ok(Some(x))
}

/// `solve` and `kernel` from a single elimination pass.
pub(crate) fn solve_with_kernel(a: &ExactMatrix, b: &ExactMatrix) -> Option<(ExactMatrix, ExactMatrix)> {
    let n = a.cols();
    let mut work = to_rows(&a.hstack(b).expect("row counts agree"));
    let pivots = reduce(&mut work, n);
    let r = pivots.len();
    if work[r..].iter().any(|row| row[n..].iter().any(|v| !v.is_zero())) {
        return None;
    }
    let mut x = ExactMatrix::zeros(n, b.cols());
    for (k, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, work[k][n + j].clone());
        }
    }
    let red = ExactMatrix::from_fn(a.rows(), n, |i, j| work[i][j].clone());
    Some((x, kernel_from_rref(&red, &pivots)))
}

/// Columns form a basis of `{v : m·v = 0}`; `cols × (cols − rank)`.
pub fn kernel(m: &ExactMatrix) -> ExactMatrix {
    let (red, pivots) = rref(m);
    kernel_from_rref(&red, &pivots)
}

fn kernel_from_rref(red: &ExactMatrix, pivots: &[usize]) -> ExactMatrix {
    let n = red.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut k = ExactMatrix::zeros(n, free.len());
    for (j, &fc) in free.iter().enumerate() {
        k.set(fc, j, Scalar::one());
        for (r, &p) in pivots.iter().enumerate() {
            let v = red.get(r, fc);
            if !v.is_zero() {
                k.set(p, j, -v);
            }
        }
    }
    k
}

/// Two-sided inverse of a square matrix, `None` when singular.
pub fn inverse(m: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    m.require_square("inverse")?;
    if rank(m) < m.rows() {
        return Ok(None);
    }
    solve(m, &ExactMatrix::identity(m.rows()))
}

/// `m = f · g` with `f` of full column rank and `g` of full row rank.
///
/// `f` is the pivot columns of `m` and `g` the nonzero rows of its reduced
/// echelon form. A zero matrix yields `rows × 0` and `0 × cols` factors.
pub fn full_rank_factorization(m: &ExactMatrix) -> (ExactMatrix, ExactMatrix) {
    let (red, pivots) = rref(m);
    let r = pivots.len();
    (m.select_columns(&pivots), red.block(0, r, 0, m.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_matrix;

    fn m(s: &str) -> ExactMatrix {
        parse_matrix(s).unwrap()
    }

    fn e(i: usize, j: usize) -> ExactMatrix {
        ExactMatrix::unit(4, 4, i - 1, j - 1)
    }

    #[test]
    fn transform_reproduces_rref() {
        let a = m("1 2 3 / 2 4 6 / 1 0 0+1i");
        let el = eliminate(&a);
        assert_eq!(&el.transform * &a, el.rref);
        assert_eq!(el.rank, 2);
        assert_eq!(el.pivots, vec![0, 1]);
        assert_eq!(eliminate(&ExactMatrix::identity(4)).rank, 4);
    }

    #[test]
    fn ranks_of_matrix_units() {
        let c = &(&e(1, 3) + &e(1, 4)) + &e(2, 4);
        assert_eq!(rank(&c), 2);
        assert_eq!(rank(&(&e(1, 3) + &e(2, 4))), 2);
        assert_eq!(rank(&ExactMatrix::zeros(3, 5)), 0);
    }

    #[test]
    fn solve_cases() {
        let b = m("1 2 / 3 4");
        assert_eq!(solve(&ExactMatrix::identity(2), &b).unwrap().unwrap(), b);

        let a = e(1, 3);
        let x = solve(&a, &a).unwrap().unwrap();
        assert_eq!(&a * &x, a);

        assert!(solve(&ExactMatrix::zeros(2, 2), &b).unwrap().is_none());
        assert!(solve(&ExactMatrix::zeros(3, 2), &b).is_err());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m("1 2 3 4 / 2 4 6 8 / 0 1 0 0+1i");
        let k = kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        assert_eq!(rank(&k), 2);
    }

    #[test]
    fn inverse_and_singular() {
        let a = m("2 0+1i / 0 1");
        let inv = inverse(&a).unwrap().unwrap();
        assert_eq!(&a * &inv, ExactMatrix::identity(2));
        assert!(inverse(&m("1 2 / 2 4")).unwrap().is_none());
        assert!(inverse(&m("1 2 3 / 2 4 6")).is_err());
    }

    #[test]
    fn factorization_edge_cases() {
        let (f, g) = full_rank_factorization(&ExactMatrix::identity(3));
        assert_eq!(f, ExactMatrix::identity(3));
        assert_eq!(g, ExactMatrix::identity(3));

        let (f, g) = full_rank_factorization(&ExactMatrix::zeros(2, 3));
        assert_eq!(f.shape(), (2, 0));
        assert_eq!(g.shape(), (0, 3));
        assert_eq!(&f * &g, ExactMatrix::zeros(2, 3));
    }
}
