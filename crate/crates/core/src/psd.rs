//! Exact positive-semidefiniteness by recursive hermitian pivoting.

use crate::error::Result;
use crate::matrix::ExactMatrix;

/// Whether `m` is hermitian positive semidefinite.
///
/// Rejects on a non-real or negative diagonal entry, or a zero diagonal
/// entry whose row is not zero. Otherwise pivots on a positive diagonal
/// entry, replaces `m` by the Schur complement of that entry and repeats.
/// The empty matrix is PSD. Errors only on non-square input.
pub fn is_psd(m: &ExactMatrix) -> Result<bool> {
    m.require_square("is_psd")?;
    if !m.is_hermitian() {
        return Ok(false);
    }
    let mut cur = m.clone();
    loop {
        let n = cur.rows();
        let mut pivot = None;
        for i in 0..n {
            let d = cur.get(i, i);
            if !d.is_real() || d.is_negative_real() {
                return Ok(false);
            }
            if d.is_zero() {
                if cur.row(i).iter().any(|v| !v.is_zero()) {
                    return Ok(false);
                }
            } else if pivot.is_none() {
                pivot = Some(i);
            }
        }
        let Some(p) = pivot else {
            // Every diagonal entry is zero with a zero row: the zero matrix.
            return Ok(true);
        };
        let inv = cur.get(p, p).recip().expect("positive pivot");
        let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        cur = ExactMatrix::from_fn(n - 1, n - 1, |i, j| {
            let (r, c) = (rest[i], rest[j]);
            let correction = &(cur.get(r, p) * &inv) * cur.get(p, c);
            cur.get(r, c) - &correction
        });
    }
}
