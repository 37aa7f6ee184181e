//! Affine systems whose unknown is a matrix.
//!
//! The constraints met here (`(w·b·x)* = w·b·x` and friends) are linear over
//! ℚ but not over ℚ(i), so every unknown entry is split into a real and an
//! imaginary coordinate and the system is solved over ℚ.

use crate::elim::solve_with_kernel;
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

/// `particular + span(directions)` is the full solution set.
pub(crate) struct AffineSolution {
    pub particular: ExactMatrix,
    pub directions: Vec<ExactMatrix>,
}

/// Entries as `[re₀, im₀, re₁, im₁, …]` in row-major order.
pub(crate) fn realify(m: &ExactMatrix) -> Vec<Scalar> {
    m.entries()
        .iter()
        .flat_map(|v| [Scalar::from(v.re().clone()), Scalar::from(v.im().clone())])
        .collect()
}

fn unknown_basis(shape: (usize, usize), k: usize) -> ExactMatrix {
    let entry = k / 2;
    let value = if k.is_multiple_of(2) { Scalar::one() } else { Scalar::i() };
    let mut m = ExactMatrix::zeros(shape.0, shape.1);
    m.set(entry / shape.1, entry % shape.1, value);
    m
}

fn from_coordinates(shape: (usize, usize), t: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(shape.0, shape.1, |i, j| {
        let k = 2 * (i * shape.1 + j);
        t.get(k, 0) + &(t.get(k + 1, 0) * &Scalar::i())
    })
}

/// Matrix of a ℚ-linear map on `shape`-sized matrices, one column per real
/// coordinate of the unknown.
fn coefficient_matrix(
    shape: (usize, usize),
    map: &impl Fn(&ExactMatrix) -> ExactMatrix,
) -> ExactMatrix {
    let unknowns = 2 * shape.0 * shape.1;
    let columns: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|k| realify(&map(&unknown_basis(shape, k))))
        .collect();
    let height = 2 * map(&ExactMatrix::zeros(shape.0, shape.1)).entries().len();
    ExactMatrix::from_fn(height, unknowns, |i, j| columns[j][i].clone())
}

/// Solves `map(r) = target` for `r` of the given shape. `map` must be
/// ℚ-linear. The particular solution has every free coordinate set to zero.
pub(crate) fn solve_affine(
    shape: (usize, usize),
    target: &ExactMatrix,
    map: impl Fn(&ExactMatrix) -> ExactMatrix,
) -> Option<AffineSolution> {
    let a = coefficient_matrix(shape, &map);
    let rhs = ExactMatrix::from_vec(a.rows(), 1, realify(target));
    let (t, k) = solve_with_kernel(&a, &rhs)?;
    let directions = (0..k.cols())
        .map(|j| from_coordinates(shape, &k.block(0, k.rows(), j, j + 1)))
        .collect();
    Some(AffineSolution {
        particular: from_coordinates(shape, &t),
        directions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elim::rank;
    use crate::matrix::parse_matrix;

    /// Real dimension of the span of `images`.
    fn real_span_dim(images: &[ExactMatrix]) -> usize {
        if images.is_empty() {
            return 0;
        }
        let cols: Vec<Vec<Scalar>> = images.iter().map(realify).collect();
        let m = ExactMatrix::from_fn(cols[0].len(), cols.len(), |i, j| cols[j][i].clone());
        rank(&m)
    }

    #[test]
    fn hermitian_part_constraint() {
        // Solutions of x - x* = 0 over 2x2 are the hermitian matrices:
        // real dimension 4, particular solution zero.
        let sol = solve_affine((2, 2), &ExactMatrix::zeros(2, 2), |x| x - &x.adjoint()).unwrap();
        assert!(sol.particular.is_zero());
        assert_eq!(sol.directions.len(), 4);
        assert!(sol.directions.iter().all(ExactMatrix::is_hermitian));
        assert_eq!(real_span_dim(&sol.directions), 4);
    }

    #[test]
    fn complex_linear_solve() {
        let a = parse_matrix("1 0+1i / 0 2").unwrap();
        let target = parse_matrix("1 0 / 0 1").unwrap();
        let sol = solve_affine((2, 2), &target, |x| &a * x).unwrap();
        assert_eq!(&a * &sol.particular, target);
        assert!(sol.directions.is_empty());
    }

    #[test]
    fn inconsistent_returns_none() {
        let z = ExactMatrix::zeros(2, 2);
        assert!(solve_affine((2, 2), &ExactMatrix::identity(2), |x| &z * x).is_none());
    }
}
