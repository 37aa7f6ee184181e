//! Subspaces of ℚ(i)^n given by an explicit column basis.
//!
//! Row spaces are stored transposed: the row space of `m` is the subspace
//! spanned by the columns of `mᵀ`. All containment and intersection logic is
//! the same on either side.

use crate::elim::{kernel, rank, rref};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

impl Subspace {
    /// The span of the columns of `spanning`, reduced to a basis.
    pub fn span(spanning: &ExactMatrix) -> Self {
        let (_, pivots) = rref(spanning);
        Subspace {
            ambient_dim: spanning.rows(),
            basis: spanning.select_columns(&pivots),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: ExactMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: ExactMatrix::identity(ambient_dim),
        }
    }

    /// Column space `mR`.
    pub fn column_space(m: &ExactMatrix) -> Self {
        Self::span(m)
    }

    /// Row space `Rm`, stored as the column space of `mᵀ`.
    pub fn row_space(m: &ExactMatrix) -> Self {
        Self::span(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.ambient_dim, self.dim()),
                right: (other.ambient_dim, other.dim()),
            });
        }
        Ok(())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other, "subspace sum")?;
        Ok(Self::span(&self.basis.hstack(&other.basis)?))
    }

    /// `self ∩ other`, from the kernel of `[U | −V]`: each kernel vector
    /// `(s, t)` gives the common vector `U·s = V·t`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other, "subspace intersection")?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let stacked = self.basis.hstack(&(-&other.basis))?;
        let k = kernel(&stacked);
        let coeffs = k.block(0, self.dim(), 0, k.cols());
        Ok(Self::span(&(&self.basis * &coeffs)))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other, "subspace containment")?;
        if other.is_zero() {
            return Ok(true);
        }
        Ok(rank(&self.basis.hstack(&other.basis)?) == self.dim())
    }

    /// Whether every column of `vectors` lies in the subspace.
    pub fn contains_columns(&self, vectors: &ExactMatrix) -> Result<bool> {
        self.contains(&Self::span(vectors))
    }
}

/// Equality as sets: mutual containment.
impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() == other.dim()
            && self.contains(other).unwrap_or(false)
    }
}

impl Eq for Subspace {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_matrix;

    fn col(s: &str) -> Subspace {
        Subspace::column_space(&parse_matrix(s).unwrap())
    }

    #[test]
    fn distinct_units_meet_in_zero() {
        let a = ExactMatrix::unit(4, 4, 0, 2);
        let b = ExactMatrix::unit(4, 4, 1, 3);
        let i = Subspace::column_space(&a)
            .intersect(&Subspace::column_space(&b))
            .unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn shared_column_gives_line() {
        // Column spaces share exactly the vector (1, 1, 0, 2).
        let a = col("1 1 / 1 0 / 0 0 / 2 0");
        let c = col("1 0 / 1 0 / 0 1 / 2 0");
        let i = a.intersect(&c).unwrap();
        assert_eq!(i.dim(), 1);
        assert_eq!(i, col("1 / 1 / 0 / 2"));
    }

    #[test]
    fn intersection_is_idempotent() {
        let u = col("1 2 / 0+1i 0 / 0 1 / 3 3");
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        assert!(Subspace::full(3).intersect(&Subspace::full(4)).is_err());
    }
}
