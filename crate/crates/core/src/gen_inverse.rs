//! Generalized inverses: {1}-inverse families, reflexive ({1,2}) inverses,
//! the Moore-Penrose and group inverses, the weighted Moore-Penrose inverse
//! and the weak-to-strong upgrade.

use crate::elim::{eliminate, full_rank_factorization, inverse, rank};
use crate::error::{Error, Result};
use crate::linsys::solve_affine;
use crate::matrix::ExactMatrix;
use crate::psd::is_psd;

/// All {1}-inverses of `subject`, as `base + left·r₁ + r₂·right` for
/// arbitrary `r₁, r₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseFamily {
    pub subject: ExactMatrix,
    /// A particular `x` with `a·x·a = a`.
    pub base: ExactMatrix,
    /// `1 − x·a`.
    pub left_annihilator: ExactMatrix,
    /// `1 − a·x`.
    pub right_annihilator: ExactMatrix,
}

impl InverseFamily {
    /// Builds the family around a known {1}-inverse `x` of `a`.
    pub fn around(a: &ExactMatrix, x: &ExactMatrix) -> Result<Self> {
        check_one_inverse(a, x, "x")?;
        Ok(InverseFamily {
            subject: a.clone(),
            left_annihilator: ExactMatrix::identity(a.cols()) - x * a,
            right_annihilator: ExactMatrix::identity(a.rows()) - a * x,
            base: x.clone(),
        })
    }

    /// `base + (1 − x·a)·r1 + r2·(1 − a·x)`; both parameters have the shape
    /// of the inverse (`cols × rows` of the subject).
    pub fn member(&self, r1: &ExactMatrix, r2: &ExactMatrix) -> Result<ExactMatrix> {
        let shape = self.base.shape();
        for r in [r1, r2] {
            if r.shape() != shape {
                return Err(Error::DimensionMismatch {
                    op: "family_member",
                    left: shape,
                    right: r.shape(),
                });
            }
        }
        Ok(&(&self.base + &(&self.left_annihilator * r1)) + &(r2 * &self.right_annihilator))
    }
}

/// Free-function form of [`InverseFamily::member`].
pub fn family_member(f: &InverseFamily, r1: &ExactMatrix, r2: &ExactMatrix) -> Result<ExactMatrix> {
    f.member(r1, r2)
}

pub(crate) fn check_one_inverse(a: &ExactMatrix, x: &ExactMatrix, what: &'static str) -> Result<()> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::DimensionMismatch {
            op: "generalized inverse",
            left: a.shape(),
            right: x.shape(),
        });
    }
    if &(&(a * x) * a) != a {
        return Err(Error::NotOneInverse {
            what,
            identity: "a·x·a = a",
        });
    }
    Ok(())
}

/// Rank normal form `P·a·Q = diag(I_r, 0)` gives the {1}-inverse
/// `Q·diag(I_r, 0)·P`. With `P` the elimination transform, the first `r`
/// columns of `Q` are the unit vectors at the pivot columns, so the base is
/// `P` with its first `r` rows moved to the pivot positions.
pub fn one_inverse(a: &ExactMatrix) -> InverseFamily {
    let el = eliminate(a);
    let mut x = ExactMatrix::zeros(a.cols(), a.rows());
    for (k, &p) in el.pivots.iter().enumerate() {
        for j in 0..a.rows() {
            x.set(p, j, el.transform.get(k, j).clone());
        }
    }
    InverseFamily::around(a, &x).expect("rank normal form yields a {1}-inverse")
}

/// `x·a·x` for a {1}-inverse `x`: a reflexive inverse of `a`.
pub fn reflexive_from_one(a: &ExactMatrix, x: &ExactMatrix) -> Result<ExactMatrix> {
    check_one_inverse(a, x, "x")?;
    Ok(&(x * a) * x)
}

/// The four-equation Moore-Penrose inverse, via `a = F·G`:
/// `a† = G*(G·G*)⁻¹(F*·F)⁻¹F*`.
pub fn moore_penrose(a: &ExactMatrix) -> ExactMatrix {
    let (f, g) = full_rank_factorization(a);
    if f.cols() == 0 {
        return ExactMatrix::zeros(a.cols(), a.rows());
    }
    let gs = g.adjoint();
    let fs = f.adjoint();
    let ggs_inv = inverse(&(&g * &gs)).unwrap().expect("G has full row rank");
    let fsf_inv = inverse(&(&fs * &f)).unwrap().expect("F has full column rank");
    &(&(&gs * &ggs_inv) * &fsf_inv) * &fs
}

/// The group inverse `F·(G·F)⁻²·G` when `rank(a²) = rank(a)`, else `None`.
pub fn group_inverse(a: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    a.require_square("group_inverse")?;
    let r = rank(a);
    if rank(&(a * a)) != r {
        return Ok(None);
    }
    if r == 0 {
        return Ok(Some(ExactMatrix::zeros(a.rows(), a.cols())));
    }
    let (f, g) = full_rank_factorization(a);
    let gf_inv = inverse(&(&g * &f)).unwrap().expect("GF invertible when index is 1");
    Ok(Some(&(&(&f * &gf_inv) * &gf_inv) * &g))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMPResult {
    pub solution: ExactMatrix,
    /// Real (ℚ-) dimension of the set of all reflexive inverses meeting the
    /// weighted symmetry conditions. Zero means the solution is unique.
    pub solution_set_dim: usize,
}

/// The `w`-weighted Moore-Penrose inverse of a square `b`: a reflexive
/// inverse `x` with `(w·b·x)* = w·b·x` and `(w·x·b)* = w·x·b`.
///
/// With `g = b†`, every {1}-inverse is `y = g + (1−g·b)·r₁ + r₂·(1−b·g)` and
/// its reflexive projection `y·b·y` equals `(y·b)·g·(b·y)`. The factors
/// `b·y = b·g + b·r₂·(1−b·g)` and `y·b = g·b + (1−g·b)·r₁·b` are each affine
/// in one parameter, and each weighted condition constrains only one of
/// them, so the two conditions become two independent ℚ-linear systems.
/// Free parameters are fixed to zero; when `w·b·b†` and `w·b†·b` are already
/// hermitian this returns `b†`.
pub fn weighted_mp(b: &ExactMatrix, w: &ExactMatrix) -> Result<WeightedMPResult> {
    b.require_square("weighted_mp")?;
    w.same_shape("weighted_mp", b)?;
    if !is_psd(w)? {
        return Err(Error::NotPsd { what: "weight" });
    }
    let n = b.rows();
    let id = ExactMatrix::identity(n);
    let g = moore_penrose(b);
    let bg = b * &g;
    let gb = &g * b;
    let (f, h) = full_rank_factorization(b);
    let (_, right) = full_rank_factorization(&(&id - &bg));
    let (left, _) = full_rank_factorization(&(&id - &gb));
    let k = f.cols();

    // b·x = b·g + f·s·right, need w·(b·x) hermitian.
    let col_dir = |s: &ExactMatrix| &(&f * s) * &right;
    let w_bg = w * &bg;
    let col = solve_affine((k, n - k), &(&w_bg.adjoint() - &w_bg), |s| {
        let t = w * &col_dir(s);
        &t - &t.adjoint()
    })
    .ok_or_else(|| Error::NoSolution {
        what: "no projector b·x makes w·b·x hermitian".into(),
    })?;

    // x·b = g·b + left·s·h, need w·(x·b) hermitian.
    let row_dir = |s: &ExactMatrix| &(&left * s) * &h;
    let w_gb = w * &gb;
    let row = solve_affine((n - k, k), &(&w_gb.adjoint() - &w_gb), |s| {
        let t = w * &row_dir(s);
        &t - &t.adjoint()
    })
    .ok_or_else(|| Error::NoSolution {
        what: "no projector x·b makes w·x·b hermitian".into(),
    })?;

    let bx = &bg + &col_dir(&col.particular);
    let xb = &gb + &row_dir(&row.particular);
    let solution = &(&xb * &g) * &bx;

    // Both parametrizations are injective, so directions are independent.
    Ok(WeightedMPResult {
        solution,
        solution_set_dim: col.directions.len() + row.directions.len(),
    })
}

/// Upgrades a weak inverse `b` of `a` (`b·a·b = b`) to the strong inverse
/// `c = b + a1·(a − a·b·a)·a1`, where `a1` is any {1}-inverse of `a`.
pub fn weak_to_strong(b: &ExactMatrix, a: &ExactMatrix, a1: &ExactMatrix) -> Result<ExactMatrix> {
    if b.shape() != (a.cols(), a.rows()) {
        return Err(Error::DimensionMismatch {
            op: "weak_to_strong",
            left: a.shape(),
            right: b.shape(),
        });
    }
    check_one_inverse(a, a1, "a1")?;
    let ab = a * b;
    if &(&(b * a) * b) != b {
        return Err(Error::NotWeakInverse {
            what: "b",
            identity: "b·a·b = b",
        });
    }
    let correction = &(a1 * &(a - &(&ab * a))) * a1;
    Ok(b + &correction)
}
