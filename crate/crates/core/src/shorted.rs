//! Maximal elements below `a` inside a corner `e·R·f`, and the shorted
//! operator of a positive semidefinite matrix.
//!
//! Two unrelated things are both commonly called "S" in this area: the
//! corner subring `e·R·f` and the cone of PSD matrices. Here the corner is
//! always described by a [`Frame`] and the cone by [`is_psd`].

use crate::elim::{inverse, rank};
use crate::error::{Error, Result};
use crate::gen_inverse::{check_one_inverse, group_inverse, moore_penrose, weighted_mp, InverseFamily};
use crate::matrix::ExactMatrix;
use crate::orders::{direct_sum_leq, loewner_leq};
use crate::psd::is_psd;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Idempotents cutting out the corner `e·R·f`: `e` acts on the column side,
/// `f` on the row side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    e: ExactMatrix,
    f: ExactMatrix,
}

impl Frame {
    pub fn new(e: ExactMatrix, f: ExactMatrix) -> Result<Self> {
        if !e.is_idempotent() {
            return Err(Error::NotIdempotent { what: "e" });
        }
        if !f.is_idempotent() {
            return Err(Error::NotIdempotent { what: "f" });
        }
        Ok(Frame { e, f })
    }

    /// The frame `(e, e*)`.
    pub fn hermitian(e: ExactMatrix) -> Result<Self> {
        let f = e.adjoint();
        Self::new(e, f)
    }

    pub fn e(&self) -> &ExactMatrix {
        &self.e
    }

    pub fn f(&self) -> &ExactMatrix {
        &self.f
    }

    /// Whether `e·d·f = d`.
    pub fn contains(&self, d: &ExactMatrix) -> bool {
        d.rows() == self.e.cols()
            && d.cols() == self.f.rows()
            && &(&(&self.e * d) * &self.f) == d
    }

    fn check_against(&self, a: &ExactMatrix) -> Result<()> {
        if self.e.rows() != a.rows() || self.f.cols() != a.cols() {
            return Err(Error::DimensionMismatch {
                op: "frame",
                left: a.shape(),
                right: (self.e.rows(), self.f.cols()),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `e·R = u ∩ v` for column spaces.
    Column,
    /// `R·f = u ∩ v` for row spaces (stored transposed, see [`Subspace::row_space`]).
    Row,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjectorStyle {
    /// The hermitian projector.
    Orthogonal,
    /// Projection along the given complement.
    Oblique(Subspace),
}

/// An idempotent whose column space (or row space) is `u ∩ v`.
pub fn projector_intersection(
    u: &Subspace,
    v: &Subspace,
    side: Side,
    style: &ProjectorStyle,
) -> Result<ExactMatrix> {
    let target = u.intersect(v)?;
    let n = target.ambient_dim();
    let w = target.basis();
    let p = match style {
        ProjectorStyle::Orthogonal => {
            if target.is_zero() {
                ExactMatrix::zeros(n, n)
            } else {
                let ws = w.adjoint();
                let gram_inv = inverse(&(&ws * w))?.expect("basis columns are independent");
                &(w * &gram_inv) * &ws
            }
        }
        ProjectorStyle::Oblique(complement) => {
            if complement.ambient_dim() != n
                || complement.dim() + target.dim() != n
                || !complement.intersect(&target)?.is_zero()
            {
                return Err(Error::NotComplementary);
            }
            let frame = w.hstack(complement.basis())?;
            let inv = inverse(&frame)?.expect("complementary bases form an invertible matrix");
            w * &inv.block(0, target.dim(), 0, n)
        }
    };
    Ok(match side {
        Side::Column => p,
        Side::Row => p.transpose(),
    })
}

/// `f·a1·e` and whether it is independent of the choice of `a1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreMatrix {
    pub core: ExactMatrix,
    /// True when `a·a†·e = e` and `f·a†·a = f` and a second {1}-inverse of
    /// `a` reproduces the same core.
    pub invariant_under_choice: bool,
}

pub fn core_matrix(a: &ExactMatrix, frame: &Frame, a1: &ExactMatrix) -> Result<CoreMatrix> {
    frame.check_against(a)?;
    check_one_inverse(a, a1, "a1")?;
    let core = &(&frame.f * a1) * &frame.e;
    let pinv = moore_penrose(a);
    let in_range = (&(a * &pinv) * &frame.e) == frame.e && (&(&frame.f * &pinv) * a) == frame.f;
    let invariant_under_choice = in_range && {
        let ones = ExactMatrix::from_fn(a.cols(), a.rows(), |_, _| Scalar::one());
        let other = InverseFamily::around(a, a1)?.member(&ones, &ones)?;
        &(&frame.f * &other) * &frame.e == core
    };
    Ok(CoreMatrix {
        core,
        invariant_under_choice,
    })
}

/// `e·u·f` for a weak inverse `u` of the core `f·a1·e`.
pub fn member_from_weak(
    a: &ExactMatrix,
    frame: &Frame,
    a1: &ExactMatrix,
    u: &ExactMatrix,
) -> Result<ExactMatrix> {
    let core = core_matrix(a, frame, a1)?.core;
    if u.shape() != (core.cols(), core.rows()) || &(&(u * &core) * u) != u {
        return Err(Error::NotWeakInverse {
            what: "u",
            identity: "u·core·u = u",
        });
    }
    Ok(&(&frame.e * u) * &frame.f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    MoorePenrose,
    Group,
    Explicit(ExactMatrix),
}

/// `e·v·f` for a strong inverse `v` of the core, chosen by `strategy`.
/// Checks that the result lies below `a` and is maximal.
pub fn max_from_strong(
    a: &ExactMatrix,
    frame: &Frame,
    a1: &ExactMatrix,
    strategy: &Strategy,
) -> Result<ExactMatrix> {
    let core = core_matrix(a, frame, a1)?.core;
    let v = match strategy {
        Strategy::MoorePenrose => moore_penrose(&core),
        Strategy::Group => group_inverse(&core)?.ok_or(Error::NoGroupInverse)?,
        Strategy::Explicit(v) => {
            check_one_inverse(&core, v, "v")?;
            if &(&(v * &core) * v) != v {
                return Err(Error::NotWeakInverse {
                    what: "v",
                    identity: "v·core·v = v",
                });
            }
            v.clone()
        }
    };
    let s = &(&frame.e * &v) * &frame.f;
    if !direct_sum_leq(&s, a)? {
        return Err(Error::Postcondition {
            what: "e·v·f is not below a in the direct-sum order".into(),
        });
    }
    if !is_maximal(&s, a, frame, a1)? {
        return Err(Error::Postcondition {
            what: "e·v·f is not maximal".into(),
        });
    }
    Ok(s)
}

/// Whether a member `d` of `C = {s ∈ e·R·f : s ≤⊕ a}` is maximal: `d` is a
/// weak inverse of the core (`d·a1·d = d`) attaining the core's rank.
pub fn is_maximal(d: &ExactMatrix, a: &ExactMatrix, frame: &Frame, a1: &ExactMatrix) -> Result<bool> {
    let core = core_matrix(a, frame, a1)?.core;
    d.same_shape("is_maximal", a)?;
    if !frame.contains(d) {
        return Err(Error::NotMember { what: "e·d·f != d" });
    }
    if !direct_sum_leq(d, a)? {
        return Err(Error::NotMember {
            what: "d is not below a",
        });
    }
    Ok(&(&(d * a1) * d) == d && rank(d) == rank(&core))
}

/// Output of [`shorted_psd`]. Both routes are always computed there and
/// agree exactly with `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortedResult {
    pub value: ExactMatrix,
    /// `a·f_a†·f`, with `f_a†` the `a`-weighted Moore-Penrose inverse of `f`.
    pub via_weighted: Option<ExactMatrix>,
    /// `e·(f·a†·e)†·f`.
    pub via_core: Option<ExactMatrix>,
    /// `rank(a) − rank(value)`.
    pub rank_drop: usize,
}

/// The shorted operator of a PSD matrix `a` onto the corner `e·S·e*`,
/// computed by two independent formulas which must agree.
pub fn shorted_psd(a: &ExactMatrix, e: &ExactMatrix) -> Result<ShortedResult> {
    a.require_square("shorted_psd")?;
    if !is_psd(a)? {
        return Err(Error::NotPsd { what: "a" });
    }
    e.same_shape("shorted_psd", a)?;
    let frame = Frame::hermitian(e.clone())?;
    if !Subspace::column_space(a).contains(&Subspace::column_space(e))? {
        return Err(Error::NotInRange {
            what: "col(e) is not contained in col(a)",
        });
    }
    let rank_a = rank(a);
    if rank(e) == rank_a {
        return Err(Error::Degenerate { rank: rank_a });
    }
    let f = frame.f();

    let core = &(f * &moore_penrose(a)) * e;
    let via_core = &(e * &moore_penrose(&core)) * f;

    let f_a = weighted_mp(f, a)?.solution;
    let via_weighted = &(a * &f_a) * f;

    if via_core != via_weighted {
        return Err(Error::Postcondition {
            what: format!(
                "routes disagree: e(fa†e)†f = [{}], af_a†f = [{}]",
                via_core.to_inline(),
                via_weighted.to_inline()
            ),
        });
    }
    let value = via_core;
    let fail = |what: &str| Error::Postcondition { what: what.into() };
    if !is_psd(&value)? {
        return Err(fail("shorted operator is not PSD"));
    }
    if !frame.contains(&value) {
        return Err(fail("shorted operator is outside e·S·e*"));
    }
    if !direct_sum_leq(&value, a)? {
        return Err(fail("shorted operator is not below a in the direct-sum order"));
    }
    if !loewner_leq(&value, a)? {
        return Err(fail("shorted operator is not below a in the Loewner order"));
    }
    Ok(ShortedResult {
        rank_drop: rank_a - rank(&value),
        via_weighted: Some(via_weighted),
        via_core: Some(value.clone()),
        value,
    })
}

/// Block formula `[a₁₁ − a₁₂·a₂₂†·a₂₁, 0; 0, 0]` with `a₁₁` of size `k × k`.
pub fn anderson_trapp(a: &ExactMatrix, k: usize) -> Result<ExactMatrix> {
    a.require_square("anderson_trapp")?;
    let n = a.rows();
    if k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            max: n,
        });
    }
    if !is_psd(a)? {
        return Err(Error::NotPsd { what: "a" });
    }
    let a11 = a.block(0, k, 0, k);
    let a12 = a.block(0, k, k, n);
    let a21 = a.block(k, n, 0, k);
    let a22 = a.block(k, n, k, n);
    let schur = &a11 - &(&(&a12 * &moore_penrose(&a22)) * &a21);
    Ok(ExactMatrix::from_fn(n, n, |i, j| {
        if i < k && j < k {
            schur.get(i, j).clone()
        } else {
            Scalar::zero()
        }
    }))
}

pub const PERMUTATION_SEARCH_MAX: usize = 10;

/// A permutation matrix `P` with `P·x·Pᵀ = y`, if one exists.
///
/// Backtracks over assignments `i ↦ σ(i)` with `y[i][j] = x[σ(i)][σ(j)]`,
/// pruned by the diagonal entry and the sorted row and column multisets.
pub fn permutation_equivalent(x: &ExactMatrix, y: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    x.require_square("permutation_equivalent")?;
    x.same_shape("permutation_equivalent", y)?;
    let n = x.rows();
    if n > PERMUTATION_SEARCH_MAX {
        return Err(Error::OutOfRange {
            what: "matrix size",
            value: n,
            max: PERMUTATION_SEARCH_MAX,
        });
    }

    type Signature = (Scalar, Vec<Scalar>, Vec<Scalar>);
    let signature = |m: &ExactMatrix, i: usize| -> Signature {
        let mut row = m.row(i).to_vec();
        let mut col: Vec<Scalar> = (0..n).map(|r| m.get(r, i).clone()).collect();
        row.sort();
        col.sort();
        (m.get(i, i).clone(), row, col)
    };
    let sx: Vec<Signature> = (0..n).map(|i| signature(x, i)).collect();
    let sy: Vec<Signature> = (0..n).map(|i| signature(y, i)).collect();

    fn extend(
        i: usize,
        sigma: &mut Vec<usize>,
        used: &mut [bool],
        x: &ExactMatrix,
        y: &ExactMatrix,
        sx: &[Signature],
        sy: &[Signature],
    ) -> bool {
        let n = used.len();
        if i == n {
            return true;
        }
        for p in 0..n {
            if used[p] || sx[p] != sy[i] {
                continue;
            }
            let consistent = sigma
                .iter()
                .enumerate()
                .all(|(j, &q)| y.get(i, j) == x.get(p, q) && y.get(j, i) == x.get(q, p));
            if !consistent {
                continue;
            }
            used[p] = true;
            sigma.push(p);
            if extend(i + 1, sigma, used, x, y, sx, sy) {
                return true;
            }
            sigma.pop();
            used[p] = false;
        }
        false
    }

    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if !extend(0, &mut sigma, &mut used, x, y, &sx, &sy) {
        return Ok(None);
    }
    let mut p = ExactMatrix::zeros(n, n);
    for (i, &s) in sigma.iter().enumerate() {
        p.set(i, s, Scalar::one());
    }
    debug_assert_eq!(&(&p * x) * &p.transpose(), *y);
    Ok(Some(p))
}
