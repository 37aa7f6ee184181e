//! Minus, direct-sum, Loewner and idempotent orders on matrices, plus the
//! constructions that certify them.

use crate::elim::rank;
use crate::error::{Error, Result};
use crate::gen_inverse::{moore_penrose, one_inverse};
use crate::linsys::solve_affine;
use crate::matrix::ExactMatrix;
use crate::psd::is_psd;
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankData {
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_diff: usize,
}

/// Verdict of [`minus_leq`] with its evidence.
///
/// A true verdict carries a witness `x` with `a·x·a = a`, `a·x = b·x` and
/// `x·a = x·b`; a false verdict names the condition that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCertificate {
    pub verdict: bool,
    pub witness: Option<ExactMatrix>,
    pub violated: Option<&'static str>,
    pub rank_data: RankData,
}

impl OrderCertificate {
    /// Re-checks the certificate against `(a, b)` from scratch.
    pub fn verify(&self, a: &ExactMatrix, b: &ExactMatrix) -> bool {
        match (&self.witness, self.verdict) {
            (Some(x), true) => is_minus_witness(a, b, x),
            (None, false) => {
                rank(&(b - a)) + rank(a) != rank(b) && self.violated.is_some()
            }
            _ => false,
        }
    }
}

pub const RANK_NOT_SUBTRACTIVE: &str = "rank(b - a) = rank(b) - rank(a)";

/// `a·x·a = a`, `a·x = b·x`, `x·a = x·b`.
pub fn is_minus_witness(a: &ExactMatrix, b: &ExactMatrix, x: &ExactMatrix) -> bool {
    let ax = a * x;
    let xa = x * a;
    &(&ax * a) == a && ax == b * x && xa == x * b
}

/// `a ≤⁻ b`, decided by rank subtractivity. When it holds, the witness is
/// `g·a·g` with `g = b†`.
pub fn minus_leq(a: &ExactMatrix, b: &ExactMatrix) -> Result<OrderCertificate> {
    a.same_shape("minus_leq", b)?;
    let rank_data = RankData {
        rank_a: rank(a),
        rank_b: rank(b),
        rank_diff: rank(&(b - a)),
    };
    if rank_data.rank_diff + rank_data.rank_a != rank_data.rank_b {
        return Ok(OrderCertificate {
            verdict: false,
            witness: None,
            violated: Some(RANK_NOT_SUBTRACTIVE),
            rank_data,
        });
    }
    let g = moore_penrose(b);
    let x = &(&g * a) * &g;
    if !is_minus_witness(a, b, &x) {
        return Err(Error::Postcondition {
            what: "g·a·g is not a minus-order witness despite rank subtractivity".into(),
        });
    }
    Ok(OrderCertificate {
        verdict: true,
        witness: Some(x),
        violated: None,
        rank_data,
    })
}

/// `V ⊕ W = U`: trivial intersection and the sum fills `U`.
fn is_direct_sum(v: &Subspace, w: &Subspace, u: &Subspace) -> Result<bool> {
    Ok(v.intersect(w)?.is_zero() && v.sum(w)? == *u)
}

/// The column-side and row-side direct-sum conditions for `a ≤⊕ b`,
/// evaluated separately.
pub fn direct_sum_sides(a: &ExactMatrix, b: &ExactMatrix) -> Result<(bool, bool)> {
    a.same_shape("direct_sum_leq", b)?;
    let d = b - a;
    let columns = is_direct_sum(
        &Subspace::column_space(a),
        &Subspace::column_space(&d),
        &Subspace::column_space(b),
    )?;
    let rows = is_direct_sum(
        &Subspace::row_space(a),
        &Subspace::row_space(&d),
        &Subspace::row_space(b),
    )?;
    Ok((columns, rows))
}

/// `a ≤⊕ b`: `col(b) = col(a) ⊕ col(b − a)`. The row-space form is
/// evaluated as well; the two must agree.
pub fn direct_sum_leq(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    let (columns, rows) = direct_sum_sides(a, b)?;
    if columns != rows {
        return Err(Error::SideDisagreement);
    }
    Ok(columns)
}

/// `{b⁽¹⁾} ⊆ {a⁽¹⁾}`. With `g = b†`, every {1}-inverse of `b` is
/// `g + (1−g·b)·r₁ + r₂·(1−b·g)`, so containment reduces to `a·g·a = a`,
/// `a·g·b = a` and `b·g·a = a`.
pub fn inverse_containment(b: &ExactMatrix, a: &ExactMatrix) -> Result<bool> {
    a.same_shape("inverse_containment", b)?;
    let g = moore_penrose(b);
    let ag = a * &g;
    Ok(&(&ag * a) == a && &(&ag * b) == a && &(&(b * &g) * a) == a)
}

/// The three equivalent conditions on a pair `(a, b)`:
/// `col(a) ⊕ col(b) = col(a+b)`, the row version, and trivial intersection
/// of both the column and the row spaces.
pub fn theorem1_conditions(a: &ExactMatrix, b: &ExactMatrix) -> Result<(bool, bool, bool)> {
    a.same_shape("theorem1_conditions", b)?;
    let s = a + b;
    let (ca, cb) = (Subspace::column_space(a), Subspace::column_space(b));
    let (ra, rb) = (Subspace::row_space(a), Subspace::row_space(b));
    let columns = is_direct_sum(&ca, &cb, &Subspace::column_space(&s))?;
    let rows = is_direct_sum(&ra, &rb, &Subspace::row_space(&s))?;
    let disjoint = ca.intersect(&cb)?.is_zero() && ra.intersect(&rb)?.is_zero();
    Ok((columns, rows, disjoint))
}

/// `a ≤_L b`: `b − a` is positive semidefinite.
pub fn loewner_leq(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    a.same_shape("loewner_leq", b)?;
    if !a.is_hermitian() {
        return Err(Error::NotHermitian { what: "a" });
    }
    if !b.is_hermitian() {
        return Err(Error::NotHermitian { what: "b" });
    }
    is_psd(&(b - a))
}

/// For idempotent `b`: `a = a² = a·b = b·a`.
pub fn idempotent_leq(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    a.same_shape("idempotent_leq", b)?;
    if !b.is_idempotent() {
        return Err(Error::NotIdempotent { what: "b" });
    }
    Ok(&(a * a) == a && &(a * b) == a && &(b * a) == a)
}

/// A common {1}-inverse of `a` and `b`, if any.
///
/// Members of `b`'s family `g + L·r₁ + r₂·R` satisfy `b·x·b = b`
/// automatically; `a·x·a = a` is then linear in `(r₁, r₂)`.
pub fn common_one_inverse(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    a.same_shape("common_one_inverse", b)?;
    let fam = one_inverse(b);
    let (p, q) = fam.base.shape();
    // Both parameters are packed side by side into one p × 2q unknown.
    let split = |r: &ExactMatrix| (r.block(0, p, 0, q), r.block(0, p, q, 2 * q));
    let target = a - &(&(a * &fam.base) * a);
    let sol = solve_affine((p, 2 * q), &target, |r| {
        let (r1, r2) = split(r);
        let var = &(&fam.left_annihilator * &r1) + &(&r2 * &fam.right_annihilator);
        &(a * &var) * a
    });
    Ok(sol.map(|s| {
        let (r1, r2) = split(&s.particular);
        fam.member(&r1, &r2).expect("parameter shapes match")
    }))
}

/// Given `a, c ≠ 0` whose column spaces and row spaces meet only in zero,
/// returns a {1}-inverse `x` of `a` with `x·c = 0 = c·x`: the minus-order
/// witness for `a ≤⁻ a + c`.
pub fn hartwig_split_inverse(a: &ExactMatrix, c: &ExactMatrix) -> Result<ExactMatrix> {
    a.same_shape("hartwig_split_inverse", c)?;
    if a.is_zero() {
        return Err(Error::ZeroOperand { which: "a" });
    }
    if c.is_zero() {
        return Err(Error::ZeroOperand { which: "c" });
    }
    if !Subspace::column_space(a)
        .intersect(&Subspace::column_space(c))?
        .is_zero()
    {
        return Err(Error::Overlap { side: "column" });
    }
    if !Subspace::row_space(a)
        .intersect(&Subspace::row_space(c))?
        .is_zero()
    {
        return Err(Error::Overlap { side: "row" });
    }
    let cert = minus_leq(a, &(a + c))?;
    let x = cert.witness.ok_or_else(|| Error::Postcondition {
        what: "a is not below a + c in the minus order".into(),
    })?;
    if !(&x * c).is_zero() || !(c * &x).is_zero() {
        return Err(Error::Postcondition {
            what: "witness does not annihilate c".into(),
        });
    }
    Ok(x)
}
