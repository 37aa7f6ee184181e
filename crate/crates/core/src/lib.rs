//! Exact generalized inverses, matrix partial orders and shorted operators
//! over the Gaussian rationals ℚ(i), with an exhaustive checker over small
//! finite von Neumann regular rings.
//!
//! Everything is exact: there is no floating point anywhere in the crate.

pub mod elim;
pub mod error;
pub mod gen_inverse;
pub mod golden;
pub mod lab;
mod linsys;
pub mod matrix;
pub mod orders;
pub mod psd;
pub mod scalar;
pub mod shorted;
pub mod subspace;

pub use elim::{eliminate, full_rank_factorization, inverse, kernel, rank, solve, Elimination};
pub use error::{Error, Result};
pub use gen_inverse::{
    family_member, group_inverse, moore_penrose, one_inverse, reflexive_from_one, weak_to_strong,
    weighted_mp, InverseFamily, WeightedMPResult,
};
pub use matrix::{format_matrix, parse_matrix, ExactMatrix};
pub use orders::{
    common_one_inverse, direct_sum_leq, hartwig_split_inverse, idempotent_leq, inverse_containment,
    loewner_leq, minus_leq, theorem1_conditions, OrderCertificate, RankData,
};
pub use psd::is_psd;
pub use scalar::Scalar;
pub use shorted::{
    anderson_trapp, core_matrix, is_maximal, max_from_strong, member_from_weak,
    permutation_equivalent, projector_intersection, shorted_psd, CoreMatrix, Frame,
    ProjectorStyle, ShortedResult, Side, Strategy,
};
pub use subspace::Subspace;
