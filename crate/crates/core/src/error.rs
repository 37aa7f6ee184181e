use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{op}: dimension mismatch ({}x{} vs {}x{})", left.0, left.1, right.0, right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{what} is not hermitian")]
    NotHermitian { what: &'static str },

    #[error("{what} is not positive semidefinite")]
    NotPsd { what: &'static str },

    #[error("{what} is not idempotent")]
    NotIdempotent { what: &'static str },

    /// A supplied matrix fails `a·x·a = a`.
    #[error("{what} is not a {{1}}-inverse ({identity} fails)")]
    NotOneInverse {
        what: &'static str,
        identity: &'static str,
    },

    /// A supplied matrix fails `x·a·x = x`.
    #[error("{what} is not a weak inverse ({identity} fails)")]
    NotWeakInverse {
        what: &'static str,
        identity: &'static str,
    },

    #[error("group inverse does not exist (rank(a^2) != rank(a))")]
    NoGroupInverse,

    #[error("no solution: {what}")]
    NoSolution { what: String },

    #[error("{side} spaces of a and c intersect nontrivially")]
    Overlap { side: &'static str },

    #[error("{which} must be nonzero")]
    ZeroOperand { which: &'static str },

    #[error("supplied complement is not complementary to the target subspace")]
    NotComplementary,

    #[error("rank(e) = rank(a) = {rank}: a already lies in the corner e·S·e*")]
    Degenerate { rank: usize },

    #[error("{what}")]
    NotInRange { what: &'static str },

    #[error("d is not a member of C: {what}")]
    NotMember { what: &'static str },

    #[error("postcondition failed: {what}")]
    Postcondition { what: String },

    #[error("{what} = {value} is out of range (max {max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("column-space and row-space direct-sum tests disagree")]
    SideDisagreement,

    #[error("invalid ring spec: {0}")]
    InvalidRingSpec(String),

    #[error("ring {ring} is not von Neumann regular: element {witness} has no {{1}}-inverse")]
    NonRegular { ring: String, witness: String },

    #[error("ring {ring} has {size} elements, above the limit of {max}")]
    RingTooLarge {
        ring: String,
        size: usize,
        max: usize,
    },

    #[error("ring axiom `{axiom}` fails in {ring}")]
    AxiomViolation { ring: String, axiom: &'static str },

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}
