use thiserror::Error;

/// Errors raised by the geometric and lattice routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set or polytope is lower-dimensional (affine dimension {found} < {ambient})")]
    LowerDimensional { found: usize, ambient: usize },

    #[error("inequality system is unbounded")]
    Unbounded,

    #[error("inequality system has empty interior")]
    EmptyInterior,

    #[error("polytope contains no lattice points")]
    NoLatticePoints,

    #[error("polytope is not a lattice polytope")]
    NotLattice,

    #[error("polytope is not {scale}-hollow (interior point {witness:?})")]
    NotHollow { scale: u64, witness: Vec<i64> },

    #[error("point is not in the interior of the polytope")]
    NotInterior,

    #[error("set of interior points is empty")]
    NoInteriorPoints,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("kernel vectors are linearly dependent")]
    DependentKernel,

    #[error("integer overflow during lattice enumeration")]
    Overflow,

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
