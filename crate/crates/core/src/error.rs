use thiserror::Error;

/// Errors raised while building codes, matrices and groups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside the supported range 3..=10")]
    DegreeOutOfRange(u32),
    #[error("polynomial {poly:#x} is not primitive of degree {m}")]
    NotPrimitive { m: u32, poly: u32 },
    #[error("parity count {0} is not supported (expected 2 or 3)")]
    UnsupportedParity(usize),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("idempotent construction failed: {0}")]
    Idempotent(String),
    #[error("no cyclic shift of the idempotent matches {0}")]
    Convention(String),
    #[error("parity matrix consistency check failed: {0}")]
    Consistency(String),
    #[error("M-matrix row {row} has no element of the required shape")]
    Structure { row: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("exhaustive enumeration is limited to m <= {limit}, got m = {m}")]
    TooLarge { m: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
