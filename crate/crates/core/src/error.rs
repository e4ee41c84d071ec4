//! Error type shared by every module.

use alloc::string::String;

/// Failures raised by exact and numeric operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid inverse: {0}")]
    InvalidInverse(String),
    #[error("series not invertible: {0}")]
    NotInvertible(String),
    #[error("branch error: {0}")]
    BranchError(String),
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("series substitution does not terminate: {0}")]
    NotNilpotent(String),
    #[error("not in the ring of modular forms: {0}")]
    NotInRing(String),
    #[error("connection claimed flat but curvature is nonzero: {0}")]
    FlatnessViolation(String),
    #[error("degenerate scenario: {0}")]
    DegenerateScenario(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// Result alias using [`Error`].
pub type Result<T> = core::result::Result<T, Error>;
