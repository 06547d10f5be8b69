use thiserror::Error;

use crate::rational::Vector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {dim} is not supported (expected {supported})")]
    DimensionUnsupported { dim: usize, supported: &'static str },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("direction {index} is not orthogonal to the frame built so far")]
    NonOrthogonalDirection { index: usize },

    #[error("translate is not in general position: lattice point {lambda} lies on the relative boundary of face {face:?}")]
    NotGeneralPosition { lambda: Vector, face: Vec<usize> },

    #[error("no general-position translate found after {attempts} attempts")]
    ExhaustedAttempts { attempts: usize },

    #[error("polytope fails the central symmetry precondition")]
    SymmetryPreconditionFailed,

    #[error("inconsistent lattice counts {first} and {second} for generic translates")]
    InconsistentCounts { first: u64, second: u64 },

    #[error("quadrature tolerance not reached within {budget} nodes per axis")]
    ToleranceNotReached { budget: usize },

    #[error("lattice basis is singular")]
    SingularBasis,

    #[error("invalid value for `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
