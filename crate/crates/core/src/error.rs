use thiserror::Error;

use crate::field::{FieldError, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("structure matrix must be square and non-empty")]
    ShapeMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("algebra is not power-associative: {0}")]
    NotPowerAssociative(String),
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("algebra is not nil")]
    NotNil,
    #[error("dimension {0} exceeds the classified range (at most 6)")]
    DimensionTooLarge(usize),
    #[error("unknown catalog label {0}")]
    UnknownLabel(String),
    #[error("parameter constraint violated: {0}")]
    ParamConstraintViolated(String),
    #[error("vectors do not form a natural basis")]
    NotNaturalBasis,
    #[error("matrix is singular")]
    Singular,
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
