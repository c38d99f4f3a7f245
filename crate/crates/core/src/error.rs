use thiserror::Error;

use crate::algebra::Algebra;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown generator `{name}` for algebra {algebra}")]
    UnknownGenerator { name: String, algebra: Algebra },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("algebra mismatch: expected {expected}, found {found}")]
    AlgebraMismatch { expected: Algebra, found: Algebra },

    #[error("truncation too small: no interior vector for {0}")]
    NoInterior(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{series} takes {expected} phase(s), got {found}")]
    PhaseArity { series: String, expected: usize, found: usize },

    #[error("operator is not self-adjoint (deviation {0:.3e})")]
    NonHermitian(f64),

    #[error("operators do not commute (deviation {0:.3e})")]
    NonCommuting(f64),

    #[error("cyclic span leaves the interior at depth {depth} (outside weight {weight:.3e})")]
    SpanEscapesInterior { depth: usize, weight: f64 },

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("not a representation: relation `{relation}` residual {residual:.3e}")]
    NotARepresentation { relation: String, residual: f64 },

    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed matrix file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
