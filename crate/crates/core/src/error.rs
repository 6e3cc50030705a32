use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall in three families, mirrored by the CLI exit codes:
/// caller-side input problems, algebraic shape mismatches, and internal
/// consistency failures (a formula and its oracle disagreeing, a solver
/// meeting contradictory data).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("point is not on the theta divisor (h = 0)")]
    NotOnTheta,

    #[error("no polynomial satisfies constraints")]
    Inconsistent,

    #[error("constraints insufficient: solution space has dimension {0}")]
    Underdetermined(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
