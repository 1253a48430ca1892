use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed vertex: {0}")]
    MalformedVertex(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("invalid face: {0}")]
    InvalidFace(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {0} exceeds the supported size")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("graph with {needed} vertices exceeds the materialization budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("coloring is not perfect: vertex of rank {rank} (color {color}) has neighbor counts {observed:?}, expected {expected:?}")]
    NotPerfect {
        rank: u128,
        color: u8,
        observed: Vec<u64>,
        expected: Vec<u64>,
    },
    #[error("coloring does not use every color: {0}")]
    NotSurjective(String),
    #[error("invalid recipe at {path}: {reason}")]
    RecipeInvalid { path: String, reason: String },
    #[error("no face partition: {0}")]
    NoPartition(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("infeasible weight distribution: {0}")]
    Infeasible(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn recipe(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::RecipeInvalid {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
