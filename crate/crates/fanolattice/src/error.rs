//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("duplicate vertex at index {0}")]
    DuplicateVertex(usize),

    #[error("vertex at index {0} is not primitive")]
    NonPrimitiveVertex(usize),

    #[error("origin is not strictly interior")]
    OriginNotInterior,

    #[error("polytope is degenerate: vertices span a {rank}-dimensional subspace of ambient dimension {dim}")]
    Degenerate { rank: usize, dim: usize },

    #[error("point at index {0} is not a vertex of the hull")]
    NotVertex(usize),

    #[error("operation requires a simplicial polytope")]
    NotSimplicial,

    #[error("operation requires a smooth polytope: {0}")]
    NotSmooth(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("theorem violated: {0}")]
    InvariantViolation(String),

    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
