use thiserror::Error;

/// Errors produced by parsing, validation and the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("instance is not kernelized: edge {0}-{1} joins two vertices with tau = degree")]
    NotKernelized(usize, usize),

    #[error("state budget of {0} exceeded")]
    StateBudgetExceeded(usize),

    #[error("instance has {n} vertices, budget is {budget}")]
    SizeBudgetExceeded { n: usize, budget: usize },

    #[error("decomposition too wide: node pattern needs {bits} bits (limit {limit})")]
    TooWide { bits: usize, limit: usize },

    #[error("cnf is not in restricted form: {0}")]
    NotRestricted(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
