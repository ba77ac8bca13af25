//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge index {index} out of range for a graph with {edges} edges")]
    EdgeOutOfRange { index: usize, edges: usize },
    #[error("vertex index {index} out of range for a graph with {vertices} vertices")]
    VertexOutOfRange { index: usize, vertices: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no cycles")]
    NoLoops,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("evaluation point lies on a pole")]
    Pole,
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
