use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("edge ({0}, {0}) is a loop")]
    LoopEdge(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("divisor has degree {0}, expected degree zero")]
    NonZeroDegree(BigInt),

    #[error("Jacobian is not cyclic (invariant factors {0:?})")]
    NotCyclic(Vec<BigInt>),

    #[error("no solution: target is not in the subgroup generated by the base")]
    NoSolution,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
