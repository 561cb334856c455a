use thiserror::Error;

/// Errors produced by graph construction, parsing and the curvature routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is complete (no pair at distance 2)")]
    Complete,
    #[error("graph is empty")]
    Empty,
    #[error("graph is not regular (vertex {vertex} has degree {degree}, expected {expected})")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("parameter precondition violated: {0}")]
    Precondition(String),
    #[error("non-finite matrix entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("signature does not match graph: {0}")]
    Signature(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
