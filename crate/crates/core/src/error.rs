use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(String),

    #[error("graph has {got} vertices, at most {max} are supported here")]
    TooManyVertices { got: usize, max: usize },

    #[error("{0} colors requested, at most {max} are supported", max = crate::hom::MAX_COLORS)]
    TooManyColors(u32),

    #[error("vertex set {0} is not independent")]
    NotIndependent(String),

    #[error("vertex set {0} is not a maximal independent set")]
    NotMaximalIndependent(String),

    #[error("invalid covering: {0}")]
    InvalidCovering(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cell cap exceeded: more than {cap} cells")]
    CapExceeded { cap: usize },

    #[error("invalid cell: {0}")]
    InvalidCell(String),

    #[error("complex is not face-closed: {0}")]
    NotFaceClosed(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("free-face condition violated at step {step}: {detail}")]
    FreeFaceViolation { step: usize, detail: String },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
