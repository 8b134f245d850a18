use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing problem line")]
    MissingHeader,
    #[error("line {line}: duplicate problem line")]
    DuplicateHeader { line: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("invalid path decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("residue vector mismatch: {0}")]
    WVector(String),
    #[error("{what}: {size} exceeds guard {guard}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        guard: u128,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
