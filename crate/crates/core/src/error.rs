use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node `{node}`")]
    SelfLoop { line: usize, node: String },

    #[error("input contains no edges")]
    Empty,

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("node `{0}` is listed more than once")]
    DuplicateNode(String),

    #[error("node `{0}` has no community assignment")]
    MissingNode(String),

    #[error("node index {node} out of range for {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("community {label} out of range for {k} communities")]
    LabelOutOfRange { label: usize, k: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("modularity is undefined for a graph without edges")]
    NoEdges,

    #[error("chromosome is not safe: gene {gene} points at non-neighbour {allele}")]
    Unsafe { gene: usize, allele: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
