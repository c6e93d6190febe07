//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("edge ({src}, {dst}): probability {value} outside (0, 1]")]
    InvalidProbability { src: u64, dst: u64, value: f64 },

    #[error("duplicate directed edge ({src}, {dst})")]
    DuplicateEdge { src: u64, dst: u64 },

    #[error("node id {id} out of range for a graph with {nodes} nodes")]
    NodeOutOfRange { id: usize, nodes: usize },

    #[error("self-loop at node {0}")]
    SelfLoop(u64),

    #[error("graph too large for the exhaustive oracle: {got} {what} (limit {limit})")]
    TooLargeForExact {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("degenerate benefit profile: {0}")]
    DegenerateProfile(&'static str),

    #[error("delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),

    #[error("permutation prefix does not match the base set")]
    PrefixMismatch,

    #[error("degenerate certificate: denominator {0} is not positive")]
    DegenerateCertificate(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
