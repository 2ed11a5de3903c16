use std::path::PathBuf;

use crate::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges")]
    EmptyInput,

    #[error("line {line}: arc {from} -> {to} has no reverse while other arcs do; input looks directed")]
    DirectedInput { line: usize, from: String, to: String },

    #[error("node index {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: NodeId, node_count: usize },

    #[error("pair ({node}, {node}) is not a valid node pair")]
    InvalidPair { node: NodeId },

    #[error("({u}, {v}) is not an edge")]
    NotAnEdge { u: NodeId, v: NodeId },

    #[error("reference oracle limited to {max} nodes, graph has {node_count}")]
    OracleScale { node_count: usize, max: usize },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("cannot sample from an empty distribution")]
    EmptyDistribution,

    #[error("non-finite logit {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{what} needs {required} bytes, budget is {budget} bytes")]
    Resource {
        what: &'static str,
        required: u128,
        budget: u64,
    },

    #[error("power {power} missing from one of the compared profiles")]
    ProfileMismatch { power: usize },

    #[error("trace replay failed at event {index}: {message}")]
    Replay { index: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
