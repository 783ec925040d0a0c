use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

/// Errors produced by graph construction, analysis and file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(NodeId),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("edge weight must be finite and positive, got {0}")]
    InvalidWeight(f64),
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
    #[error("insufficient samples: need at least {needed}, have {have}")]
    InsufficientSamples { needed: usize, have: usize },
    #[error("node {0} is isolated")]
    IsolatedNode(NodeId),
    #[error("marked core set is empty")]
    EmptyMarkedCore,
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error stems from caller misuse (bad arguments) rather than bad data.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::SelfLoop(_)
                | Error::UnknownNode(_)
                | Error::InvalidWeight(_)
                | Error::InvalidParams(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
