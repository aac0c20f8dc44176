use thiserror::Error;

use crate::graph::NodeId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} out of range for graph with {n} nodes")]
    InvalidNode { node: NodeId, n: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge ({u}, {v}) has non-positive or non-finite length {length}")]
    NonPositiveLength { u: NodeId, v: NodeId, length: f64 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph has {n} nodes, above the cap of {cap} for {what}")]
    SizeCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("gave up after {0} sampling attempts")]
    RetryLimit(usize),
    #[error("graph has no rotation system")]
    MissingRotation,
    #[error("graph has no layer labels or root")]
    MissingLayers,
    #[error("malformed graph json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
