use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),

    #[error("edge ({0}, {1}) is not present in the graph")]
    MissingEdge(Vertex, Vertex),

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid split spec: {0}")]
    InvalidSplitSpec(String),

    #[error("target vertex set has odd cardinality {0}")]
    OddTargetSet(usize),

    #[error("graph is not Euler: vertex {vertex} has odd degree {degree}")]
    NotEuler { vertex: Vertex, degree: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid pair request: {0}")]
    InvalidPairRequest(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
