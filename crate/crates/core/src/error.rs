use thiserror::Error;

use crate::roots::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("rank mismatch: expected length {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for a rank-{rank} diagram")]
    VertexOutOfRange { vertex: usize, rank: usize },

    #[error("weight {0} is not dominant (a coordinate is negative)")]
    NotDominant(Weight),

    #[error("diagram mismatch: {left} vs {right}")]
    DiagramMismatch { left: String, right: String },

    #[error("unknown crystal vertex {0}")]
    UnknownVertex(u32),

    #[error("component {component} has {sources} source vertices, expected exactly one")]
    SourceCount { component: usize, sources: usize },

    #[error("component {component} rooted at weight {weight} is not isomorphic to B({weight})")]
    NotHighestWeight { component: usize, weight: Weight },

    #[error("vertex cap of {cap} exceeded")]
    VertexCapExceeded { cap: usize },

    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),

    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),

    #[error("halved quantity {quantity} has odd numerator {numerator}")]
    OddNumerator { quantity: &'static str, numerator: i64 },

    #[error("invalid sl2 label: {0}")]
    InvalidLabel(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("subspace not contained in ambient space: {0}")]
    NotContained(String),

    #[error("datum is not stable (closure of im p is not all of V)")]
    Unstable,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Resource exhaustion as opposed to a violated precondition.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::VertexCapExceeded { .. })
    }
}
