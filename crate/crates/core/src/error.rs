use thiserror::Error;

use crate::graph::EdgeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {0} is not an edge of the graph")]
    UnknownEdge(EdgeId),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("edge {edge} references vertex {vertex} but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        edge: EdgeId,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("length of edge {0} must be positive")]
    NonPositiveLength(EdgeId),
    #[error("length assignment does not match the edge set")]
    LengthMismatch,
    #[error("orientation must assign a direction to every edge (missing edge {0})")]
    PartialOrientation(EdgeId),
    #[error("{what} exceeds the enumeration bound ({size} > {bound})")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not 3-edge connected")]
    NotThreeEdgeConnected,
    #[error("not a tropical curve: {0}")]
    NotTropicalCurve(String),
    #[error("genus must be at least 2 (got {0})")]
    GenusTooSmall(usize),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("routes disagree: {0}")]
    RouteDisagreement(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
