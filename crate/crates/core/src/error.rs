use alloc::string::String;
use alloc::vec::Vec;

use crate::map::{Edge, Node};

/// Which goodness condition a description breaks.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Goodness {
    #[error("edges {first} and {second} share an endpoint but meet at crossing {crossing}")]
    AdjacentCrossing { first: Edge, second: Edge, crossing: usize },
    #[error("edges {first} and {second} cross more than once")]
    RepeatedCrossing { first: Edge, second: Edge },
    #[error("edge {edge} passes crossing {crossing} twice")]
    SelfCrossing { edge: Edge, crossing: usize },
    #[error("crossing {crossing} lies on {edges} edges instead of two")]
    CrossingArity { crossing: usize, edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("a drawing needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge from vertex {0} to itself")]
    SelfLoop(usize),
    #[error("edge {0} is listed twice")]
    DuplicateEdge(Edge),
    #[error("edge {0} is missing")]
    MissingEdge(Edge),
    #[error("rotation given for unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("no rotation given at {0}")]
    MissingRotation(Node),
    #[error("goodness violation: {0}")]
    GoodnessViolation(#[from] Goodness),
    #[error("inconsistent rotation at {node}: {reason}")]
    InconsistentRotation { node: Node, reason: &'static str },
    #[error("Euler relation fails: {nodes} nodes - {segments} segments + {faces} faces != 2")]
    EulerViolation { nodes: usize, segments: usize, faces: usize },
    #[error("the planarization is disconnected")]
    Disconnected,
    #[error("subset of {0} vertices is too small")]
    SubsetTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("canonical form requested for n = {n}, above the bound {bound}")]
    TooLarge { n: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("degenerate curves: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvexityError {
    #[error("expected 5 vertices, got {0}")]
    SubsetSize(usize),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("convexity oracles disagree: {0}")]
    OracleDisagreement(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HierarchyError {
    #[error("the drawing is not convex")]
    NotConvex,
    #[error("inverted K4 pair on {first:?} and {second:?}")]
    InvertedPairExists { first: [usize; 4], second: [usize; 4] },
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
    #[error("h-convexity oracles disagree: {0}")]
    OracleDisagreement(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("the drawing is not convex")]
    NotConvex,
    #[error("need at least 5 vertices, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("structure check failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RerouteError {
    #[error("rerouting would make {first} and {second} violate goodness")]
    GoodnessBroken { first: Edge, second: Edge },
    #[error("no side at vertex {via} avoids the edges {avoid:?}")]
    NoSide { via: usize, avoid: Vec<Edge> },
    #[error("bad reroute request: {0}")]
    BadRequest(String),
    #[error("{0:?} is not a forbidden K5")]
    NotForbiddenK5(Vec<usize>),
    #[error("hypothesis fails: {0}")]
    HypothesisFailed(String),
    #[error("claim violated: {claim} ({witness})")]
    ClaimViolated { claim: &'static str, witness: String },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
}
