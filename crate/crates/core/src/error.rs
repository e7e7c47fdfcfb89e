use thiserror::Error;

use crate::multigraph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("pair ({0}, {1}) listed twice")]
    DuplicatePair(Vertex, Vertex),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("power exponent must be positive")]
    ZeroPower,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not simple: pair ({0}, {1}) has multiplicity {2}")]
    NotSimple(Vertex, Vertex, u32),
    #[error("not a block: {0}")]
    NotABlock(String),
    #[error("color index {index} out of range 1..={size} at vertex {vertex}")]
    ColorOutOfRange { vertex: Vertex, index: usize, size: usize },
    #[error("transversal has {got} entries, graph has {expected} vertices")]
    TransversalLength { got: usize, expected: usize },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("covers overlap in {0}")]
    BadOverlap(String),
    #[error("{what} = {value} exceeds cap {limit}")]
    CapExceeded { what: &'static str, value: u128, limit: u128 },
    #[error("search aborted after {0} nodes (node budget)")]
    NodeBudget(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("bound does not apply: {0}")]
    Bound(BoundPrecondition),
}

/// Why an edge bound was not evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundPrecondition {
    #[error("k = {k} is below {min}")]
    KTooSmall { k: usize, min: usize },
    #[error("the graph is K_{0}")]
    IsComplete(usize),
    #[error("not a GDP-tree")]
    NotGdpTree,
    #[error("maximum degree {max} exceeds {limit}")]
    MaxDegree { max: u32, limit: u32 },
    #[error("contains K_{0}")]
    ContainsClique(usize),
}

impl Error {
    /// Resource errors map to their own CLI exit code.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::NodeBudget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
