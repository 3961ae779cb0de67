use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("vertex sets overlap at {0}")]
    Overlap(Vertex),

    #[error("graph is not connected")]
    Disconnected,

    #[error("vertex set does not induce a connected subgraph")]
    SetDisconnected,

    #[error("vertex {0} is not in the given vertex set")]
    NotInSet(Vertex),

    #[error("empty vertex set: {0}")]
    EmptySet(&'static str),

    #[error("parent map of the tree is malformed at vertex {0}")]
    MalformedTree(Vertex),

    #[error("tree edge {child}-{parent} is not an edge of the graph")]
    TreeEdgeMissing { child: Vertex, parent: Vertex },

    #[error("vertices {0} and {1} are comparable in the tree order")]
    Comparable(Vertex, Vertex),

    #[error("endpoints coincide at vertex {0}")]
    SameVertex(Vertex),

    #[error("{0} and {1} are adjacent, no separator avoids both sides")]
    Inseparable(Vertex, Vertex),

    #[error("neighbourhood is not a chain: {0} and {1} are incomparable")]
    NotAChain(Vertex, Vertex),

    #[error("vertex set is not a component of the graph minus the tree")]
    NotAComponent,

    #[error("component has no neighbour in the tree")]
    NoAttachment,

    #[error("subtree root {root} is not adjacent to attachment vertex {attachment}")]
    NotAdjacent { root: Vertex, attachment: Vertex },

    #[error("subtree does not span the component")]
    SubtreeMismatch,

    #[error("target {0} lies outside the component")]
    TargetOutside(Vertex),

    #[error("cover misses vertex {0}")]
    CoverIncomplete(Vertex),

    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,

    #[error("at least two branch vertices are required, got {0}")]
    TooFewBranchVertices(usize),

    #[error("search budget must be positive")]
    ZeroBudget,

    #[error("generator failure: {0}")]
    Generator(String),

    #[error("parse error: {0}")]
    Parse(String),
}
