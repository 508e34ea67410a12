use alloc::boxed::Box;
use alloc::string::String;

use crate::henneberg::Witness;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {0} does not exist")]
    EdgeOutOfRange(usize),

    #[error("walk is disconnected before step {0}")]
    DisconnectedWalk(usize),

    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(&'static str),

    #[error("subgraph is disconnected")]
    Disconnected,

    #[error("vertex set is empty")]
    EmptySubset,

    #[error("graph has {n} vertices, above the brute-force bound of {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("graph is not (2,{ell})-sparse")]
    NotSparse { ell: u8 },

    #[error("graph is not a P(2,1)-graph")]
    NotP21,

    #[error("gain arity does not match the {0} model")]
    ArityMismatch(&'static str),

    #[error("edge {0} has zero length in this placement")]
    ZeroLengthEdge(usize),

    #[error("placement does not fit the graph or model: {0}")]
    BadPlacement(&'static str),

    #[error("T-gain table does not belong to this graph")]
    InconsistentTable,

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("no construction sequence is defined for the {0} model")]
    UnsupportedModel(&'static str),

    #[error("window is empty")]
    EmptyWindow,

    #[error("not reducible to a single loop: {0}")]
    NotReducible(Box<Witness>),
}
