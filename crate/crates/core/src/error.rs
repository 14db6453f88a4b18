use crate::graph::{Edge, VertexId};

/// Everything that can go wrong in this crate.
///
/// Variants fall into three groups: malformed input (bad ids, bad
/// parameters, unparsable files), violations of the fault model's
/// consistency rule, and requests that exceed a documented search cap.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph with {vertex_count} vertices")]
    InvalidVertex { vertex: VertexId, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),

    #[error("edge {0} is not part of the graph")]
    UnknownEdge(Edge),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(VertexId),

    #[error("hypercube dimension {n} must lie in 1..={cap}")]
    InvalidDimension { n: usize, cap: usize },

    #[error("bit position {position} must lie in 1..={dimension}")]
    PositionOutOfRange { position: usize, dimension: usize },

    #[error("invalid hypercube label {0:?}")]
    InvalidLabel(String),

    #[error("faulty edge {edge} is incident to faulty vertex {vertex}")]
    Inconsistent { edge: Edge, vertex: VertexId },

    #[error("value belongs to a different graph")]
    GraphMismatch,

    #[error("the two fault pairs are identical")]
    IdenticalPairs,

    #[error("test ({tester} -> {testee}) has no result in the syndrome")]
    IncompleteSyndrome { tester: VertexId, testee: VertexId },

    #[error("test ({tester} -> {testee}) does not exist in the graph")]
    UnknownTest { tester: VertexId, testee: VertexId },

    #[error("no explicit outcome for arbitrary test ({tester} -> {testee})")]
    MissingAssignment { tester: VertexId, testee: VertexId },

    #[error("fault pair has {vertices} faulty vertices and {edges} faulty edges, exceeding bounds ({t}, {s})")]
    BoundViolation {
        vertices: usize,
        edges: usize,
        t: usize,
        s: usize,
    },

    #[error("vertex {vertex} has degree {degree}, but the construction needs {required}")]
    DegreeRequirement {
        vertex: VertexId,
        degree: usize,
        required: String,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown topology {0:?}")]
    UnknownTopology(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} exceeds the supported limit of {limit}")]
    TooLarge { what: &'static str, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
