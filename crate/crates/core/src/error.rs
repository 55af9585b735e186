use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Parse failures are kept distinct from precondition failures so the CLI can
/// map them onto different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("graph has {n} vertices, more than the configured maximum {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex set must not be empty")]
    EmptyVertexSet,

    #[error("loops are not allowed (vertex {0})")]
    Loop(usize),

    #[error("{u}{v} is already an edge")]
    AlreadyEdge { u: usize, v: usize },

    #[error("graph contains K_{r}: witness {witness:?}")]
    CliqueFound { r: usize, witness: Vec<usize> },

    #[error("graph contains no triangle")]
    NoTriangle,

    #[error("n must be divisible by 66 (got {0})")]
    NotDivisibleBy66(usize),

    #[error("invalid triangle packing: {0}")]
    InvalidPacking(String),

    #[error("exact triangle packing gave up after {nodes} search nodes")]
    PackingGaveUp { nodes: u64 },

    #[error("infeasible density program: maximum attainable edge density is {max_edge_density}")]
    Infeasible { max_edge_density: f64 },

    #[error("no K4-free graph on {n} vertices with {e} edges")]
    NoQualifyingGraph { n: usize, e: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
