//! Computing, constructing and certifying K_r-saturating edges in clique-free graphs.

pub(crate) mod clique;
pub mod cli;
pub mod constructions;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod optimizer;
pub mod oracle;
pub mod packing;
pub mod rational;
pub mod saturation;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet, DEFAULT_MAX_VERTICES};
pub use graph6::{from_graph6, to_graph6};
pub use saturation::{classify_nonedges, count_saturating, is_saturating_pair, SaturationReport, Workers};
