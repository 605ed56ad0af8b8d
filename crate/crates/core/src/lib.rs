//! Decomposing graphs into few edge-disjoint cycles and single edges.
//!
//! The pipeline follows the random-graph strategy: repair parity with a small
//! set of single edges, strip long cycles by rotation-extension, close the
//! bounded-degree remainder's matchings into cycles through a reserved random
//! subgraph, and peel what is left.

pub mod connect;
pub mod cycles;
pub mod decomposition;
pub mod error;
pub mod euler;
pub mod graph;
pub mod hamilton;
pub mod pipeline;
mod posa;
pub mod probe;
pub mod random;
pub mod verify;

pub use decomposition::{Decomposition, Provenance};
pub use error::{Error, Result};
pub use graph::{Cycle, Edge, EdgeSet, Graph, Vertex};
pub use pipeline::{decompose, PipelineConfig, Regime, RunReport};
pub use random::Seed;
