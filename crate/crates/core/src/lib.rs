//! Exact search and verification toolkit for anti-Ramsey numbers of
//! triangle tilings (the rainbow Corrádi–Hajnal problem).
//!
//! The crate builds the extremal graphs and rainbow-avoiding colorings,
//! evaluates every closed-form bound exactly, decomposes graphs into
//! maximal tiling triples with ideal partitions, and validates the
//! structural bounds against brute-force oracles on small instances.

pub mod config;
pub mod construct;
pub mod formula;
pub mod graph;
pub mod lemmas;
pub mod oracle;
pub mod rainbow;
pub mod report;
pub mod scan;
pub mod search;
pub mod tiling;

pub use config::RunConfig;
pub use formula::{PartitionStats, ProblemParams};
pub use graph::{Graph, VertexSet};
pub use rainbow::EdgeColoring;
pub use search::SearchOutcome;
pub use tiling::TilingTriple;
