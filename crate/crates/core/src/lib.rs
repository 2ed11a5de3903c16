//! Discrete edge curvatures, stochastic discrete Ricci flow (SDRF) rewiring
//! and over-squashing diagnostics for undirected, unweighted graphs.
//!
//! - [`graph`]: simple undirected graphs, edge-list ingestion, components.
//! - [`curvature`]: 1D Forman, augmented Forman, Haantjes and balanced Forman
//!   edge curvatures, plus brute-force reference oracles.
//! - [`sdrf`]: curvature-driven rewiring with softmax candidate sampling.
//! - [`diagnostics`]: decay of the minimum nonzero entry of powers of the
//!   normalized augmented adjacency matrix.
//! - [`cli`]: the `curvflow` command-line driver.

pub mod cli;
pub mod curvature;
pub mod diagnostics;
pub mod error;
pub mod generators;
pub mod graph;
pub mod sdrf;

/// Dense 0-based node index.
pub type NodeId = usize;

pub use curvature::{CurvatureKind, EdgeCurvature};
pub use diagnostics::{DecayProfile, NormalizedAdjacency};
pub use error::{Error, Result};
pub use graph::{DirectedPolicy, Graph, NodeLabelMap};
pub use sdrf::{run_sdrf, RewireTrace, SdrfConfig};
