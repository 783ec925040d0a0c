//! Evolving scale-free networks with community and core-periphery
//! structure, together with the tooling to check them: K-shell and S-shell
//! decomposition, core detection against ground truth, degree/strength
//! distributions with power-law fits, clustering and nearest-neighbor
//! profiles, and a two-snapshot core-evolution analysis for timestamped
//! edge lists.

pub mod corecheck;
pub mod decomposition;
pub mod error;
pub mod generator;
pub mod graph;
pub mod io;
pub mod manifest;
pub mod metrics;
pub mod repro;
pub mod temporal;

pub use error::{Error, Result};
pub use generator::{generate, Generator, Model, ModelParams};
pub use graph::{LabeledGraph, NodeId, NodeStats, NodeType};
