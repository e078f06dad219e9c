//! Multi-round distributed submodular maximization under a fixed per-machine capacity.
//!
//! The ground set is repeatedly split across `⌈|A|/µ⌉` simulated machines, each machine compresses
//! its share to at most `k` items with a single-machine subprocedure, and the surviving items are
//! merged and split again until a single machine can hold them. The best set produced by any
//! machine in any round is returned.
//!
//! The crate is organised bottom-up:
//!
//! - [`dataset`]: dense-vector ground sets (loading, normalization, synthetic mixtures, subsampling).
//! - [`objective`]: value oracles (exemplar clustering, log-determinant active sets, weighted
//!   coverage) with incremental marginal gains and call accounting.
//! - [`solver`]: single-machine compression subprocedures, constraints, brute force and the
//!   β-nice checker.
//! - [`partition`]: balanced random partitioning over virtual slots.
//! - [`distree`]: the tree-based compression framework and distributed baselines.
//! - [`experiment`]: configuration, result tables and CSV emission for experiment sweeps.
//!
//! See the `examples/` directory of this crate for runnable walkthroughs of each capability.

pub mod dataset;
pub mod distree;
mod error;
pub mod experiment;
pub mod objective;
pub mod partition;
pub mod seed;
pub mod solver;

pub use error::{Error, Result};

/// Index of an item of the ground set. Items are numbered `0..n`.
pub type ItemId = usize;
