//! Cover times of random graphs with prescribed degree sequences that allow
//! vertices of degree two.
//!
//! The crate is organised around the experiment pipeline:
//!
//! * [`graph`] builds degree sequences, configuration-model pairings, kernels,
//!   subdivided graphs and `G(n, p)` cores.
//! * [`walk`] simulates (weighted, optionally lazy) random walks and estimates
//!   cover times, return counts and first-visit probabilities.
//! * [`exact`] evaluates transition matrices, mixing, conductance, spectral
//!   gaps, effective resistances and the Matthews / Jerrum–Sinclair / Gillman
//!   bounds on small instances.
//! * [`trees`] computes effective resistances of subdivided trees.
//! * [`surrogate`] contracts long induced paths into weighted edges.
//! * [`predict`] evaluates the closed-form asymptotic cover-time predictions.

pub mod error;
pub mod exact;
pub mod graph;
pub mod predict;
pub mod rng;
pub mod stats;
pub mod surrogate;
pub mod trees;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{DegreeSequence, Multigraph, SubdividedGraph};
pub use walk::{CoverStats, WeightedGraph};
