//! Edgelighter noise processes on graphs, seeded graph matching, and the
//! anonymization-versus-mixing experiment pipeline.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds the packed-bitset [`Graph`], random graph samplers,
//!   permutations and the graph matching objective.
//! * [`walk`] implements the standard and block edgelighter walks together
//!   with cover tracking and Monte Carlo estimators.
//! * [`chain`] enumerates tiny edgelighter chains exactly and computes
//!   stationary laws and total variation mixing times.
//! * [`matching`] contains the exact brute-force matcher, the linear
//!   assignment solver and the seeded Frank-Wolfe matcher.
//! * [`experiments`] wires everything into sweeps producing traces and
//!   anonymization-time estimates.
//! * [`io`] reads edge lists and label files and writes CSV/SVG output.
//!
//! Numeric kernels are generic over [`Scalar`]; the `*64` aliases below fix
//! the scalar to `f64`, which is what every experiment uses.

pub mod chain;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod matching;
pub mod rng;
pub mod scalar;
pub mod stats;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{Graph, Partition, PermutationMap, SbmParams};
pub use rng::RngStream;
pub use scalar::Scalar;

/// Exact chain model over `f64`.
pub type ChainModel64 = chain::ChainModel<f64>;
/// Exact chain model over `f32`.
pub type ChainModel32 = chain::ChainModel<f32>;
/// Mixing report over `f64`.
pub type MixingReport64 = chain::MixingReport<f64>;
/// Linear assignment result over `f64` costs.
pub type Assignment64 = matching::Assignment<f64>;
/// Log-log fit over `f64`.
pub type LogLogFit64 = experiments::LogLogFit<f64>;
