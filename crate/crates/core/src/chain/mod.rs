//! Exact analysis of edgelighter chains small enough to enumerate.
//!
//! States are ordered lexicographically by `(position, configuration bits)`
//! where the configuration is a bit mask over pair indices (bit `idx(u, v)`
//! set means the lamp of `{u, v}` is on). The ordering is part of the
//! contract: exported matrices are reproducible.

mod block;
mod cover_stats;
mod mixing;
mod model;
mod standard;

pub use block::{enumerate_block_chain, stationary_block, BlockChainLayout};
pub use cover_stats::{cover_time_stats, CoverProcess, CoverStats};
pub use mixing::{exact_mixing_time, mixing_time_with, tv_distance, MixingReport};
pub use model::{ChainModel, ChainState};
pub use standard::{enumerate_standard_chain, stationary_standard};

/// Upper limit on the number of enumerated states.
pub const MAX_STATES: usize = 100_000;
