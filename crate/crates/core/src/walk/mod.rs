//! Standard and block edgelighter walks.
//!
//! The walker sits on a vertex and every step jumps to a new vertex; the pair
//! it crosses has its lamp (edge indicator) resampled: an on-lamp turns off
//! with probability `q₁`, an off-lamp turns on with probability `q₂`. The block
//! walk adds a community level that swaps one cross edge for one cross
//! non-edge whenever the walker changes community.

mod block;
mod cover;
mod estimate;
mod run;
mod standard;

pub use block::{step_block, BlockKernel, BlockWalkParams, CrossIndex};
pub use cover::CoverTracker;
pub use estimate::{
    correlation_experiment, edge_correlation, estimate_traversal_prob, traversal_bounds,
    CorrelationEstimate, TraversalEstimate,
};
pub use run::{run_walk, snapshots, start_walk, Kernel, WalkSpec};
pub use standard::{step_standard, StandardKernel, StandardWalkParams};

use rand::Rng;

use crate::graph::Graph;

/// Chain state: configuration `Cₜ`, walker position `Lₜ`, its community `Bₜ`
/// (block walk only), the step counter and the set of traversed pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    pub graph: Graph,
    pub position: usize,
    pub community: Option<usize>,
    pub step: u64,
    pub cover: CoverTracker,
}

impl WalkState {
    pub fn new(graph: Graph, position: usize, community: Option<usize>) -> Self {
        assert!(position < graph.n(), "position {position} outside 0..{}", graph.n());
        let cover = CoverTracker::new(graph.n());
        Self {
            graph,
            position,
            community,
            step: 0,
            cover,
        }
    }

    pub fn cover_rate(&self) -> f64 {
        self.cover.rate()
    }
}

/// One transition of an edgelighter chain, mutating the state in place.
pub trait WalkKernel {
    fn step<R: Rng + ?Sized>(&mut self, state: &mut WalkState, rng: &mut R);

    /// Draws the starting vertex and, for the block walk, its community.
    fn initial_position<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> (usize, Option<usize>);
}
