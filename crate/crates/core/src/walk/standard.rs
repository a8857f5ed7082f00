use rand::distr::{Bernoulli, Distribution};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Result};
use crate::graph::pair_index;

use super::{WalkKernel, WalkState};

/// Flip probabilities of the standard walk: `q₁` turns an on-lamp off, `q₂`
/// turns an off-lamp on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardWalkParams {
    pub q_on_to_off: f64,
    pub q_off_to_on: f64,
}

impl StandardWalkParams {
    pub fn new(q_on_to_off: f64, q_off_to_on: f64) -> Result<Self> {
        check_probability("q_on_to_off", q_on_to_off)?;
        check_probability("q_off_to_on", q_off_to_on)?;
        Ok(Self { q_on_to_off, q_off_to_on })
    }

    /// `q₁ = 1 - q`, `q₂ = q`: every crossed lamp becomes `Bern(q)`.
    pub fn resampling(q: f64) -> Result<Self> {
        Self::new(1.0 - q, q)
    }
}

/// Precomputed Bernoulli draws for a pair of flip probabilities.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LampFlip {
    off: Bernoulli,
    on: Bernoulli,
}

impl LampFlip {
    pub(crate) fn new(q_on_to_off: f64, q_off_to_on: f64) -> Self {
        Self {
            off: Bernoulli::new(q_on_to_off).expect("validated probability"),
            on: Bernoulli::new(q_off_to_on).expect("validated probability"),
        }
    }

    /// Resamples the lamp of pair `idx` after a traversal.
    #[inline]
    pub(crate) fn apply<R: Rng + ?Sized>(&self, state: &mut WalkState, idx: usize, rng: &mut R) {
        let on = state.graph.has_pair(idx);
        let flip = if on { &self.off } else { &self.on };
        if flip.sample(rng) {
            state.graph.set_pair(idx, !on);
        }
    }
}

#[derive(Debug, Clone)]
pub struct StandardKernel {
    params: StandardWalkParams,
    flip: LampFlip,
}

impl StandardKernel {
    pub fn new(params: StandardWalkParams) -> Self {
        Self {
            flip: LampFlip::new(params.q_on_to_off, params.q_off_to_on),
            params,
        }
    }

    pub fn params(&self) -> &StandardWalkParams {
        &self.params
    }
}

impl WalkKernel for StandardKernel {
    #[inline]
    fn step<R: Rng + ?Sized>(&mut self, state: &mut WalkState, rng: &mut R) {
        let n = state.graph.n();
        let u = state.position;
        let v = rng.random_range(0..n);
        state.step += 1;
        if v != u {
            let idx = pair_index(n, u, v);
            state.cover.mark(idx, state.step);
            self.flip.apply(state, idx, rng);
        }
        state.position = v;
    }

    fn initial_position<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> (usize, Option<usize>) {
        (rng.random_range(0..n), None)
    }
}

/// One step of the standard walk.
pub fn step_standard<R: Rng + ?Sized>(state: &mut WalkState, params: &StandardWalkParams, rng: &mut R) {
    StandardKernel::new(*params).step(state, rng);
}
