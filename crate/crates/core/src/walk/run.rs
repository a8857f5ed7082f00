use std::ops::ControlFlow;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::rng::RngStream;

use super::{BlockKernel, BlockWalkParams, StandardKernel, StandardWalkParams, WalkKernel, WalkState};

/// Which walk to run.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkSpec {
    Standard(StandardWalkParams),
    Block {
        params: BlockWalkParams,
        partition: Partition,
    },
}

/// Either kernel, dispatched statically.
#[derive(Debug, Clone)]
pub enum Kernel {
    Standard(StandardKernel),
    Block(BlockKernel),
}

impl WalkKernel for Kernel {
    #[inline]
    fn step<R: Rng + ?Sized>(&mut self, state: &mut WalkState, rng: &mut R) {
        match self {
            Kernel::Standard(k) => k.step(state, rng),
            Kernel::Block(k) => k.step(state, rng),
        }
    }

    fn initial_position<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> (usize, Option<usize>) {
        match self {
            Kernel::Standard(k) => k.initial_position(n, rng),
            Kernel::Block(k) => k.initial_position(n, rng),
        }
    }
}

/// Builds the kernel for `spec` and the initial state on `g0`, drawing the
/// starting vertex from `rng` (uniform on `V`; for the block walk a uniform
/// community, then a uniform member).
pub fn start_walk<R: Rng + ?Sized>(g0: &Graph, spec: &WalkSpec, rng: &mut R) -> Result<(Kernel, WalkState)> {
    if g0.n() == 0 {
        return Err(Error::InvalidArgument("walk needs at least one vertex".into()));
    }
    let kernel = match spec {
        WalkSpec::Standard(p) => Kernel::Standard(StandardKernel::new(*p)),
        WalkSpec::Block { params, partition } => {
            Kernel::Block(BlockKernel::new(g0, partition.clone(), params)?)
        }
    };
    let (position, community) = kernel.initial_position(g0.n(), rng);
    Ok((kernel, WalkState::new(g0.clone(), position, community)))
}

/// Advances `state` by up to `steps` steps, calling `observer` at step 0 and
/// at every positive multiple of `checkpoint_every`. The observer may stop the
/// run early by returning `ControlFlow::Break`.
pub fn run_walk<K, R, F>(
    kernel: &mut K,
    state: &mut WalkState,
    steps: u64,
    checkpoint_every: u64,
    rng: &mut R,
    mut observer: F,
) -> Result<()>
where
    K: WalkKernel,
    R: Rng + ?Sized,
    F: FnMut(&WalkState) -> ControlFlow<()>,
{
    if checkpoint_every == 0 {
        return Err(Error::InvalidArgument("checkpoint_every must be >= 1".into()));
    }
    let start = state.step;
    if observer(state).is_break() {
        return Ok(());
    }
    let end = start + steps;
    while state.step < end {
        let next = (state.step + checkpoint_every).min(end);
        while state.step < next {
            kernel.step(state, rng);
        }
        if (state.step - start).is_multiple_of(checkpoint_every) && observer(state).is_break() {
            break;
        }
    }
    Ok(())
}

/// Runs a walk from `g0` and returns a copy of the state at every checkpoint.
pub fn snapshots(
    g0: &Graph,
    spec: &WalkSpec,
    steps: u64,
    checkpoint_every: u64,
    stream: RngStream,
) -> Result<Vec<WalkState>> {
    let mut rng = stream.generator();
    let (mut kernel, mut state) = start_walk(g0, spec, &mut rng)?;
    let mut out = Vec::new();
    run_walk(&mut kernel, &mut state, steps, checkpoint_every, &mut rng, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
