use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};
use crate::graph::{pair_index, Graph, Partition};

use super::standard::LampFlip;
use super::{WalkKernel, WalkState};

/// Per-community flip probabilities `q_{i;1}`, `q_{i;2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockWalkParams {
    pub q_on_to_off: Vec<f64>,
    pub q_off_to_on: Vec<f64>,
}

impl BlockWalkParams {
    pub fn new(q_on_to_off: Vec<f64>, q_off_to_on: Vec<f64>) -> Result<Self> {
        if q_on_to_off.len() != q_off_to_on.len() {
            return Err(Error::DimensionMismatch {
                expected: q_on_to_off.len(),
                found: q_off_to_on.len(),
            });
        }
        for &q in q_on_to_off.iter() {
            check_probability("q_on_to_off", q)?;
        }
        for &q in q_off_to_on.iter() {
            check_probability("q_off_to_on", q)?;
        }
        Ok(Self { q_on_to_off, q_off_to_on })
    }

    /// Same `(q₁, q₂)` in every one of `k` communities.
    pub fn uniform(k: usize, q_on_to_off: f64, q_off_to_on: f64) -> Result<Self> {
        Self::new(vec![q_on_to_off; k], vec![q_off_to_on; k])
    }

    pub fn k(&self) -> usize {
        self.q_on_to_off.len()
    }
}

/// Cross-community edges and non-edges, bucketed by community pair, with
/// O(1) uniform sampling and swapping.
#[derive(Debug, Clone)]
pub struct CrossIndex {
    k: usize,
    edges: Vec<Vec<u32>>,
    non_edges: Vec<Vec<u32>>,
    slot: Vec<u32>,
}

impl CrossIndex {
    pub fn new(graph: &Graph, partition: &Partition) -> Self {
        let n = graph.n();
        let k = partition.k();
        let mut edges = vec![Vec::new(); k * k];
        let mut non_edges = vec![Vec::new(); k * k];
        let mut slot = vec![u32::MAX; graph.pair_count()];
        let mut idx = 0usize;
        for u in 0..n {
            let a = partition.label(u);
            for v in (u + 1)..n {
                let b = partition.label(v);
                if a != b {
                    let bucket = Self::bucket_of(k, a, b);
                    let list = if graph.has_pair(idx) {
                        &mut edges[bucket]
                    } else {
                        &mut non_edges[bucket]
                    };
                    slot[idx] = list.len() as u32;
                    list.push(idx as u32);
                }
                idx += 1;
            }
        }
        Self { k, edges, non_edges, slot }
    }

    #[inline]
    fn bucket_of(k: usize, a: usize, b: usize) -> usize {
        if a < b {
            a * k + b
        } else {
            b * k + a
        }
    }

    /// Number of edges `m_{ij}` between communities `i ≠ j`.
    pub fn edge_count(&self, i: usize, j: usize) -> usize {
        self.edges[Self::bucket_of(self.k, i, j)].len()
    }

    pub fn non_edge_count(&self, i: usize, j: usize) -> usize {
        self.non_edges[Self::bucket_of(self.k, i, j)].len()
    }

    /// Turns a uniform cross edge off and a uniform cross non-edge on.
    /// Returns the two pairs, or `None` when either list is empty.
    fn swap<R: Rng + ?Sized>(&mut self, i: usize, j: usize, rng: &mut R) -> Option<(usize, usize)> {
        let bucket = Self::bucket_of(self.k, i, j);
        let (m, r) = (self.edges[bucket].len(), self.non_edges[bucket].len());
        if m == 0 || r == 0 {
            return None;
        }
        let e1 = self.edges[bucket][rng.random_range(0..m)] as usize;
        let e2 = self.non_edges[bucket][rng.random_range(0..r)] as usize;
        Self::take(&mut self.edges[bucket], &mut self.slot, e1);
        Self::take(&mut self.non_edges[bucket], &mut self.slot, e2);
        Self::put(&mut self.non_edges[bucket], &mut self.slot, e1);
        Self::put(&mut self.edges[bucket], &mut self.slot, e2);
        Some((e1, e2))
    }

    fn take(list: &mut Vec<u32>, slot: &mut [u32], e: usize) {
        let at = slot[e] as usize;
        let last = list.pop().expect("non-empty list");
        if at < list.len() {
            list[at] = last;
            slot[last as usize] = at as u32;
        }
    }

    fn put(list: &mut Vec<u32>, slot: &mut [u32], e: usize) {
        slot[e] = list.len() as u32;
        list.push(e as u32);
    }
}

/// The block edgelighter walk. The kernel owns the cross-community index
/// built from the initial graph, so it must drive every step of the state it
/// was created for.
#[derive(Debug, Clone)]
pub struct BlockKernel {
    partition: Partition,
    flips: Vec<LampFlip>,
    cross: CrossIndex,
}

impl BlockKernel {
    pub fn new(g0: &Graph, partition: Partition, params: &BlockWalkParams) -> Result<Self> {
        if partition.n() != g0.n() {
            return Err(Error::DimensionMismatch { expected: g0.n(), found: partition.n() });
        }
        if params.k() != partition.k() {
            return Err(Error::DimensionMismatch { expected: partition.k(), found: params.k() });
        }
        let flips = params
            .q_on_to_off
            .iter()
            .zip(&params.q_off_to_on)
            .map(|(&a, &b)| LampFlip::new(a, b))
            .collect();
        let cross = CrossIndex::new(g0, &partition);
        Ok(Self { partition, flips, cross })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn cross(&self) -> &CrossIndex {
        &self.cross
    }
}

impl WalkKernel for BlockKernel {
    fn step<R: Rng + ?Sized>(&mut self, state: &mut WalkState, rng: &mut R) {
        let n = state.graph.n();
        let k = self.partition.k();
        let u = state.position;
        let i = self.partition.label(u);
        state.step += 1;

        let stay = k == 1 || rng.random_bool(0.5);
        if stay {
            let members = self.partition.members(i);
            let v = members[rng.random_range(0..members.len())];
            if v != u {
                let idx = pair_index(n, u, v);
                state.cover.mark(idx, state.step);
                self.flips[i].apply(state, idx, rng);
            }
            state.position = v;
            state.community = Some(i);
        } else {
            let mut j = rng.random_range(0..k - 1);
            if j >= i {
                j += 1;
            }
            if let Some((e1, e2)) = self.cross.swap(i, j, rng) {
                state.graph.set_pair(e1, false);
                state.graph.set_pair(e2, true);
            }
            let members = self.partition.members(j);
            let w = members[rng.random_range(0..members.len())];
            state.cover.mark(pair_index(n, u, w), state.step);
            state.position = w;
            state.community = Some(j);
        }
    }

    fn initial_position<R: Rng + ?Sized>(&self, _n: usize, rng: &mut R) -> (usize, Option<usize>) {
        let c = rng.random_range(0..self.partition.k());
        let members = self.partition.members(c);
        (members[rng.random_range(0..members.len())], Some(c))
    }
}

/// One step of the block walk. `kernel` must have been built from the state's
/// initial graph.
pub fn step_block<R: Rng + ?Sized>(state: &mut WalkState, kernel: &mut BlockKernel, rng: &mut R) {
    kernel.step(state, rng);
}
