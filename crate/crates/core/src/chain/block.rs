use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, Graph, Partition};
use crate::scalar::Scalar;
use crate::walk::BlockWalkParams;

use super::model::{ChainModel, ChainState, RowBuilder};
use super::MAX_STATES;

/// Largest number of pairs for which configurations are enumerated.
const MAX_PAIRS: usize = 24;

/// Pair masks of a partitioned vertex set and the fixed cross-community edge
/// counts of the restricted state space.
#[derive(Debug, Clone)]
pub struct BlockChainLayout {
    n: usize,
    partition: Partition,
    within: Vec<u64>,
    cross: Vec<(usize, usize, u64, u32)>,
    configs: Vec<u64>,
}

impl BlockChainLayout {
    pub fn new(g0: &Graph, partition: &Partition) -> Result<Self> {
        let n = g0.n();
        if partition.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: partition.n() });
        }
        let k = partition.k();
        if k < 2 {
            return Err(Error::InvalidArgument(
                "block chain needs K >= 2; with one community it is the standard chain".into(),
            ));
        }
        let pairs = pair_count(n);
        if pairs > MAX_PAIRS {
            return Err(Error::InstanceTooLarge { what: "block chain pair count", size: pairs, limit: MAX_PAIRS });
        }
        let mut within = vec![0u64; k];
        let mut cross_masks = vec![0u64; k * k];
        for u in 0..n {
            for v in (u + 1)..n {
                let bit = 1u64 << pair_index(n, u, v);
                let (a, b) = (partition.label(u), partition.label(v));
                if a == b {
                    within[a] |= bit;
                } else {
                    cross_masks[a.min(b) * k + a.max(b)] |= bit;
                }
            }
        }
        let g_mask: u64 = (0..pairs).filter(|&i| g0.has_pair(i)).map(|i| 1u64 << i).sum();
        let mut cross = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let mask = cross_masks[i * k + j];
                cross.push((i, j, mask, (g_mask & mask).count_ones()));
            }
        }
        let configs: Vec<u64> = (0..(1u64 << pairs))
            .filter(|&c| cross.iter().all(|&(_, _, mask, m)| (c & mask).count_ones() == m))
            .collect();
        let states = n * configs.len();
        if states > MAX_STATES {
            return Err(Error::InstanceTooLarge { what: "block chain state space", size: states, limit: MAX_STATES });
        }
        Ok(Self { n, partition: partition.clone(), within, cross, configs })
    }

    pub fn configs(&self) -> &[u64] {
        &self.configs
    }

    /// Pair mask of the pairs inside `community`.
    pub fn within_mask(&self, community: usize) -> u64 {
        self.within[community]
    }

    /// Fixed edge count `m_{ij}` between communities `i < j`.
    pub fn cross_edge_count(&self, i: usize, j: usize) -> u32 {
        self.cross_entry(i, j).3
    }

    fn cross_entry(&self, i: usize, j: usize) -> &(usize, usize, u64, u32) {
        let (a, b) = (i.min(j), i.max(j));
        self.cross.iter().find(|e| e.0 == a && e.1 == b).expect("i != j")
    }

    fn index(&self, position: usize, config: u64) -> usize {
        position * self.configs.len() + self.configs.binary_search(&config).expect("config in restricted space")
    }

    fn states(&self) -> Vec<ChainState> {
        (0..self.n)
            .flat_map(|u| {
                let c = self.partition.label(u);
                self.configs.iter().map(move |&config| ChainState { community: Some(c), position: u, config })
            })
            .collect()
    }
}

fn check_params(partition: &Partition, params: &BlockWalkParams) -> Result<()> {
    if params.k() != partition.k() {
        return Err(Error::DimensionMismatch { expected: partition.k(), found: params.k() });
    }
    if params.q_on_to_off.iter().chain(&params.q_off_to_on).any(|&q| q == 0.0) {
        return Err(Error::DegenerateChain("a zero flip probability makes the block chain reducible".into()));
    }
    Ok(())
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Closed-form stationary law
/// `π•(Bᵢ, u, c) ∝ (1/K)(1/|Bᵢ|) Πⱼ q_{j;2}^{m_j(c)} q_{j;1}^{r_j(c)} / Π_{i<j} C(nᵢnⱼ, m_{ij})`
/// over the restricted state space, in the order of [`enumerate_block_chain`].
pub fn stationary_block<S: Scalar>(g0: &Graph, partition: &Partition, params: &BlockWalkParams) -> Result<Vec<S>> {
    let layout = BlockChainLayout::new(g0, partition)?;
    check_params(partition, params)?;
    Ok(stationary_for(&layout, params))
}

fn stationary_for<S: Scalar>(layout: &BlockChainLayout, params: &BlockWalkParams) -> Vec<S> {
    let p = &layout.partition;
    let k = p.k();
    let cross_norm: f64 = layout
        .cross
        .iter()
        .map(|&(i, j, _, m)| binomial((p.size(i) * p.size(j)) as u64, m as u64))
        .product();
    let config_weight = |c: u64| -> S {
        (0..k)
            .map(|j| {
                let mask = layout.within[j];
                let on = (c & mask).count_ones() as i32;
                let off = mask.count_ones() as i32 - on;
                S::of(params.q_off_to_on[j]).powi(on) * S::of(params.q_on_to_off[j]).powi(off)
            })
            .fold(S::one(), |a, b| a * b)
    };
    let config_weights: Vec<S> = layout.configs.iter().map(|&c| config_weight(c)).collect();
    let mut weights = Vec::with_capacity(layout.n * layout.configs.len());
    for u in 0..layout.n {
        let position = S::one() / (S::of_usize(k) * S::of_usize(p.size(p.label(u))) * S::of(cross_norm));
        weights.extend(config_weights.iter().map(|&w| position * w));
    }
    let total: S = weights.iter().copied().sum();
    weights.into_iter().map(|w| w / total).collect()
}

/// Exact transition matrix of the block walk on the state space where every
/// cross-community edge count equals its value in `g0`.
pub fn enumerate_block_chain<S: Scalar>(
    g0: &Graph,
    partition: &Partition,
    params: &BlockWalkParams,
) -> Result<ChainModel<S>> {
    let layout = BlockChainLayout::new(g0, partition)?;
    check_params(partition, params)?;
    let n = layout.n;
    let k = partition.k();
    let half = S::of(0.5);
    let leave_each = half / S::of_usize(k - 1);

    let mut rows = Vec::with_capacity(n * layout.configs.len());
    for u in 0..n {
        let i = partition.label(u);
        let stay_each = half / S::of_usize(partition.size(i));
        let (q1, q2) = (S::of(params.q_on_to_off[i]), S::of(params.q_off_to_on[i]));
        for &c in &layout.configs {
            let mut row = RowBuilder::new();
            for &v in partition.members(i) {
                if v == u {
                    row.add(layout.index(u, c), stay_each);
                    continue;
                }
                let bit = 1u64 << pair_index(n, u, v);
                let flip = if c & bit != 0 { q1 } else { q2 };
                row.add(layout.index(v, c ^ bit), stay_each * flip);
                row.add(layout.index(v, c), stay_each * (S::one() - flip));
            }
            for j in (0..k).filter(|&j| j != i) {
                let mask = layout.cross_entry(i, j).2;
                let on: Vec<u64> = bits(c & mask).collect();
                let off: Vec<u64> = bits(!c & mask).collect();
                let move_each = leave_each / S::of_usize(partition.size(j));
                let targets: Vec<(u64, S)> = if on.is_empty() || off.is_empty() {
                    vec![(c, move_each)]
                } else {
                    let swap = move_each / S::of_usize(on.len() * off.len());
                    on.iter().flat_map(|&e1| off.iter().map(move |&e2| (c ^ e1 ^ e2, swap))).collect()
                };
                for &w in partition.members(j) {
                    for &(c2, mass) in &targets {
                        row.add(layout.index(w, c2), mass);
                    }
                }
            }
            rows.push(row.finish());
        }
    }
    let stationary = stationary_for(&layout, params);
    Ok(ChainModel::from_parts(n, layout.states(), rows, stationary))
}

fn bits(mut mask: u64) -> impl Iterator<Item = u64> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let low = mask & mask.wrapping_neg();
            mask ^= low;
            Some(low)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> (Graph, Partition) {
        // communities {0, 1} and {2, 3}, one cross edge {1, 2}
        (Graph::from_edges(4, [(0, 1), (1, 2)]), Partition::contiguous(&[2, 2]).unwrap())
    }

    #[test]
    fn swap_probability_by_hand() {
        let (g, p) = toy();
        let params = BlockWalkParams::uniform(2, 0.5, 0.5).unwrap();
        let m = enumerate_block_chain::<f64>(&g, &p, &params).unwrap();
        let n = 4;
        let e = |u, v| 1u64 << pair_index(n, u, v);
        let c = e(0, 1) | e(1, 2);
        let from = m.state_index(&ChainState { community: Some(0), position: 0, config: c }).unwrap();
        // remove {1,2}, add {0,3}, land on vertex 3
        let c2 = e(0, 1) | e(0, 3);
        let to = m.state_index(&ChainState { community: Some(1), position: 3, config: c2 }).unwrap();
        let expected = 0.5 * 1.0 * 0.5 * (1.0 / (1.0 * 3.0));
        assert!((m.transition(from, to) - expected).abs() < 1e-15);
        assert!(m.row_sum_error() < 1e-12);
    }

    #[test]
    fn reachable_states_keep_cross_count() {
        let (g, p) = toy();
        let params = BlockWalkParams::uniform(2, 0.3, 0.6).unwrap();
        let m = enumerate_block_chain::<f64>(&g, &p, &params).unwrap();
        let layout = BlockChainLayout::new(&g, &p).unwrap();
        let mask = layout.cross_entry(0, 1).2;
        for x in 0..m.len() {
            for &(y, _) in m.row(x) {
                assert_eq!((m.states()[y].config & mask).count_ones(), 1);
            }
        }
        // 2 within bits free, C(4,1) cross configurations, 4 positions
        assert_eq!(m.len(), 4 * 4 * 4);
    }

    #[test]
    fn equal_flips_uniform_over_configs() {
        let (g, p) = toy();
        let params = BlockWalkParams::uniform(2, 0.4, 0.4).unwrap();
        let pi = stationary_block::<f64>(&g, &p, &params).unwrap();
        assert!(pi.iter().all(|&x| (x - pi[0]).abs() < 1e-15));
    }

    #[test]
    fn refuses_one_block() {
        let g = Graph::empty(3);
        let params = BlockWalkParams::uniform(1, 0.5, 0.5).unwrap();
        assert!(enumerate_block_chain::<f64>(&g, &Partition::trivial(3), &params).is_err());
        let (g, p) = toy();
        let zero = BlockWalkParams::uniform(2, 0.0, 0.5).unwrap();
        assert!(matches!(enumerate_block_chain::<f64>(&g, &p, &zero), Err(Error::DegenerateChain(_))));
    }
}
