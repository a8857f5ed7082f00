use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index};
use crate::scalar::Scalar;
use crate::walk::StandardWalkParams;

use super::model::{ChainModel, ChainState, RowBuilder};
use super::MAX_STATES;

fn check_size(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("chain needs n >= 2, got {n}")));
    }
    let pairs = pair_count(n);
    let states = if pairs >= 32 { usize::MAX } else { n << pairs };
    if states > MAX_STATES {
        return Err(Error::InstanceTooLarge { what: "standard chain state space", size: states, limit: MAX_STATES });
    }
    Ok(pairs)
}

fn check_nondegenerate(params: &StandardWalkParams) -> Result<()> {
    if params.q_on_to_off == 0.0 || params.q_off_to_on == 0.0 {
        return Err(Error::DegenerateChain(format!(
            "q_on_to_off = {}, q_off_to_on = {} makes the chain reducible",
            params.q_on_to_off, params.q_off_to_on
        )));
    }
    Ok(())
}

/// Closed-form stationary law `π°(u, c) ∝ q₂^{#on(c)} q₁^{#off(c)}`, in the
/// state order of [`enumerate_standard_chain`].
pub fn stationary_standard<S: Scalar>(n: usize, params: &StandardWalkParams) -> Result<Vec<S>> {
    let pairs = check_size(n)?;
    check_nondegenerate(params)?;
    let (q1, q2) = (S::of(params.q_on_to_off), S::of(params.q_off_to_on));
    let configs = 1usize << pairs;
    let weights: Vec<S> = (0..configs)
        .map(|c| {
            let on = (c as u64).count_ones() as i32;
            q2.powi(on) * q1.powi(pairs as i32 - on)
        })
        .collect();
    let total: S = weights.iter().copied().sum::<S>() * S::of_usize(n);
    Ok((0..n).flat_map(|_| weights.iter().map(move |&w| w / total)).collect())
}

/// Exact transition matrix of the standard walk on `n ≤ 5` vertices, with
/// the closed-form stationary vector attached.
pub fn enumerate_standard_chain<S: Scalar>(n: usize, params: &StandardWalkParams) -> Result<ChainModel<S>> {
    let pairs = check_size(n)?;
    let stationary = stationary_standard(n, params)?;
    let configs = 1usize << pairs;
    let inv_n = S::one() / S::of_usize(n);
    let (q1, q2) = (S::of(params.q_on_to_off), S::of(params.q_off_to_on));
    let index = |pos: usize, config: usize| pos * configs + config;

    let mut states = Vec::with_capacity(n * configs);
    let mut rows = Vec::with_capacity(n * configs);
    for u in 0..n {
        for c in 0..configs {
            states.push(ChainState { community: None, position: u, config: c as u64 });
            let mut row = RowBuilder::new();
            row.add(index(u, c), inv_n);
            for v in (0..n).filter(|&v| v != u) {
                let bit = 1usize << pair_index(n, u, v);
                let flip = if c & bit != 0 { q1 } else { q2 };
                row.add(index(v, c ^ bit), inv_n * flip);
                row.add(index(v, c), inv_n * (S::one() - flip));
            }
            rows.push(row.finish());
        }
    }
    Ok(ChainModel::from_parts(n, states, rows, stationary))
}
