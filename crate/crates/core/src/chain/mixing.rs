use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::model::ChainModel;

/// Default cap on the number of steps before giving up.
const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Worst-start total variation curve and the resulting mixing time.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingReport<S> {
    pub t_mix: usize,
    /// `(t, max_x ‖Pᵗ(x, ·) − π‖_TV)` for `t = 0..=t_mix`.
    pub tv_curve: Vec<(usize, S)>,
    pub epsilon: S,
}

/// `½ Σ |μᵢ − νᵢ|`.
pub fn tv_distance<S: Scalar>(mu: &[S], nu: &[S]) -> Result<S> {
    if mu.len() != nu.len() {
        return Err(Error::DimensionMismatch { expected: mu.len(), found: nu.len() });
    }
    let sum: S = mu.iter().zip(nu).map(|(a, b)| (*a - *b).abs()).sum();
    Ok(sum * S::of(0.5))
}

/// Mixing time from point-mass starts at every state.
pub fn exact_mixing_time<S: Scalar>(model: &ChainModel<S>, epsilon: S) -> Result<MixingReport<S>> {
    mixing_time_with(model, epsilon, DEFAULT_STEP_CAP, None)
}

fn project<S: Scalar>(mu: &[S], classes: Option<&[usize]>, k: usize) -> Vec<S> {
    match classes {
        None => mu.to_vec(),
        Some(ids) => {
            let mut out = vec![S::zero(); k];
            for (&c, &m) in ids.iter().zip(mu) {
                out[c] += m;
            }
            out
        }
    }
}

/// Mixing time with an explicit step cap. With `classes`, distances are taken
/// between the laws of the class label (a projection of the state), which
/// gives the mixing time of that marginal.
pub fn mixing_time_with<S: Scalar>(
    model: &ChainModel<S>,
    epsilon: S,
    step_cap: usize,
    classes: Option<&[usize]>,
) -> Result<MixingReport<S>> {
    if !(epsilon > S::zero() && epsilon <= S::one()) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    let len = model.len();
    if len == 0 {
        return Err(Error::EmptyInput("chain has no states".into()));
    }
    let k = match classes {
        Some(ids) if ids.len() != len => return Err(Error::DimensionMismatch { expected: len, found: ids.len() }),
        Some(ids) => ids.iter().max().map_or(0, |m| m + 1),
        None => len,
    };
    let target = project(model.stationary(), classes, k);

    let mut dists: Vec<Vec<S>> = (0..len)
        .map(|x| {
            let mut mu = vec![S::zero(); len];
            mu[x] = S::one();
            mu
        })
        .collect();
    let worst = |dists: &[Vec<S>]| -> S {
        dists
            .par_iter()
            .map(|mu| tv_distance(&project(mu, classes, k), &target).expect("equal lengths"))
            .reduce(S::zero, S::max)
    };

    let mut tv_curve = vec![(0, worst(&dists))];
    let mut t = 0;
    while tv_curve[t].1 >= epsilon {
        if t >= step_cap {
            return Err(Error::NonConvergence { steps: step_cap });
        }
        dists.par_iter_mut().for_each(|mu| *mu = model.step_distribution(mu));
        t += 1;
        tv_curve.push((t, worst(&dists)));
    }
    Ok(MixingReport { t_mix: t, tv_curve, epsilon })
}
