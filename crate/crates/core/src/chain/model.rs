use std::collections::BTreeMap;
use std::fmt::Write as _;

use ndarray::Array2;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One enumerated chain state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainState {
    pub community: Option<usize>,
    pub position: usize,
    pub config: u64,
}

/// Explicit row-stochastic transition matrix (sparse rows with sorted
/// columns) plus its stationary vector.
#[derive(Debug, Clone)]
pub struct ChainModel<S> {
    n: usize,
    states: Vec<ChainState>,
    rows: Vec<Vec<(usize, S)>>,
    stationary: Vec<S>,
}

/// Accumulates transition mass per row; duplicate targets are summed.
pub(crate) struct RowBuilder<S> {
    row: BTreeMap<usize, S>,
}

impl<S: Scalar> RowBuilder<S> {
    pub(crate) fn new() -> Self {
        Self { row: BTreeMap::new() }
    }

    pub(crate) fn add(&mut self, to: usize, mass: S) {
        if mass > S::zero() {
            *self.row.entry(to).or_insert_with(S::zero) += mass;
        }
    }

    pub(crate) fn finish(self) -> Vec<(usize, S)> {
        self.row.into_iter().collect()
    }
}

impl<S: Scalar> ChainModel<S> {
    pub(crate) fn from_parts(n: usize, states: Vec<ChainState>, rows: Vec<Vec<(usize, S)>>, stationary: Vec<S>) -> Self {
        debug_assert_eq!(states.len(), rows.len());
        debug_assert_eq!(states.len(), stationary.len());
        Self { n, states, rows, stationary }
    }

    /// Builds a model from a dense row-stochastic matrix and a stationary
    /// vector; states are labelled by their index.
    pub fn from_dense(transition: &Array2<S>, stationary: Vec<S>) -> Result<Self> {
        let k = transition.nrows();
        if transition.ncols() != k {
            return Err(Error::DimensionMismatch { expected: k, found: transition.ncols() });
        }
        if stationary.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: stationary.len() });
        }
        let rows = (0..k)
            .map(|i| (0..k).filter(|&j| transition[[i, j]] != S::zero()).map(|j| (j, transition[[i, j]])).collect())
            .collect();
        let states = (0..k).map(|i| ChainState { community: None, position: i, config: 0 }).collect();
        Ok(Self::from_parts(k, states, rows, stationary))
    }

    /// Vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[ChainState] {
        &self.states
    }

    pub fn state_index(&self, state: &ChainState) -> Option<usize> {
        self.states.binary_search(state).ok()
    }

    pub fn row(&self, i: usize) -> &[(usize, S)] {
        &self.rows[i]
    }

    pub fn transition(&self, i: usize, j: usize) -> S {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |e| e.0).map_or(S::zero(), |k| row[k].1)
    }

    pub fn stationary(&self) -> &[S] {
        &self.stationary
    }

    pub fn to_dense(&self) -> Array2<S> {
        let k = self.len();
        let mut m = Array2::zeros((k, k));
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, p) in row {
                m[[i, j]] = p;
            }
        }
        m
    }

    /// `μ P`.
    pub fn step_distribution(&self, mu: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let m = mu[i];
            if m == S::zero() {
                continue;
            }
            for &(j, p) in row {
                out[j] += m * p;
            }
        }
        out
    }

    /// Largest `|Σⱼ P(i, j) - 1|`.
    pub fn row_sum_error(&self) -> S {
        self.rows
            .iter()
            .map(|r| (r.iter().map(|e| e.1).sum::<S>() - S::one()).abs())
            .fold(S::zero(), S::max)
    }

    /// `‖π P - π‖₁` for the given vector.
    pub fn stationarity_residual(&self, pi: &[S]) -> S {
        let next = self.step_distribution(pi);
        next.iter().zip(pi).map(|(a, b)| (*a - *b).abs()).sum()
    }

    /// `max |π(x) P(x, y) - π(y) P(y, x)|` over all state pairs.
    pub fn detailed_balance_residual(&self, pi: &[S]) -> S {
        (0..self.len())
            .into_par_iter()
            .map(|x| {
                self.rows[x]
                    .iter()
                    .map(|&(y, p)| (pi[x] * p - pi[y] * self.transition(y, x)).abs())
                    .fold(S::zero(), S::max)
            })
            .reduce(S::zero, S::max)
    }

    /// Dominant left eigenvector by power iteration from the uniform vector,
    /// stopping when the L1 change drops below `tol`.
    pub fn power_stationary(&self, tol: S, max_iterations: usize) -> Result<Vec<S>> {
        let k = self.len();
        let mut mu = vec![S::one() / S::of_usize(k); k];
        for _ in 0..max_iterations {
            let next = self.step_distribution(&mu);
            let change: S = next.iter().zip(&mu).map(|(a, b)| (*a - *b).abs()).sum();
            mu = next;
            if change < tol {
                let total: S = mu.iter().copied().sum();
                return Ok(mu.into_iter().map(|x| x / total).collect());
            }
        }
        Err(Error::NonConvergence { steps: max_iterations })
    }

    /// Dense class labels for a projection of the state space.
    pub fn classes_by<F: Fn(&ChainState) -> u64>(&self, key: F) -> Vec<usize> {
        let mut ids = BTreeMap::new();
        let keys: Vec<u64> = self.states.iter().map(key).collect();
        for &k in &keys {
            let next = ids.len();
            ids.entry(k).or_insert(next);
        }
        keys.iter().map(|k| ids[k]).collect()
    }

    /// CSV dump: `from,to,probability`.
    pub fn transitions_csv(&self) -> String {
        let mut s = String::from("from,to,probability\n");
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, p) in row {
                let _ = writeln!(s, "{i},{j},{p}");
            }
        }
        s
    }

    /// CSV dump: `index,community,position,config,stationary`.
    pub fn states_csv(&self) -> String {
        let mut s = String::from("index,community,position,config,stationary\n");
        for (i, st) in self.states.iter().enumerate() {
            let c = st.community.map_or(String::new(), |c| c.to_string());
            let _ = writeln!(s, "{i},{c},{},{},{}", st.position, st.config, self.stationary[i]);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn dense_round_trip_and_power_iteration() {
        let p: Array2<f64> = array![[0.9, 0.1], [0.3, 0.7]];
        let m = ChainModel::from_dense(&p, vec![0.75, 0.25]).unwrap();
        assert_eq!(m.to_dense(), p);
        assert!(m.row_sum_error() < 1e-15);
        assert!(m.stationarity_residual(m.stationary()) < 1e-15);
        let pi = m.power_stationary(1e-14, 100_000).unwrap();
        assert!((pi[0] - 0.75).abs() < 1e-12);
        assert!(m.detailed_balance_residual(m.stationary()) < 1e-15);
    }
}
