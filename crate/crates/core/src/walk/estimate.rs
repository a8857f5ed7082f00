use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{pair_count, sample_er, Graph};
use crate::rng::RngStream;

use super::{StandardKernel, StandardWalkParams, WalkKernel, WalkState};

/// Monte Carlo estimate of the probability that a fixed pair is untraversed
/// after `t` steps, with the closed-form bracket on the true value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraversalEstimate {
    pub t: u64,
    pub n: usize,
    pub replicates: usize,
    pub p_hat: f64,
    pub stderr: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

impl TraversalEstimate {
    /// Whether `p_hat` lies within `k` standard errors of the bracket.
    pub fn within_bounds(&self, k: f64) -> bool {
        self.p_hat >= self.lower_bound - k * self.stderr && self.p_hat <= self.upper_bound + k * self.stderr
    }
}

/// `exp{-t/(C-1)}` and `exp{-⌊(t+1)/2⌋/(C+n)}` with `C = n(n-1)/2`; valid
/// for `n > 3`.
pub fn traversal_bounds(n: usize, t: u64) -> (f64, f64) {
    let c = pair_count(n) as f64;
    let lower = (-(t as f64) / (c - 1.0)).exp();
    let upper = (-(t.div_ceil(2) as f64) / (c + n as f64)).exp();
    (lower, upper)
}

/// Whether the pair `{0, 1}` survives `t` transitions of a walker that starts
/// at a uniform vertex and jumps to uniform vertices.
fn pair_untraversed<R: Rng + ?Sized>(n: usize, t: u64, rng: &mut R) -> bool {
    let mut u = rng.random_range(0..n);
    for _ in 0..t {
        let v = rng.random_range(0..n);
        if (u == 0 && v == 1) || (u == 1 && v == 0) {
            return false;
        }
        u = v;
    }
    true
}

/// Estimates `𝔭ₜ` for the pair `{0, 1}`; replicate `r` draws from
/// `stream.child(r)`.
pub fn estimate_traversal_prob(n: usize, t: u64, replicates: usize, stream: RngStream) -> Result<TraversalEstimate> {
    if n <= 3 {
        return Err(Error::InvalidArgument(format!("traversal bounds need n > 3, got {n}")));
    }
    if replicates == 0 {
        return Err(Error::InvalidArgument("replicates must be >= 1".into()));
    }
    let hits: usize = (0..replicates)
        .into_par_iter()
        .map(|r| pair_untraversed(n, t, &mut stream.child(r as u64).generator()) as usize)
        .sum();
    let p_hat = hits as f64 / replicates as f64;
    let (lower_bound, upper_bound) = traversal_bounds(n, t);
    Ok(TraversalEstimate {
        t,
        n,
        replicates,
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / replicates as f64).sqrt(),
        lower_bound,
        upper_bound,
    })
}

/// Pooled Pearson correlation between the edge indicators of the first and
/// second graph of every pair, over all vertex pairs and all replicates.
pub fn edge_correlation(pairs: &[(Graph, Graph)]) -> Result<f64> {
    let mut acc = Moments::default();
    for (a0, at) in pairs {
        if a0.n() != at.n() {
            return Err(Error::DimensionMismatch { expected: a0.n(), found: at.n() });
        }
        acc.add_pair(a0, at);
    }
    acc.correlation()
}

#[derive(Debug, Default, Clone, Copy)]
struct Moments {
    count: u64,
    x: u64,
    y: u64,
    xy: u64,
}

impl Moments {
    fn add_pair(&mut self, a0: &Graph, at: &Graph) {
        self.count += a0.pair_count() as u64;
        self.x += a0.edge_count() as u64;
        self.y += at.edge_count() as u64;
        self.xy += a0.edges().filter(|&(u, v)| at.has_edge(u, v)).count() as u64;
    }

    fn merge(self, other: Moments) -> Moments {
        Moments {
            count: self.count + other.count,
            x: self.x + other.x,
            y: self.y + other.y,
            xy: self.xy + other.xy,
        }
    }

    fn correlation(&self) -> Result<f64> {
        if self.count == 0 {
            return Err(Error::UndefinedCorrelation("no observations"));
        }
        let n = self.count as f64;
        let (mx, my) = (self.x as f64 / n, self.y as f64 / n);
        // indicators: E[X²] = E[X]
        let vx = mx - mx * mx;
        let vy = my - my * my;
        if vx <= 0.0 {
            return Err(Error::UndefinedCorrelation("first margin is constant"));
        }
        if vy <= 0.0 {
            return Err(Error::UndefinedCorrelation("second margin is constant"));
        }
        Ok((self.xy as f64 / n - mx * my) / (vx * vy).sqrt())
    }
}

/// Pooled edge correlation between `G₀ ~ ER(n, p)` and `Gₜ` after `t`
/// standard-walk steps, with a batch-means standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub correlation: f64,
    pub stderr: f64,
    pub replicates: usize,
}

pub fn correlation_experiment(
    n: usize,
    p: f64,
    params: StandardWalkParams,
    t: u64,
    replicates: usize,
    stream: RngStream,
) -> Result<CorrelationEstimate> {
    const BATCHES: usize = 20;
    if replicates < BATCHES {
        return Err(Error::InvalidArgument(format!("need at least {BATCHES} replicates")));
    }
    let per_replicate: Vec<Moments> = (0..replicates)
        .into_par_iter()
        .map(|r| -> Result<Moments> {
            let mut rng = stream.child(r as u64).generator();
            let g0 = sample_er(n, p, &mut rng)?;
            let mut kernel = StandardKernel::new(params);
            let (pos, _) = kernel.initial_position(n, &mut rng);
            let mut state = WalkState::new(g0.clone(), pos, None);
            for _ in 0..t {
                kernel.step(&mut state, &mut rng);
            }
            let mut m = Moments::default();
            m.add_pair(&g0, &state.graph);
            Ok(m)
        })
        .collect::<Result<_>>()?;

    let total = per_replicate.iter().fold(Moments::default(), |a, &b| a.merge(b));
    let correlation = total.correlation()?;
    let batch_size = replicates / BATCHES;
    let batch: Vec<f64> = per_replicate
        .chunks(batch_size)
        .take(BATCHES)
        .map(|chunk| chunk.iter().fold(Moments::default(), |a, &b| a.merge(b)).correlation())
        .collect::<Result<_>>()?;
    let mean = batch.iter().sum::<f64>() / BATCHES as f64;
    let var = batch.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (BATCHES - 1) as f64;
    Ok(CorrelationEstimate {
        correlation,
        stderr: (var / BATCHES as f64).sqrt(),
        replicates,
    })
}
