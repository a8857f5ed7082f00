use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{pair_count, pair_index, BitSet, Partition};
use crate::rng::RngStream;
use crate::stats::{mean, quantile_sorted};

/// Which position process to simulate. Lamps do not affect the cover time,
/// so only positions are tracked.
#[derive(Debug, Clone)]
pub enum CoverProcess {
    Standard { n: usize },
    Block { partition: Partition },
}

impl CoverProcess {
    pub fn n(&self) -> usize {
        match self {
            CoverProcess::Standard { n } => *n,
            CoverProcess::Block { partition } => partition.n(),
        }
    }
}

/// Monte Carlo summary of the pair cover time.
#[derive(Debug, Clone)]
pub struct CoverStats {
    pub n: usize,
    pub replicates: usize,
    pub mean: f64,
    pub min: u64,
    pub max: u64,
    /// `(level, value)` at levels 0.05, 0.25, 0.5, 0.75 and 0.95.
    pub quantiles: Vec<(f64, f64)>,
    /// `½ n² ln n`.
    pub lower_ref: f64,
    /// `(5/2) n² ln n`.
    pub upper_ref: f64,
    pub samples: Vec<u64>,
}

impl CoverStats {
    /// Fraction of replicates with cover time at least `threshold`.
    pub fn fraction_at_least(&self, threshold: f64) -> f64 {
        self.samples.iter().filter(|&&s| s as f64 >= threshold).count() as f64 / self.replicates as f64
    }
}

const QUANTILE_LEVELS: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

/// Simulates `replicates` independent cover times, replicate `r` drawing from
/// `stream.child(r)`.
pub fn cover_time_stats(process: &CoverProcess, replicates: usize, stream: &RngStream) -> Result<CoverStats> {
    if replicates < 100 {
        return Err(Error::InvalidArgument(format!("cover statistics need at least 100 replicates, got {replicates}")));
    }
    let n = process.n();
    if n < 2 {
        return Err(Error::InvalidArgument("cover time needs at least two vertices".into()));
    }
    let samples: Vec<u64> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| simulate(process, &mut stream.child(r).generator()))
        .collect();
    let mut sorted: Vec<f64> = samples.iter().map(|&s| s as f64).collect();
    sorted.sort_by(f64::total_cmp);
    let nf = n as f64;
    Ok(CoverStats {
        n,
        replicates,
        mean: mean(&sorted),
        min: *samples.iter().min().expect("nonempty"),
        max: *samples.iter().max().expect("nonempty"),
        quantiles: QUANTILE_LEVELS.iter().map(|&q| (q, quantile_sorted(&sorted, q))).collect(),
        lower_ref: 0.5 * nf * nf * nf.ln(),
        upper_ref: 2.5 * nf * nf * nf.ln(),
        samples,
    })
}

fn simulate<R: Rng + ?Sized>(process: &CoverProcess, rng: &mut R) -> u64 {
    let n = process.n();
    let total = pair_count(n);
    let mut covered = BitSet::new(total);
    let mut count = 0;
    let mut step = 0u64;
    match process {
        CoverProcess::Standard { .. } => {
            let mut u = rng.random_range(0..n);
            while count < total {
                let v = rng.random_range(0..n);
                step += 1;
                if v != u {
                    count += covered.insert(pair_index(n, u, v)) as usize;
                    u = v;
                }
            }
        }
        CoverProcess::Block { partition } => {
            let k = partition.k();
            let mut i = rng.random_range(0..k);
            let mut u = partition.members(i)[rng.random_range(0..partition.size(i))];
            while count < total {
                step += 1;
                let j = if k == 1 || rng.random_bool(0.5) {
                    i
                } else {
                    let j = rng.random_range(0..k - 1);
                    j + (j >= i) as usize
                };
                let v = partition.members(j)[rng.random_range(0..partition.size(j))];
                if v != u {
                    count += covered.insert(pair_index(n, u, v)) as usize;
                }
                u = v;
                i = j;
            }
        }
    }
    step
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vertices_geometric_mean_two() {
        let s = cover_time_stats(&CoverProcess::Standard { n: 2 }, 20_000, &RngStream::new(5, 0)).unwrap();
        // geometric(1/2): variance 2, stderr ≈ 0.01
        assert!((s.mean - 2.0).abs() < 0.05, "{}", s.mean);
        assert!(s.min >= 1);
    }

    #[test]
    fn quantiles_monotone_and_bracket_mean() {
        let s = cover_time_stats(&CoverProcess::Standard { n: 6 }, 200, &RngStream::new(1, 1)).unwrap();
        assert!(s.quantiles.windows(2).all(|w| w[0].1 <= w[1].1));
        assert!(s.min as f64 <= s.mean && s.mean <= s.max as f64);
    }

    #[test]
    fn block_process_covers() {
        let p = Partition::contiguous(&[2, 3]).unwrap();
        let s = cover_time_stats(&CoverProcess::Block { partition: p }, 100, &RngStream::new(2, 0)).unwrap();
        assert!(s.min >= 9);
    }

    #[test]
    fn too_few_replicates() {
        assert!(cover_time_stats(&CoverProcess::Standard { n: 4 }, 99, &RngStream::new(0, 0)).is_err());
    }
}
