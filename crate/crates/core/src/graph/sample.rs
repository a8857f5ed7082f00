use rand::Rng;

use crate::error::{check_probability, Result};

use super::{pair_count, Graph, Partition, SbmParams};

/// Samples `G ~ ER(n, p)`: every unordered pair independently with
/// probability `p`, drawn in pair-index order.
pub fn sample_er<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    check_probability("p", p)?;
    let mut g = Graph::empty(n);
    for idx in 0..pair_count(n) {
        if rng.random_bool(p) {
            g.set_pair(idx, true);
        }
    }
    Ok(g)
}

/// Samples an SBM graph with contiguous blocks; returns the graph and its
/// block partition.
pub fn sample_sbm<R: Rng + ?Sized>(params: &SbmParams, rng: &mut R) -> Result<(Graph, Partition)> {
    let partition = params.partition();
    let n = partition.n();
    let lambda = params.lambda();
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for u in 0..n {
        let row = &lambda[partition.label(u)];
        for v in (u + 1)..n {
            if rng.random_bool(row[partition.label(v)]) {
                g.set_pair(idx, true);
            }
            idx += 1;
        }
    }
    Ok((g, partition))
}
