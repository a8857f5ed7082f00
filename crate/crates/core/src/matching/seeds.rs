use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};

/// Vertices whose correspondence is known and pinned to themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    n: usize,
    mask: Vec<bool>,
    ids: Vec<usize>,
}

impl SeedSet {
    pub fn new(n: usize, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = vec![false; n];
        for v in ids {
            if v >= n {
                return Err(Error::InvalidArgument(format!("seed {v} out of range for n = {n}")));
            }
            mask[v] = true;
        }
        let ids = (0..n).filter(|&v| mask[v]).collect();
        Ok(Self { n, mask, ids })
    }

    pub fn none(n: usize) -> Self {
        Self { n, mask: vec![false; n], ids: Vec::new() }
    }

    pub fn all(n: usize) -> Self {
        Self { n, mask: vec![true; n], ids: (0..n).collect() }
    }

    /// `round(fraction · n)` distinct seeds drawn uniformly.
    pub fn random<R: Rng + ?Sized>(n: usize, fraction: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::InvalidProbability { name: "seed fraction", value: fraction });
        }
        let count = (fraction * n as f64).round() as usize;
        Self::new(n, sample(rng, n, count.min(n)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask[v]
    }

    /// Seed ids in increasing order.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// Non-seed ids in increasing order.
    pub fn free(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.mask[v]).collect()
    }

    pub fn free_count(&self) -> usize {
        self.n - self.ids.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn random_seed_count_rounds() {
        let mut rng = RngStream::new(0, 0).generator();
        let s = SeedSet::random(49, 0.05, &mut rng).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.free().len(), 47);
        assert!(s.ids().windows(2).all(|w| w[0] < w[1]));
        assert!(SeedSet::new(3, [3]).is_err());
    }
}
