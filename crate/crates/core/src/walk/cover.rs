use crate::graph::{pair_count, BitSet};

/// Tracks which unordered pairs `{Lₜ, Lₜ₊₁}` the walker has crossed.
/// Self-jumps cover nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTracker {
    covered: BitSet,
    covered_count: usize,
    cover_time: Option<u64>,
}

impl CoverTracker {
    pub fn new(n: usize) -> Self {
        let total = pair_count(n);
        Self {
            covered: BitSet::new(total),
            covered_count: 0,
            cover_time: (total == 0).then_some(0),
        }
    }

    /// Marks pair `idx` as crossed by the transition that ends at `step`.
    #[inline]
    pub fn mark(&mut self, idx: usize, step: u64) {
        if self.covered.insert(idx) {
            self.covered_count += 1;
            if self.covered_count == self.covered.len() {
                self.cover_time = Some(step);
            }
        }
    }

    #[inline]
    pub fn is_covered(&self, idx: usize) -> bool {
        self.covered.get(idx)
    }

    pub fn covered_count(&self) -> usize {
        self.covered_count
    }

    pub fn total(&self) -> usize {
        self.covered.len()
    }

    /// First step at which every pair has been crossed.
    pub fn cover_time(&self) -> Option<u64> {
        self.cover_time
    }

    pub fn rate(&self) -> f64 {
        if self.covered.is_empty() {
            1.0
        } else {
            self.covered_count as f64 / self.covered.len() as f64
        }
    }
}
