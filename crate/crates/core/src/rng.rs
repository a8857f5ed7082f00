//! Reproducible random streams.
//!
//! A stream is the pair `(seed, stream id)`. The generator behind it is
//! ChaCha8, which is counter based, so any stream can be instantiated in any
//! order on any thread and yields the same draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// The root stream of an experiment seed.
    pub fn root(seed: u64) -> Self {
        Self::new(seed, 0)
    }

    /// A child stream labelled by `tag`. Distinct tags give distinct streams
    /// and the mapping is a pure function of `(self, tag)`.
    pub fn child(&self, tag: u64) -> Self {
        Self::new(self.seed, splitmix64(self.stream ^ splitmix64(tag.wrapping_add(0x632b_e59b_d9b4_e019))))
    }

    /// Convenience for nested labels, e.g. `(n, replicate)`.
    pub fn path(&self, tags: &[u64]) -> Self {
        tags.iter().fold(*self, |s, &t| s.child(t))
    }

    pub fn generator(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
