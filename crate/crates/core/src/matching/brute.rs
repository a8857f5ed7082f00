use crate::error::{Error, Result};
use crate::graph::{Graph, PermutationMap};

use super::SeedSet;

/// Largest number of free vertices accepted by [`brute_force_gmp`].
pub const MAX_BRUTE_FORCE_FREE: usize = 9;

/// Optimal objective and every permutation attaining it, in lexicographic
/// order of their image vectors.
#[derive(Debug, Clone)]
pub struct BruteForceResult {
    pub objective: u64,
    pub optima: Vec<PermutationMap>,
}

impl BruteForceResult {
    pub fn contains_identity(&self) -> bool {
        self.optima.iter().any(PermutationMap::is_identity)
    }

    pub fn identity_is_unique_optimum(&self) -> bool {
        self.optima.len() == 1 && self.optima[0].is_identity()
    }

    /// Largest shuffle count among the optima.
    pub fn max_shuffle(&self) -> usize {
        self.optima.iter().map(PermutationMap::shuffle_count).max().unwrap_or(0)
    }

    /// Smallest shuffle count among the optima.
    pub fn min_shuffle(&self) -> usize {
        self.optima.iter().map(PermutationMap::shuffle_count).min().unwrap_or(0)
    }
}

struct Search<'a> {
    a: Vec<bool>,
    b: Vec<bool>,
    n: usize,
    free: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
    best: u64,
    optima: Vec<PermutationMap>,
    /// Already assigned vertices (seeds first, then free vertices in order).
    assigned: Vec<usize>,
}

impl Search<'_> {
    fn gain(&self, i: usize, s: usize) -> u64 {
        let n = self.n;
        self.assigned
            .iter()
            .filter(|&&j| self.a[i * n + j] && self.b[s * n + self.image[j]])
            .count() as u64
            * 2
    }

    fn run(&mut self, depth: usize, score: u64) {
        if depth == self.free.len() {
            if score > self.best {
                self.best = score;
                self.optima.clear();
            }
            if score == self.best {
                self.optima.push(PermutationMap::from_image(self.image.clone()).expect("bijection by construction"));
            }
            return;
        }
        let i = self.free[depth];
        for k in 0..self.free.len() {
            let s = self.free[k];
            if self.used[s] {
                continue;
            }
            let g = self.gain(i, s);
            self.used[s] = true;
            self.image[i] = s;
            self.assigned.push(i);
            self.run(depth + 1, score + g);
            self.assigned.pop();
            self.used[s] = false;
        }
    }
}

/// Exhaustive maximization of the matching objective over all permutations
/// fixing `seeds`.
pub fn brute_force_gmp(a: &Graph, b: &Graph, seeds: &SeedSet) -> Result<BruteForceResult> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.n() });
    }
    if seeds.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: seeds.n() });
    }
    let free = seeds.free();
    if free.len() > MAX_BRUTE_FORCE_FREE {
        return Err(Error::InstanceTooLarge { what: "free vertices for brute force", size: free.len(), limit: MAX_BRUTE_FORCE_FREE });
    }
    let dense = |g: &Graph| {
        let mut m = vec![false; n * n];
        for (u, v) in g.edges() {
            m[u * n + v] = true;
            m[v * n + u] = true;
        }
        m
    };
    let mut search = Search {
        a: dense(a),
        b: dense(b),
        n,
        free: &free,
        image: (0..n).collect(),
        used: (0..n).map(|v| seeds.contains(v)).collect(),
        best: 0,
        optima: Vec::new(),
        assigned: Vec::with_capacity(n),
    };
    let mut base = 0;
    for &s in seeds.ids() {
        base += search.gain(s, s);
        search.assigned.push(s);
    }
    search.run(0, base);
    Ok(BruteForceResult { objective: search.best, optima: search.optima })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gmp_objective;

    #[test]
    fn complete_graph_all_optimal() {
        let k4 = Graph::complete(4);
        let r = brute_force_gmp(&k4, &k4, &SeedSet::none(4)).unwrap();
        assert_eq!(r.optima.len(), 24);
        assert_eq!(r.objective, 12);
    }

    #[test]
    fn seeds_are_respected() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]);
        let r = brute_force_gmp(&g, &g, &SeedSet::new(5, [0]).unwrap()).unwrap();
        assert!(r.optima.iter().all(|p| p.apply(0) == 0));
        // path reversal is excluded by the seed
        assert!(r.identity_is_unique_optimum());
        assert_eq!(r.objective, gmp_objective(&g, &g, &PermutationMap::identity(5)).unwrap());
    }

    #[test]
    fn too_large() {
        let g = Graph::empty(10);
        assert!(matches!(brute_force_gmp(&g, &g, &SeedSet::none(10)), Err(Error::InstanceTooLarge { .. })));
        assert!(brute_force_gmp(&g, &g, &SeedSet::new(10, [0]).unwrap()).is_ok());
    }
}
