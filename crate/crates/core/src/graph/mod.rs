//! Simple undirected graphs, random graph models, permutations and the graph
//! matching objective.
//!
//! A [`Graph`] stores one bit per unordered pair `{u, v}`, `u < v`. Pairs are
//! laid out row by row of the strict upper triangle, so the pair index is
//!
//! ```text
//! idx(u, v) = u * (2n - u - 1) / 2 + (v - u - 1),   u < v
//! ```
//!
//! and ranges over `0 .. n(n-1)/2`. Traces that record pair indices depend on
//! this formula.

mod objective;
mod partition;
mod permutation;
mod sample;
mod sbm;

pub use objective::{gmp_objective, objective_delta};
pub use partition::Partition;
pub use permutation::{shuffle_count, PermutationMap};
pub use sample::{sample_er, sample_sbm};
pub use sbm::SbmParams;

use ndarray::Array2;

use crate::scalar::Scalar;

/// Number of unordered pairs on `n` vertices.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of the unordered pair `{u, v}`; `u` and `v` may come in any order.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u != v && u < n && v < n);
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_endpoints(n: usize, idx: usize) -> (usize, usize) {
    debug_assert!(idx < pair_count(n));
    let mut u = 0;
    let mut start = 0;
    loop {
        let row = n - u - 1;
        if idx < start + row {
            return (u, u + 1 + (idx - start));
        }
        start += row;
        u += 1;
    }
}

/// Fixed-size bit set, used both for edge indicators and for cover tracking.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    /// Sets bit `i`, returning whether it was previously clear.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let mask = 1u64 << (i & 63);
        let w = &mut self.words[i >> 6];
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }
}

/// A simple undirected graph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BitSet,
    edge_count: usize,
}

impl Graph {
    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BitSet::new(pair_count(n)),
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..pair_count(n) {
            g.set_pair(i, true);
        }
        g
    }

    /// Builds a graph from an edge list, dropping self-loops and duplicates.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u != v {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn pair_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn pair_index(&self, u: usize, v: usize) -> usize {
        pair_index(self.n, u, v)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.get(pair_index(self.n, u, v))
    }

    #[inline]
    pub fn has_pair(&self, idx: usize) -> bool {
        self.edges.get(idx)
    }

    /// Sets the lamp of pair `idx`, keeping `edge_count` in sync.
    #[inline]
    pub fn set_pair(&mut self, idx: usize, on: bool) {
        let was = self.edges.get(idx);
        if was != on {
            self.edges.toggle(idx);
            if on {
                self.edge_count += 1;
            } else {
                self.edge_count -= 1;
            }
        }
    }

    #[inline]
    pub fn flip_pair(&mut self, idx: usize) {
        let on = !self.edges.get(idx);
        self.set_pair(idx, on);
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.set_pair(pair_index(self.n, u, v), true);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.set_pair(pair_index(self.n, u, v), false);
    }

    pub fn degree(&self, u: usize) -> usize {
        (0..self.n).filter(|&v| self.has_edge(u, v)).count()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    /// Edges as `(u, v)` with `u < v`, in pair-index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| ((u + 1)..n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn bits(&self) -> &BitSet {
        &self.edges
    }

    /// The graph `g'` with `g'(i, j) = g(map(i), map(j))`, i.e. `Q A Qᵀ` for
    /// the permutation matrix of `map`.
    pub fn relabel(&self, map: &PermutationMap) -> Graph {
        assert_eq!(map.len(), self.n);
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(map.apply(i), map.apply(j)) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Dense 0/1 adjacency matrix.
    pub fn to_dense<S: Scalar>(&self) -> Array2<S> {
        let mut a = Array2::<S>::zeros((self.n, self.n));
        for (u, v) in self.edges() {
            a[[u, v]] = S::one();
            a[[v, u]] = S::one();
        }
        a
    }

    /// Dense adjacency restricted to `rows × cols`.
    pub fn dense_block<S: Scalar>(&self, rows: &[usize], cols: &[usize]) -> Array2<S> {
        Array2::from_shape_fn((rows.len(), cols.len()), |(i, j)| {
            if self.has_edge(rows[i], cols[j]) {
                S::one()
            } else {
                S::zero()
            }
        })
    }
}
