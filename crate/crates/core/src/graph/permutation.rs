use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A bijection `σ` of `0..n` with a cached inverse.
///
/// As a permutation matrix `P`, `P[i][σ(i)] = 1`, so `(P B Pᵀ)[i][j] =
/// B[σ(i)][σ(j)]`: vertex `i` of the first graph is matched to vertex `σ(i)`
/// of the second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationMap {
    image: Vec<usize>,
    inverse: Vec<usize>,
}

impl PermutationMap {
    pub fn identity(n: usize) -> Self {
        let image: Vec<usize> = (0..n).collect();
        Self {
            inverse: image.clone(),
            image,
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut inverse = vec![usize::MAX; n];
        for (i, &j) in image.iter().enumerate() {
            if j >= n {
                return Err(Error::InvalidPermutation(format!("image {j} out of range 0..{n}")));
            }
            if inverse[j] != usize::MAX {
                return Err(Error::InvalidPermutation(format!("image {j} repeated")));
            }
            inverse[j] = i;
        }
        Ok(Self { image, inverse })
    }

    /// The transposition of `a` and `b` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Self::from_image(image).expect("transposition is a bijection")
    }

    /// A cycle `c[0] -> c[1] -> ... -> c[0]` on `0..n`.
    pub fn cycle(n: usize, c: &[usize]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        for (k, &v) in c.iter().enumerate() {
            image[v] = c[(k + 1) % c.len()];
        }
        Self::from_image(image)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        Self::from_image(image).expect("shuffle is a bijection")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    #[inline]
    pub fn apply_inverse(&self, j: usize) -> usize {
        self.inverse[j]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> PermutationMap {
        Self {
            image: self.inverse.clone(),
            inverse: self.image.clone(),
        }
    }

    /// `self ∘ other`: `i ↦ self(other(i))`.
    pub fn compose(&self, other: &PermutationMap) -> PermutationMap {
        assert_eq!(self.len(), other.len());
        let image = other.image.iter().map(|&j| self.image[j]).collect();
        Self::from_image(image).expect("composition of bijections")
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.image[i] == i
    }

    /// Number of moved points; the permutation lies in `Π_{n,k}` for this `k`.
    pub fn shuffle_count(&self) -> usize {
        self.image.iter().enumerate().filter(|(i, &j)| *i != j).count()
    }
}

/// Number of labels moved by `p`.
pub fn shuffle_count(p: &PermutationMap) -> usize {
    p.shuffle_count()
}
