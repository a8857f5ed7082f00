use crate::error::{check_probability, Error, Result};

use super::Partition;

/// Parameters of a stochastic block model with contiguous blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct SbmParams {
    sizes: Vec<usize>,
    lambda: Vec<Vec<f64>>,
}

impl SbmParams {
    pub fn new(sizes: Vec<usize>, lambda: Vec<Vec<f64>>) -> Result<Self> {
        let k = sizes.len();
        if k == 0 {
            return Err(Error::InvalidArgument("SBM needs at least one block".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidArgument("SBM block sizes must be positive".into()));
        }
        if lambda.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: lambda.len() });
        }
        for (i, row) in lambda.iter().enumerate() {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, found: row.len() });
            }
            for (j, &p) in row.iter().enumerate() {
                check_probability("lambda entry", p)?;
                if p != lambda[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "lambda not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { sizes, lambda })
    }

    /// Same probability between every pair of vertices.
    pub fn uniform(sizes: Vec<usize>, p: f64) -> Result<Self> {
        let k = sizes.len();
        Self::new(sizes, vec![vec![p; k]; k])
    }

    /// The block structure used in the SBM experiments: one block of size
    /// `⌊n^{1/4}⌋`, `K - 2` blocks of size `⌊n^{2/3}⌋`, and a last block that
    /// absorbs the remainder, with `Λ = log(n)/n^{3/4} J + diag(1/2)`.
    pub fn experiment_preset(n: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument("preset needs K >= 2".into()));
        }
        let small = floor_root(n, 1, 4);
        let mid = floor_root(n, 2, 3);
        let used = small + mid * (k - 2);
        if used >= n || small == 0 {
            return Err(Error::InvalidArgument(format!(
                "n = {n} too small for a {k}-block preset"
            )));
        }
        let mut sizes = vec![small];
        sizes.extend(std::iter::repeat_n(mid, k - 2));
        sizes.push(n - used);

        let nf = n as f64;
        let between = nf.ln() / nf.powf(0.75);
        let lambda = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (between + if i == j { 0.5 } else { 0.0 }).min(1.0))
                    .collect()
            })
            .collect();
        Self::new(sizes, lambda)
    }

    /// The built-in preset for the experiment sizes:
    /// `n = 81, 256, 625` give `K = 5, 7, 9`.
    pub fn sized_preset(n: usize) -> Result<Self> {
        let k = match n {
            81 => 5,
            256 => 7,
            625 => 9,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "no SBM preset for n = {n}; use experiment_preset(n, k)"
                )))
            }
        };
        Self::experiment_preset(n, k)
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn lambda(&self) -> &[Vec<f64>] {
        &self.lambda
    }

    pub fn partition(&self) -> Partition {
        Partition::contiguous(&self.sizes).expect("sizes validated")
    }
}

/// Largest `r` with `r^den <= n^num`, computed exactly.
pub(crate) fn floor_root(n: usize, num: u32, den: u32) -> usize {
    let target = (n as u128).pow(num);
    let mut r = (n as f64).powf(num as f64 / den as f64).floor() as u128;
    while r.pow(den) > target {
        r -= 1;
    }
    while (r + 1).pow(den) <= target {
        r += 1;
    }
    r as usize
}
