use std::collections::VecDeque;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::graph::PermutationMap;
use crate::scalar::Scalar;

/// Optimal assignment `row i → column permutation(i)` and its total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<S> {
    pub permutation: PermutationMap,
    pub cost: S,
}

/// Exact minimum-cost assignment (shortest augmenting paths with dual
/// potentials, `O(n³)`). Among optimal assignments the one with the
/// lexicographically smallest image vector is returned.
pub fn lap_solve<S: Scalar>(cost: &Array2<S>) -> Result<Assignment<S>> {
    let n = cost.nrows();
    if cost.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: cost.ncols() });
    }
    for ((r, c), x) in cost.indexed_iter() {
        if !x.is_finite() {
            return Err(Error::NonFinite { row: r, col: c });
        }
    }
    if n == 0 {
        return Ok(Assignment { permutation: PermutationMap::identity(0), cost: S::zero() });
    }
    let (mut row_of, u, v) = hungarian(cost);
    let scale = cost.iter().fold(S::zero(), |m, x| m.max(x.abs()));
    let eps = S::epsilon() * S::of(64.0) * S::of_usize(n) * (S::one() + scale);
    let tight = |i: usize, j: usize| cost[[i, j]] - u[i] - v[j] <= eps;
    lexicographic_repair(n, &mut row_of, tight);

    let mut image = vec![0; n];
    for (j, &i) in row_of.iter().enumerate() {
        image[i] = j;
    }
    let total = image.iter().enumerate().map(|(i, &j)| cost[[i, j]]).sum();
    Ok(Assignment { permutation: PermutationMap::from_image(image)?, cost: total })
}

/// Returns `(row matched to each column, row potentials, column potentials)`.
fn hungarian<S: Scalar>(cost: &Array2<S>) -> (Vec<usize>, Vec<S>, Vec<S>) {
    let n = cost.nrows();
    const NONE: usize = usize::MAX;
    let inf = S::infinity();
    // column index n is the virtual start column
    let mut u = vec![S::zero(); n];
    let mut v = vec![S::zero(); n + 1];
    let mut row_of = vec![NONE; n + 1];
    let mut way = vec![NONE; n + 1];
    for i in 0..n {
        row_of[n] = i;
        let mut j0 = n;
        let mut min_to = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = inf;
            let mut j1 = NONE;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                let reduced = cost[[i0, j]] - u[i0] - v[j];
                if reduced < min_to[j] {
                    min_to[j] = reduced;
                    way[j] = j0;
                }
                if min_to[j] < delta {
                    delta = min_to[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_to[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == NONE {
                break;
            }
        }
        while j0 != n {
            let prev = way[j0];
            row_of[j0] = row_of[prev];
            j0 = prev;
        }
    }
    row_of.truncate(n);
    v.truncate(n);
    (row_of, u, v)
}

/// Walks rows in order, giving each the smallest tight column that still
/// admits a perfect tight matching of the remaining rows. `row_of` starts as a
/// perfect matching using tight edges only.
fn lexicographic_repair(n: usize, row_of: &mut [usize], tight: impl Fn(usize, usize) -> bool) {
    let mut col_of = vec![0; n];
    for (j, &i) in row_of.iter().enumerate() {
        col_of[i] = j;
    }
    let mut fixed = vec![false; n];
    let mut next_col = vec![usize::MAX; n];
    let mut reach = vec![false; n];
    for i in 0..n {
        let target = col_of[i];
        // rows (other than i, not yet fixed) with a tight alternating path to `target`
        reach.iter_mut().for_each(|r| *r = false);
        let mut queue = VecDeque::from([target]);
        while let Some(c) = queue.pop_front() {
            for x in 0..n {
                if x != i && !fixed[x] && !reach[x] && tight(x, c) {
                    reach[x] = true;
                    next_col[x] = c;
                    queue.push_back(col_of[x]);
                }
            }
        }
        let choice = (0..n)
            .find(|&j| {
                let r = row_of[j];
                tight(i, j) && (j == target || (!fixed[r] && reach[r]))
            })
            .expect("current column is always feasible");
        if choice != target {
            let mut r = row_of[choice];
            row_of[choice] = i;
            col_of[i] = choice;
            loop {
                let c = next_col[r];
                let displaced = row_of[c];
                row_of[c] = r;
                col_of[r] = c;
                if c == target {
                    break;
                }
                r = displaced;
            }
        }
        fixed[i] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::Rng;

    #[test]
    fn diagonal_zero() {
        let c = Array2::from_shape_fn((4, 4), |(i, j)| if i == j { 0.0 } else { 1.0 });
        let a = lap_solve(&c).unwrap();
        assert!(a.permutation.is_identity());
        assert_eq!(a.cost, 0.0);
    }

    #[test]
    fn ties_give_lexicographic_minimum() {
        let a = lap_solve(&Array2::<f64>::from_elem((6, 6), 3.0)).unwrap();
        assert!(a.permutation.is_identity());
        // the two derangements (1,2,0) and (2,0,1) both cost 0
        let c = array![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let a = lap_solve(&c).unwrap();
        assert_eq!(a.permutation.image(), &[1, 2, 0]);
    }

    #[test]
    fn rejects_nan() {
        let mut c = Array2::<f64>::zeros((3, 3));
        c[[1, 2]] = f64::NAN;
        assert!(matches!(lap_solve(&c), Err(Error::NonFinite { row: 1, col: 2 })));
    }

    #[test]
    fn matches_exhaustive_on_small() {
        let mut rng = crate::rng::RngStream::new(9, 9).generator();
        for _ in 0..50 {
            let c = Array2::from_shape_fn((5, 5), |_| rng.random_range(0..4) as f64);
            let best = permutations(5)
                .into_iter()
                .map(|p| (p.iter().enumerate().map(|(i, &j)| c[[i, j]]).sum::<f64>(), p))
                .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)))
                .unwrap();
            let a = lap_solve(&c).unwrap();
            assert_eq!(a.cost, best.0);
            assert_eq!(a.permutation.image(), &best.1[..]);
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for k in 0..n {
                let mut q: Vec<usize> = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
}
