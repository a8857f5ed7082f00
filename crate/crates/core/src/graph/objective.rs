use crate::error::{Error, Result};

use super::{Graph, PermutationMap};

fn check_dims(a: &Graph, b: &Graph, p: &PermutationMap) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: b.n() });
    }
    if p.len() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: p.len() });
    }
    Ok(())
}

/// `Tr(A P B Pᵀ)`, i.e. twice the number of pairs `{i, j}` that are edges of
/// `a` and whose images `{σ(i), σ(j)}` are edges of `b`.
pub fn gmp_objective(a: &Graph, b: &Graph, p: &PermutationMap) -> Result<u64> {
    check_dims(a, b, p)?;
    let common = a
        .edges()
        .filter(|&(i, j)| b.has_edge(p.apply(i), p.apply(j)))
        .count() as u64;
    Ok(2 * common)
}

/// `Tr(A P B Pᵀ) - Tr(A B)`.
pub fn objective_delta(a: &Graph, b: &Graph, p: &PermutationMap) -> Result<i64> {
    check_dims(a, b, p)?;
    let mut delta = 0i64;
    for (i, j) in a.edges() {
        let moved = b.has_edge(p.apply(i), p.apply(j));
        let kept = b.has_edge(i, j);
        delta += 2 * (moved as i64 - kept as i64);
    }
    Ok(delta)
}
