use crate::graph::{Partition, PermutationMap};

use super::SeedSet;

/// Fraction of non-seed vertices mapped to themselves, overall and per
/// community. A group without non-seed vertices counts as fully correct.
pub fn match_correctness(
    p: &PermutationMap,
    seeds: &SeedSet,
    partition: Option<&Partition>,
) -> (f64, Option<Vec<f64>>) {
    let fraction = |vs: &mut dyn Iterator<Item = usize>| {
        let (mut hit, mut total) = (0usize, 0usize);
        for v in vs.filter(|&v| !seeds.contains(v)) {
            total += 1;
            hit += p.is_fixed(v) as usize;
        }
        if total == 0 {
            1.0
        } else {
            hit as f64 / total as f64
        }
    };
    let overall = fraction(&mut (0..p.len()));
    let per = partition.map(|part| (0..part.k()).map(|c| fraction(&mut part.members(c).iter().copied())).collect());
    (overall, per)
}
