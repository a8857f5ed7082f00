use std::ops::ControlFlow;

use edgelighter::graph::{pair_count, pair_endpoints, pair_index, sample_er};
use edgelighter::stats::chi_square_gof;
use edgelighter::walk::{
    edge_correlation, estimate_traversal_prob, run_walk, snapshots, start_walk, step_block, step_standard,
    traversal_bounds, BlockKernel, BlockWalkParams, StandardWalkParams, WalkKernel, WalkSpec, WalkState,
};
use edgelighter::{Graph, Partition, RngStream};
use proptest::prelude::*;

fn cross_count(g: &Graph, p: &Partition, i: usize, j: usize) -> usize {
    g.edges()
        .filter(|&(u, v)| {
            let (a, b) = (p.label(u), p.label(v));
            (a == i && b == j) || (a == j && b == i)
        })
        .count()
}

fn changed_pairs(a: &Graph, b: &Graph) -> Vec<usize> {
    (0..a.pair_count()).filter(|&i| a.has_pair(i) != b.has_pair(i)).collect()
}

#[test]
fn zero_flip_probability_keeps_the_graph() {
    let mut rng = RngStream::root(1).generator();
    let g0 = sample_er(12, 0.5, &mut rng).unwrap();
    let params = StandardWalkParams::new(0.0, 0.0).unwrap();
    let mut state = WalkState::new(g0.clone(), 0, None);
    for _ in 0..2000 {
        step_standard(&mut state, &params, &mut rng);
        assert_eq!(state.graph, g0);
    }
}

#[test]
fn self_jump_changes_nothing_and_full_flip_toggles_one_lamp() {
    let mut rng = RngStream::root(2).generator();
    let flip_all = StandardWalkParams::new(1.0, 1.0).unwrap();
    let mut state = WalkState::new(Graph::complete(3), 0, None);
    let mut self_jumps = 0;
    for _ in 0..300 {
        let before = state.clone();
        step_standard(&mut state, &flip_all, &mut rng);
        let (u, v) = (before.position, state.position);
        let diff = changed_pairs(&before.graph, &state.graph);
        if u == v {
            self_jumps += 1;
            assert!(diff.is_empty());
            assert_eq!(state.cover.covered_count(), before.cover.covered_count());
        } else {
            assert_eq!(diff, vec![pair_index(3, u.min(v), u.max(v))]);
        }
        assert_eq!(state.step, before.step + 1);
    }
    assert!(self_jumps > 0);
}

#[test]
fn block_walk_with_one_community_only_stays() {
    let mut rng = RngStream::root(3).generator();
    let g0 = sample_er(7, 0.5, &mut rng).unwrap();
    let spec = WalkSpec::Block { params: BlockWalkParams::uniform(1, 0.5, 0.5).unwrap(), partition: Partition::trivial(7) };
    let (mut kernel, mut state) = start_walk(&g0, &spec, &mut rng).unwrap();
    for _ in 0..500 {
        let before = state.clone();
        kernel.step(&mut state, &mut rng);
        assert_eq!(state.community, Some(0));
        assert!(changed_pairs(&before.graph, &state.graph).len() <= 1);
    }
}

#[test]
fn block_walk_conserves_cross_counts_with_full_recount() {
    let partition = Partition::contiguous(&[4, 5]).unwrap();
    let mut g0 = Graph::empty(9);
    for (u, v) in [(0, 1), (1, 2), (5, 6), (6, 8), (0, 4), (2, 7), (3, 8)] {
        g0.add_edge(u, v);
    }
    assert_eq!(cross_count(&g0, &partition, 0, 1), 3);
    let params = BlockWalkParams::uniform(2, 0.5, 0.5).unwrap();
    let mut kernel = BlockKernel::new(&g0, partition.clone(), &params).unwrap();
    let mut rng = RngStream::root(4).generator();
    let mut state = WalkState::new(g0, 0, Some(0));
    let mut community_changes = 0;
    for _ in 0..10_000 {
        let before = state.community;
        step_block(&mut state, &mut kernel, &mut rng);
        community_changes += (before != state.community) as usize;
        assert_eq!(cross_count(&state.graph, &partition, 0, 1), 3);
        assert_eq!(state.community, Some(partition.label(state.position)));
    }
    assert!(community_changes > 4000);
}

#[test]
fn block_walk_conserves_all_cross_counts_on_three_blocks() {
    let partition = Partition::contiguous(&[3, 4, 5]).unwrap();
    let mut rng = RngStream::root(5).generator();
    let g0 = sample_er(12, 0.4, &mut rng).unwrap();
    let spec = WalkSpec::Block { params: BlockWalkParams::uniform(3, 0.4, 0.6).unwrap(), partition: partition.clone() };
    let (mut kernel, mut state) = start_walk(&g0, &spec, &mut rng).unwrap();
    let initial: Vec<usize> = [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| cross_count(&g0, &partition, i, j)).collect();
    for _ in 0..5000 {
        kernel.step(&mut state, &mut rng);
        let now: Vec<usize> =
            [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| cross_count(&state.graph, &partition, i, j)).collect();
        assert_eq!(now, initial);
    }
}

#[test]
fn zero_steps_gives_one_snapshot() {
    let g0 = sample_er(6, 0.5, &mut RngStream::root(6).generator()).unwrap();
    let spec = WalkSpec::Standard(StandardWalkParams::resampling(0.5).unwrap());
    let snaps = snapshots(&g0, &spec, 0, 5, RngStream::root(9)).unwrap();
    assert_eq!(snaps.len(), 1);
    assert_eq!(snaps[0].graph, g0);
    assert_eq!(snaps[0].step, 0);
    assert!(snapshots(&g0, &spec, 10, 0, RngStream::root(9)).is_err());
}

#[test]
fn large_graph_checkpoint_cadence() {
    let n = 729;
    let g0 = sample_er(n, 0.5, &mut RngStream::root(7).generator()).unwrap();
    let spec = WalkSpec::Standard(StandardWalkParams::resampling(0.5).unwrap());
    let mut rng = RngStream::root(8).generator();
    let (mut kernel, mut state) = start_walk(&g0, &spec, &mut rng).unwrap();
    let mut steps = Vec::new();
    run_walk(&mut kernel, &mut state, 3000, 300, &mut rng, |s| {
        steps.push(s.step);
        ControlFlow::Continue(())
    })
    .unwrap();
    assert_eq!(steps, (0..=10).map(|k| k * 300).collect::<Vec<u64>>());
}

#[test]
fn observer_can_stop_early() {
    let g0 = sample_er(10, 0.5, &mut RngStream::root(9).generator()).unwrap();
    let spec = WalkSpec::Standard(StandardWalkParams::resampling(0.5).unwrap());
    let mut rng = RngStream::root(10).generator();
    let (mut kernel, mut state) = start_walk(&g0, &spec, &mut rng).unwrap();
    let mut calls = 0;
    run_walk(&mut kernel, &mut state, 1000, 10, &mut rng, |_| {
        calls += 1;
        if calls == 3 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .unwrap();
    assert_eq!(state.step, 20);
}

#[test]
fn same_seed_same_snapshots() {
    let g0 = sample_er(15, 0.5, &mut RngStream::root(11).generator()).unwrap();
    let partition = Partition::contiguous(&[5, 10]).unwrap();
    for spec in [
        WalkSpec::Standard(StandardWalkParams::new(0.3, 0.7).unwrap()),
        WalkSpec::Block { params: BlockWalkParams::uniform(2, 0.5, 0.5).unwrap(), partition },
    ] {
        let a = snapshots(&g0, &spec, 500, 25, RngStream::new(1, 2)).unwrap();
        let b = snapshots(&g0, &spec, 500, 25, RngStream::new(1, 2)).unwrap();
        assert_eq!(a, b);
        let c = snapshots(&g0, &spec, 500, 25, RngStream::new(1, 3)).unwrap();
        assert_ne!(a, c);
    }
}

#[test]
fn cover_tracker_invariants_along_a_walk() {
    let g0 = sample_er(8, 0.5, &mut RngStream::root(12).generator()).unwrap();
    let spec = WalkSpec::Standard(StandardWalkParams::resampling(0.5).unwrap());
    let snaps = snapshots(&g0, &spec, 2000, 1, RngStream::root(13)).unwrap();
    let mut last = 0;
    for s in &snaps {
        let c = s.cover.covered_count();
        assert!(c >= last);
        last = c;
        assert_eq!(c, (0..pair_count(8)).filter(|&i| s.cover.is_covered(i)).count());
        assert!((0.0..=1.0).contains(&s.cover_rate()));
        assert_eq!(s.cover_rate() == 1.0, s.cover.cover_time().is_some());
    }
    let t = snaps.last().unwrap().cover.cover_time().expect("n = 8 covers within 2000 steps");
    assert_eq!(snaps[t as usize].cover.covered_count(), pair_count(8));
    assert!(snaps[t as usize - 1].cover.covered_count() < pair_count(8));
}

#[test]
fn traversal_estimator_examples() {
    let e = estimate_traversal_prob(10, 0, 1000, RngStream::root(14)).unwrap();
    assert_eq!(e.p_hat, 1.0);
    let (lo, hi) = traversal_bounds(10, 100);
    assert!((lo - 0.1030).abs() < 5e-5);
    assert!((hi - 0.4028).abs() < 1e-4);
    assert!((hi - (-50.0f64 / 55.0).exp()).abs() < 1e-15);
    assert!(estimate_traversal_prob(3, 10, 100, RngStream::root(1)).is_err());
    let e = estimate_traversal_prob(10, 100, 100_000, RngStream::root(15)).unwrap();
    assert!(e.within_bounds(4.0), "{e:?}");
}

#[test]
fn correlation_examples() {
    let root = RngStream::root(16);
    let same: Vec<(Graph, Graph)> = (0..20)
        .map(|r| {
            let g = sample_er(10, 0.5, &mut root.path(&[0, r]).generator()).unwrap();
            (g.clone(), g)
        })
        .collect();
    assert!((edge_correlation(&same).unwrap() - 1.0).abs() < 1e-12);

    let reps = 2000;
    let independent: Vec<(Graph, Graph)> = (0..reps)
        .map(|r| {
            let mut rng = root.path(&[1, r]).generator();
            (sample_er(10, 0.5, &mut rng).unwrap(), sample_er(10, 0.5, &mut rng).unwrap())
        })
        .collect();
    let c = edge_correlation(&independent).unwrap();
    let sigma = 1.0 / ((reps * 45) as f64).sqrt();
    assert!(c.abs() < 4.0 * sigma, "correlation {c}");

    let constant = vec![(Graph::empty(5), Graph::complete(5))];
    assert!(edge_correlation(&constant).is_err());
}

#[test]
fn covered_lamp_forgets_its_initial_value() {
    let q2 = 0.3;
    let params = StandardWalkParams::new(1.0 - q2, q2).unwrap();
    let n = 5;
    let target = pair_index(n, 0, 1);
    let root = RngStream::root(17);
    for (tag, g0) in [(0u64, Graph::complete(n)), (1, Graph::empty(n))] {
        let reps = 10_000u64;
        let mut covered = 0u64;
        let mut on = 0u64;
        for r in 0..reps {
            let mut rng = root.path(&[tag, r]).generator();
            let mut state = WalkState::new(g0.clone(), (r as usize) % n, None);
            for _ in 0..40 {
                step_standard(&mut state, &params, &mut rng);
            }
            if state.cover.is_covered(target) {
                covered += 1;
                on += state.graph.has_pair(target) as u64;
            }
        }
        assert!(covered > 9000);
        let freq = on as f64 / covered as f64;
        let sigma = (q2 * (1.0 - q2) / covered as f64).sqrt();
        assert!((freq - q2).abs() < 4.0 * sigma, "initial {tag}: {freq}");
    }
}

#[test]
fn positions_are_uniform() {
    let n = 10;
    let params = StandardWalkParams::resampling(0.5).unwrap();
    let mut rng = RngStream::root(18).generator();
    let mut state = WalkState::new(Graph::empty(n), 0, None);
    let mut counts = vec![0u64; n];
    for _ in 0..100_000 {
        step_standard(&mut state, &params, &mut rng);
        counts[state.position] += 1;
    }
    let (_, p) = chi_square_gof(&counts, &vec![1.0 / n as f64; n]);
    assert!(p > 1e-3, "p-value {p}");
}

#[test]
fn consecutive_position_pairs_are_independent_uniform_draws() {
    let n = 6;
    let params = StandardWalkParams::resampling(0.5).unwrap();
    let mut rng = RngStream::root(19).generator();
    let mut state = WalkState::new(Graph::empty(n), 0, None);
    // classes: the 15 pairs by index, then the 6 doubles
    let pairs = pair_count(n);
    let mut counts = vec![0u64; pairs + n];
    for _ in 0..50_000 {
        step_standard(&mut state, &params, &mut rng);
        let a = state.position;
        step_standard(&mut state, &params, &mut rng);
        let b = state.position;
        let class = if a == b { pairs + a } else { pair_index(n, a.min(b), a.max(b)) };
        counts[class] += 1;
    }
    // unordered outcome of two independent uniform draws
    let nn = (n * n) as f64;
    let probs: Vec<f64> = (0..pairs).map(|_| 2.0 / nn).chain((0..n).map(|_| 1.0 / nn)).collect();
    let (_, p) = chi_square_gof(&counts, &probs);
    assert!(p > 1e-3, "p-value {p}");
    assert_eq!(pair_endpoints(n, pairs - 1), (4, 5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn block_position_matches_community(seed in any::<u64>(), sizes in proptest::collection::vec(1usize..5, 2..4)) {
        let partition = Partition::contiguous(&sizes).unwrap();
        let n = partition.n();
        let mut rng = RngStream::root(seed).generator();
        let g0 = sample_er(n, 0.5, &mut rng).unwrap();
        let spec = WalkSpec::Block { params: BlockWalkParams::uniform(sizes.len(), 0.5, 0.5).unwrap(), partition: partition.clone() };
        let (mut kernel, mut state) = start_walk(&g0, &spec, &mut rng).unwrap();
        for _ in 0..200 {
            kernel.step(&mut state, &mut rng);
            prop_assert!(state.position < n);
            prop_assert_eq!(state.community, Some(partition.label(state.position)));
        }
    }
}
