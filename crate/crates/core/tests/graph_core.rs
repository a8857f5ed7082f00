use edgelighter::graph::{
    gmp_objective, objective_delta, pair_count, pair_endpoints, pair_index, sample_er, sample_sbm, shuffle_count,
};
use edgelighter::stats::mann_whitney_u;
use edgelighter::{Graph, PermutationMap, RngStream, SbmParams};
use proptest::prelude::*;
use rand::Rng;

/// Every permutation of `0..n` in lexicographic order.
fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Tr(A P B Pᵀ) from dense adjacency matrices, with P[i][σ(i)] = 1.
fn dense_trace(a: &Graph, b: &Graph, sigma: &[usize]) -> u64 {
    let n = a.n();
    let mut t = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j && a.has_edge(i, j) && b.has_edge(sigma[i], sigma[j]) {
                t += 1;
            }
        }
    }
    t
}

fn frobenius_sq(a: &Graph, b: &Graph, sigma: &[usize]) -> u64 {
    let n = a.n();
    let mut d = 0;
    for i in 0..n {
        for j in 0..n {
            if i != j && a.has_edge(i, j) != b.has_edge(sigma[i], sigma[j]) {
                d += 1;
            }
        }
    }
    d
}

#[test]
fn pair_index_is_a_bijection() {
    for n in 2..12 {
        let mut seen = vec![false; pair_count(n)];
        for u in 0..n {
            for v in u + 1..n {
                let i = pair_index(n, u, v);
                assert!(!seen[i]);
                seen[i] = true;
                assert_eq!(pair_endpoints(n, i), (u, v));
                assert_eq!(i, u * (2 * n - u - 1) / 2 + (v - u - 1));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}

#[test]
fn er_trivial_probabilities() {
    let mut rng = RngStream::root(1).generator();
    assert_eq!(sample_er(4, 0.0, &mut rng).unwrap().edge_count(), 0);
    assert_eq!(sample_er(4, 1.0, &mut rng).unwrap().edge_count(), 6);
    assert!(sample_er(4, 1.5, &mut rng).is_err());
    assert!(sample_er(4, -0.1, &mut rng).is_err());
}

#[test]
fn er_edge_count_in_three_sigma_band() {
    let mut rng = RngStream::root(7).generator();
    let m = sample_er(100, 0.5, &mut rng).unwrap().edge_count();
    assert!((2370..=2580).contains(&m), "edge count {m}");
}

#[test]
fn er_indicator_mean_within_four_sigma() {
    // 10⁵ pairs: n = 448 gives 100128 pairs.
    let n = 448;
    let mut rng = RngStream::root(11).generator();
    let g = sample_er(n, 0.3, &mut rng).unwrap();
    let pairs = pair_count(n) as f64;
    let mean = g.edge_count() as f64 / pairs;
    let sigma = (0.3f64 * 0.7 / pairs).sqrt();
    assert!((mean - 0.3).abs() < 4.0 * sigma, "mean {mean}");
}

#[test]
fn sbm_degenerate_cases() {
    let mut rng = RngStream::root(3).generator();
    let ones = SbmParams::new(vec![3, 4], vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
    let (g, part) = sample_sbm(&ones, &mut rng).unwrap();
    assert_eq!(g.edge_count(), pair_count(7));
    assert_eq!(part.sizes(), vec![3, 4]);
    assert!(SbmParams::new(vec![2, 2], vec![vec![0.5, 0.1], vec![0.2, 0.5]]).is_err());
    assert!(SbmParams::new(vec![2, 0], vec![vec![0.5, 0.1], vec![0.1, 0.5]]).is_err());
}

#[test]
fn sbm_presets_have_expected_community_counts() {
    for (n, k) in [(81, 5), (256, 7), (625, 9)] {
        let p = SbmParams::sized_preset(n).unwrap();
        assert_eq!(p.k(), k);
        assert_eq!(p.n(), n);
        assert_eq!(p.sizes()[0], (n as f64).powf(0.25).floor() as usize);
        let mid = (n as f64).powf(2.0 / 3.0).floor() as usize;
        assert!(p.sizes()[1..k - 1].iter().all(|&s| s == mid));
        for i in 0..k {
            for j in 0..k {
                assert_eq!(p.lambda()[i][j], p.lambda()[j][i]);
            }
        }
    }
    assert!(SbmParams::sized_preset(100).is_err());
}

#[test]
fn sbm_with_flat_lambda_matches_er_edge_counts() {
    let n = 30;
    let reps = 2000;
    let root = RngStream::root(99);
    let params = SbmParams::uniform(vec![10, 10, 10], 0.4).unwrap();
    let sbm: Vec<f64> = (0..reps)
        .map(|r| sample_sbm(&params, &mut root.path(&[0, r]).generator()).unwrap().0.edge_count() as f64)
        .collect();
    let er: Vec<f64> = (0..reps)
        .map(|r| sample_er(n, 0.4, &mut root.path(&[1, r]).generator()).unwrap().edge_count() as f64)
        .collect();
    let (_, p) = mann_whitney_u(&sbm, &er);
    assert!(p > 0.01, "p-value {p}");
}

#[test]
fn gmp_objective_examples() {
    let k3 = Graph::complete(3);
    assert_eq!(gmp_objective(&k3, &k3, &PermutationMap::identity(3)).unwrap(), 6);
    let mut rng = RngStream::root(5).generator();
    let a = sample_er(6, 0.5, &mut rng).unwrap();
    let empty = Graph::empty(6);
    let p = PermutationMap::random(6, &mut rng);
    assert_eq!(gmp_objective(&a, &empty, &p).unwrap(), 0);
    assert!(gmp_objective(&a, &Graph::empty(5), &PermutationMap::identity(6)).is_err());
}

#[test]
fn max_trace_equals_min_frobenius() {
    let root = RngStream::root(21);
    let perms = all_perms(5);
    for r in 0..50 {
        let mut rng = root.child(r).generator();
        let a = sample_er(5, 0.5, &mut rng).unwrap();
        let b = sample_er(5, 0.5, &mut rng).unwrap();
        let best_trace = perms.iter().map(|s| dense_trace(&a, &b, s)).max().unwrap();
        let best_frob = perms.iter().map(|s| frobenius_sq(&a, &b, s)).min().unwrap();
        let argmax: Vec<_> = perms.iter().filter(|s| dense_trace(&a, &b, s) == best_trace).collect();
        let argmin: Vec<_> = perms.iter().filter(|s| frobenius_sq(&a, &b, s) == best_frob).collect();
        assert_eq!(argmax, argmin);
        let via_lib = perms
            .iter()
            .map(|s| gmp_objective(&a, &b, &PermutationMap::from_image(s.clone()).unwrap()).unwrap())
            .max()
            .unwrap();
        assert_eq!(via_lib, best_trace);
    }
}

#[test]
fn shuffle_count_examples() {
    assert_eq!(shuffle_count(&PermutationMap::identity(10)), 0);
    assert_eq!(PermutationMap::transposition(10, 2, 7).shuffle_count(), 2);
    assert_eq!(PermutationMap::cycle(10, &[1, 3, 5, 7, 9]).unwrap().shuffle_count(), 5);
}

#[test]
fn objective_delta_examples() {
    let root = RngStream::root(8);
    for r in 0..20 {
        let mut rng = root.child(r).generator();
        let a = sample_er(6, 0.5, &mut rng).unwrap();
        let b = sample_er(6, 0.5, &mut rng).unwrap();
        let p = PermutationMap::random(6, &mut rng);
        assert_eq!(objective_delta(&a, &b, &PermutationMap::identity(6)).unwrap(), 0);
        let direct = dense_trace(&a, &b, p.image()) as i64 - dense_trace(&a, &b, &(0..6).collect::<Vec<_>>()) as i64;
        assert_eq!(objective_delta(&a, &b, &p).unwrap(), direct);
        assert!(objective_delta(&a, &a, &p).unwrap() <= 0);
    }
}

#[test]
fn objective_relabel_invariance_exhaustive_n5() {
    let mut rng = RngStream::root(13).generator();
    let a = sample_er(5, 0.5, &mut rng).unwrap();
    let b = sample_er(5, 0.5, &mut rng).unwrap();
    let p = PermutationMap::random(5, &mut rng);
    let base = gmp_objective(&a, &b, &p).unwrap();
    for q in all_perms(5) {
        let q = PermutationMap::from_image(q).unwrap();
        // relabel(q) has entries a(q(i), q(j)), so the matching conjugates the other way.
        let qp = q.inverse().compose(&p).compose(&q);
        assert_eq!(gmp_objective(&a.relabel(&q), &b.relabel(&q), &qp).unwrap(), base);
    }
}

#[test]
fn rng_streams_reproduce() {
    let s = RngStream::new(42, 9);
    let (mut g1, mut g2) = (s.generator(), s.generator());
    let a: Vec<u64> = (0..16).map(|_| g1.random()).collect();
    let b: Vec<u64> = (0..16).map(|_| g2.random()).collect();
    assert_eq!(a, b);
    let mut other = RngStream::new(42, 10).generator();
    assert_ne!(a[0], other.random::<u64>());
}

fn graph_of(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), pair_count(n)).prop_map(move |bits| {
        let mut g = Graph::empty(n);
        for (i, b) in bits.into_iter().enumerate() {
            g.set_pair(i, b);
        }
        g
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = PermutationMap> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| PermutationMap::from_image(v).unwrap())
}

proptest! {
    #[test]
    fn graph_is_symmetric_without_loops(g in (2usize..=12).prop_flat_map(graph_of)) {
        let n = g.n();
        let mut count = 0;
        for u in 0..n {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..n {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                if u < v && g.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        prop_assert_eq!(g.edge_count(), count);
        prop_assert_eq!(g.edges().count(), count);
    }

    #[test]
    fn permutation_inverse_composes_to_identity(p in (1usize..20).prop_flat_map(perm_strategy)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
        let mut seen = vec![false; p.len()];
        for i in 0..p.len() {
            prop_assert!(!seen[p.apply(i)]);
            seen[p.apply(i)] = true;
            prop_assert_eq!(p.apply_inverse(p.apply(i)), i);
        }
    }

    #[test]
    fn objective_symmetric_under_swap(
        (a, b, p) in (2usize..8).prop_flat_map(|n| (graph_of(n), graph_of(n), perm_strategy(n)))
    ) {
        prop_assert_eq!(gmp_objective(&a, &b, &p).unwrap(), gmp_objective(&b, &a, &p.inverse()).unwrap());
        prop_assert_eq!(gmp_objective(&a, &b, &p).unwrap(), dense_trace(&a, &b, p.image()));
    }
}
