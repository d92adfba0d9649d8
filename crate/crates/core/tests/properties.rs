mod common;

use common::random_connected;
use covertime::exact::{
    check_js_bound, conductance_exact, effective_resistance, transition_matrix,
};
use covertime::graph::{extract_kernel, sample_g_d, subdivide, two_core, DegreeSequence};
use covertime::predict::{phi, predict_from_counts, RegimeThresholds};
use covertime::rng::trial_rng;
use covertime::surrogate::{build_v_sigma, build_v_sigma_ordered, random_order};
use covertime::trees::{tree_resistance, SubdividedTree};
use covertime::WeightedGraph;
use proptest::prelude::*;
use rand::Rng;

fn small_tree(seed: u64) -> SubdividedTree {
    covertime::trees::random_tree(4, 3, 5, &mut trial_rng(seed, 0))
}

fn with_lengths(t: &SubdividedTree, f: impl Fn(usize, usize, u64) -> u64) -> SubdividedTree {
    let mut out = SubdividedTree::new();
    for v in 0..t.node_count() {
        let kids = t.children(v);
        if kids.is_empty() {
            out.leaf();
        } else {
            let k = kids
                .iter()
                .enumerate()
                .map(|(i, &(c, l))| (c, f(v, i, l)))
                .collect();
            out.node(k).unwrap();
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_round_trip(seed in any::<u64>(), n3 in 2usize..8, nu2 in 0usize..12) {
        let seq = DegreeSequence::from_counts(&[(2, nu2), (3, 2 * n3)]).unwrap();
        let mut rng = trial_rng(seed, 0);
        let sub = sample_g_d(&seq, &mut rng).unwrap();
        let g = sub.expand();
        prop_assert_eq!(g.degree_multiset(), {
            let mut d = seq.degrees().to_vec();
            d.sort_unstable();
            d
        });
        let ext = extract_kernel(&g).unwrap();
        prop_assert!(ext.cycle_components.is_empty());
        let again = subdivide(ext.graph.kernel(), ext.graph.lengths()).unwrap();
        let map = ext.expansion_to_input();
        let mut a: Vec<(usize, usize)> = again
            .edges()
            .iter()
            .map(|&(u, v)| { let (x, y) = (map[u], map[v]); (x.min(y), x.max(y)) })
            .collect();
        a.sort_unstable();
        prop_assert_eq!(a, g.canonical_edges());
    }

    #[test]
    fn two_core_is_idempotent(seed in any::<u64>(), n in 2usize..40, extra in 0usize..10) {
        let mut rng = trial_rng(seed, 0);
        let g = random_connected(n, extra, &mut rng);
        let once = two_core(&g);
        prop_assert_eq!(two_core(&once).canonical_edges(), once.canonical_edges());
        prop_assert!(once.degrees().iter().all(|&d| d >= 2));
    }

    #[test]
    fn rayleigh_monotonicity(seed in any::<u64>(), bump in 1u64..5) {
        let t = small_tree(seed);
        let base = tree_resistance(&t).unwrap();
        let pick = seed as usize;
        let longer = with_lengths(&t, |v, i, l| if (v + i) % 3 == pick % 3 { l + bump } else { l });
        prop_assert!(tree_resistance(&longer).unwrap() >= base - 1e-12);
    }

    #[test]
    fn pruning_never_lowers_resistance(seed in any::<u64>()) {
        let t = small_tree(seed);
        let root = t.root().unwrap();
        let kids = t.children(root).to_vec();
        prop_assume!(kids.len() >= 2);
        let base = tree_resistance(&t).unwrap();
        let mut pruned = SubdividedTree::new();
        for v in 0..root {
            let k = t.children(v);
            if k.is_empty() { pruned.leaf(); } else { pruned.node(k.to_vec()).unwrap(); }
        }
        pruned.node(kids[1..].to_vec()).unwrap();
        prop_assert!(tree_resistance(&pruned).unwrap() >= base - 1e-12);
    }

    #[test]
    fn arithmetic_harmonic(l1 in 0.01f64..100.0, r1 in 0.0f64..100.0, l2 in 0.01f64..100.0, r2 in 0.0f64..100.0) {
        let l = (l1 + l2) / 2.0;
        let r = (r1 + r2) / 2.0;
        // 1/a + 1/b >= 4/(a+b) with a = l1+r1, b = l2+r2 and a+b = 2(l+r)
        prop_assert!(1.0 / (l1 + r1) + 1.0 / (l2 + r2) >= 2.0 / (l + r) * (1.0 - 1e-12));
    }

    #[test]
    fn v_sigma_is_order_independent(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let g = random_connected(15, 12, &mut rng);
        let lengths: Vec<usize> = (0..g.edge_count()).map(|_| rng.random_range(1..8)).collect();
        let base = build_v_sigma(&g, &lengths, 3, 1).unwrap();
        for _ in 0..5 {
            let order = random_order(15, &mut rng);
            prop_assert_eq!(&build_v_sigma_ordered(&g, &lengths, 3, 1, &order).unwrap(), &base);
        }
        // closure is idempotent: re-seeding with the closure changes nothing
        let order: Vec<usize> = (0..15).collect();
        let again = build_v_sigma_ordered(&g, &lengths, 3, 1, &order).unwrap();
        prop_assert_eq!(again, base);
    }

    #[test]
    fn phi_monotone(a in 0.01f64..0.98, da in 0.0f64..0.01, d in 3u32..10) {
        let lo = phi(a, d).unwrap();
        prop_assert!(lo > 0.0 && lo.is_finite());
        prop_assert!(phi(a + da, d).unwrap() >= lo - 1e-12);
        prop_assert!(phi(a, d + 1).unwrap() <= lo + 1e-12);
    }

    #[test]
    fn regime_b_dominates_a(m in 100f64..1e7, e in 0.06f64..0.94, d in 3u32..8) {
        let th = RegimeThresholds::default();
        let b = predict_from_counts(m, m.powf(e).ceil(), d, th).unwrap();
        let a = predict_from_counts(m, 0.0, d, th).unwrap();
        prop_assert!(b.constant >= a.constant);
    }

    #[test]
    fn chains_are_reversible(seed in any::<u64>(), n in 2usize..30, lazy in any::<bool>()) {
        let mut rng = trial_rng(seed, 0);
        let g = random_connected(n, n, &mut rng);
        let edges = g.edges().iter().map(|&(u, v)| (u, v, rng.random_range(0.1..3.0))).collect();
        let w = WeightedGraph::new(n, edges).unwrap();
        let p = transition_matrix(&w, lazy).unwrap();
        prop_assert!(p.row_sum_error() < 1e-12);
        prop_assert!(p.stationarity_error() < 1e-10);
        prop_assert!(p.detailed_balance_error() < 1e-10);
    }

    #[test]
    fn resistance_is_a_metric(seed in any::<u64>(), n in 3usize..15) {
        let mut rng = trial_rng(seed, 0);
        let g = WeightedGraph::from_multigraph(&random_connected(n, n, &mut rng));
        let (a, b, c) = (0, n / 2, n - 1);
        let r = |x, y| effective_resistance(&g, x, y).unwrap();
        prop_assert!((r(a, b) - r(b, a)).abs() < 1e-9);
        prop_assert!(r(a, c) <= r(a, b) + r(b, c) + 1e-9);
    }
}

#[test]
fn js_bound_holds_on_random_small_graphs() {
    for seed in 0..10 {
        let mut rng = trial_rng(seed, 1);
        let g = WeightedGraph::from_multigraph(&random_connected(8, 6, &mut rng));
        let phi = conductance_exact(&g).unwrap().phi / 2.0;
        let p = transition_matrix(&g, true).unwrap();
        assert!(check_js_bound(&p, phi, 200).unwrap().holds());
    }
}
