mod common;

use std::collections::BTreeSet;

use common::{random_graph, random_steiner_tree, terminals};
use k2l_core::nested::{disjoint_path_system, is_st_cut, min_vertex_cut, CutSequence};
use k2l_core::steiner::classify;
use k2l_core::{find_k2l_minor, verify_model, Graph, MinorSearch, OracleBudget};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = (Graph, u64)> {
    (4..=max_n, 0.15f64..0.7, any::<u64>()).prop_map(|(n, p, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_graph(&mut rng, n, p), seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn menger_consistency((g, seed) in graph_strategy(14)) {
        if let Some((s, t)) = terminals(&g, seed) {
            let eta = g.st_connectivity(&s, &t).unwrap();
            let cut = min_vertex_cut(&g, &s, &t).unwrap();
            prop_assert_eq!(cut.len(), eta);
            prop_assert!(is_st_cut(&g, &s, &t, &cut));
            if eta > 0 {
                let seq = CutSequence { source: s, sink: t, cuts: vec![cut], eta };
                let ps = disjoint_path_system(&g, &seq).unwrap();
                prop_assert_eq!(ps.paths.len(), eta);
            }
        }
    }

    #[test]
    fn counting_identity((g, seed) in graph_strategy(16)) {
        let x = (seed as usize) % g.n();
        if let Some(tree) = random_steiner_tree(&g, x, seed) {
            let c = classify(&tree);
            prop_assert!(c.counting_identity_holds());
            prop_assert!(c.per_path_bounds_hold());
            prop_assert!(c.per_path.iter().all(|&(e, o)| e >= o));
            prop_assert!(c.non_strictly_internal <= 2 * c.bare_paths.len());
            prop_assert_eq!(c.leaves, tree.leaf_count());
            prop_assert!(c.degree_count_bound(tree.leaf_count() + 1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn layering_respects_distances((g, seed) in graph_strategy(16)) {
        let s = (seed as usize) % g.n();
        let l = g.bfs_layering(s).unwrap();
        let reach = g.reach(&[s], |_| true);
        let total: usize = l.sizes().iter().sum();
        prop_assert_eq!(total, reach.iter().filter(|&&r| r).count());
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (l.layer_of(u), l.layer_of(v)) {
                prop_assert!(a.abs_diff(b) <= 1);
            }
        }
    }

    #[test]
    fn twins_swap_is_automorphism((g, _seed) in graph_strategy(12)) {
        for (u, v) in g.find_twins(None) {
            let swap = |w: usize| if w == u { v } else if w == v { u } else { w };
            for (a, b) in g.edges() {
                prop_assert!(g.has_edge(swap(a), swap(b)));
            }
        }
    }

    #[test]
    fn contraction_partitions((g, seed) in graph_strategy(12)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = g.edges();
        edges.shuffle(&mut rng);
        edges.truncate(rng.gen_range(0..=edges.len().min(4)));
        let (h, map) = g.contract_edges(&edges).unwrap();
        let classes: BTreeSet<usize> = map.iter().copied().collect();
        prop_assert_eq!(classes.len(), h.n());
        for &(u, v) in &edges {
            prop_assert_eq!(map[u], map[v]);
        }
        for (u, v) in g.edges() {
            if map[u] != map[v] {
                prop_assert!(h.has_edge(map[u], map[v]));
            }
        }
        prop_assert!(h.m() <= g.m());
    }

    #[test]
    fn minor_closure((g, seed) in graph_strategy(10)) {
        let ell = 1 + (seed as usize) % 4;
        let budget = OracleBudget::default();
        if let MinorSearch::Found(m) = find_k2l_minor(&g, ell, budget, 1).unwrap() {
            prop_assert_eq!(verify_model(&g, &m), Ok(()));
            if ell > 1 {
                let smaller = m.truncated(ell - 1);
                prop_assert_eq!(verify_model(&g, &smaller), Ok(()));
                prop_assert!(find_k2l_minor(&g, ell - 1, budget, 1).unwrap().model().is_some());
            }
        }
    }
}
