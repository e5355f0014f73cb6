//! Seeded generators shared by the integration and acceptance suites.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::time::Duration;

use k2l_core::nested::{
    diametral_pair, extract_from_nested, find_2nested, layer_cuts, theorem_driver, DriverConfig, Witness,
};
use k2l_core::steiner::{default_iteration_cap, max_leaf_search, LeafSearch, SteinerTree};
use k2l_core::{find_k2l_minor, verify_model, Graph, MinorModel, MinorSearch, OracleBudget, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::new(n, &e).unwrap()
}

/// A prism `C_k × K_2` with a few random chords: 3-connected, long diameter.
pub fn prism(rng: &mut ChaCha8Rng, k: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..k {
        e.push((i, (i + 1) % k));
        e.push((k + i, k + (i + 1) % k));
        e.push((i, k + i));
    }
    for _ in 0..rng.gen_range(0..3) {
        let (u, v) = (rng.gen_range(0..2 * k), rng.gen_range(0..2 * k));
        if u != v {
            e.push((u.min(v), u.max(v)));
        }
    }
    e.sort_unstable();
    e.dedup();
    Graph::new(2 * k, &e).unwrap()
}

/// Dense random graphs and chorded prisms, rejected until 3-connected; n ≤ 20.
pub fn three_connected(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = if rng.gen_bool(0.5) {
            let n = rng.gen_range(6..=20);
            let p = rng.gen_range(0.25..0.6);
            random_graph(rng, n, p)
        } else {
            let k = rng.gen_range(3..=10);
            prism(rng, k)
        };
        if g.vertex_connectivity().unwrap() >= 3 {
            return g;
        }
    }
}

/// Disjoint, non-adjacent random terminal sets, if the graph allows them.
pub fn terminals(g: &Graph, seed: u64) -> Option<(VertexSet, VertexSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
    let mut order: Vec<usize> = g.vertices().collect();
    order.shuffle(&mut rng);
    let s_len = rng.gen_range(1..=2);
    let s: VertexSet = order[..s_len].iter().copied().collect();
    let banned: BTreeSet<usize> = s.iter().chain(g.neighborhood_of_set(&s).iter()).collect();
    let t: VertexSet = order[s_len..]
        .iter()
        .copied()
        .filter(|v| !banned.contains(v))
        .take(rng.gen_range(1..=2))
        .collect();
    (!t.is_empty()).then_some((s, t))
}

/// A Steiner tree from a random spanning tree of the component of `G - x`
/// holding `N(x)`, pruned to the terminals.
pub fn random_steiner_tree(g: &Graph, x: usize, seed: u64) -> Option<SteinerTree> {
    let terms: Vec<usize> = g.neighbors(x).to_vec();
    let first = *terms.first()?;
    let reach = g.reach(&[first], |v| v != x);
    if terms.iter().any(|&t| !reach[t]) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| u != x && v != x && reach[u])
        .collect();
    edges.shuffle(&mut rng);
    let mut parent: Vec<usize> = g.vertices().collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut tree: Vec<(usize, usize)> = Vec::new();
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            tree.push((u, v));
        }
    }
    let is_term = |v: usize| terms.contains(&v);
    loop {
        let mut deg = vec![0usize; g.n()];
        for &(u, v) in &tree {
            deg[u] += 1;
            deg[v] += 1;
        }
        let before = tree.len();
        tree.retain(|&(u, v)| !((deg[u] == 1 && !is_term(u)) || (deg[v] == 1 && !is_term(v))));
        if tree.len() == before {
            break;
        }
    }
    Some(SteinerTree::from_edges(g, x, &tree).expect("pruned spanning tree is a Steiner tree"))
}
/// Labels every vertex unused, hub A, hub B or one of `ell` legs (legs opened
/// in order of their smallest vertex) and tests each complete labelling.
pub fn naive_has_minor(g: &Graph, ell: usize) -> bool {
    let n = g.n();
    assert!(n <= 10);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u))
        .collect();
    let connected = |set: u32| -> bool {
        if set == 0 {
            return false;
        }
        let mut seen = set & set.wrapping_neg();
        loop {
            let mut grow = seen;
            for v in 0..n {
                if seen >> v & 1 == 1 {
                    grow |= adj[v] & set;
                }
            }
            if grow == seen {
                return seen == set;
            }
            seen = grow;
        }
    };
    let touches = |a: u32, b: u32| (0..n).any(|v| a >> v & 1 == 1 && adj[v] & b != 0);
    let mut label = vec![0usize; n];
    fn rec(
        v: usize,
        opened: usize,
        ell: usize,
        label: &mut Vec<usize>,
        check: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if v == label.len() {
            return opened == ell && check(label);
        }
        // 0 unused, 1 A, 2 B, 3.. legs
        let top = 3 + (opened + 1).min(ell);
        for l in 0..top {
            label[v] = l;
            let next = if l >= 3 && l - 3 == opened { opened + 1 } else { opened };
            if rec(v + 1, next, ell, label, check) {
                return true;
            }
        }
        false
    }
    let check = |label: &[usize]| -> bool {
        let mut sets = vec![0u32; ell + 3];
        for (v, &l) in label.iter().enumerate() {
            sets[l] |= 1 << v;
        }
        let (a, b) = (sets[1], sets[2]);
        connected(a)
            && connected(b)
            && (3..ell + 3).all(|i| connected(sets[i]) && touches(sets[i], a) && touches(sets[i], b))
    };
    rec(0, 0, ell, &mut label, &check)
}

pub struct StressTally {
    pub models: usize,
    pub twins: usize,
    pub decided: usize,
}

fn check_model(g: &Graph, m: &MinorModel, truth: &MinorSearch, tally: &mut StressTally, engine: &str) {
    assert_eq!(verify_model(g, m), Ok(()), "{engine} emitted a bad certificate");
    assert!(
        !matches!(truth, MinorSearch::NoMinor),
        "{engine} found K_2,{} in a graph the oracle proves free of it",
        m.ell
    );
    tally.models += 1;
}

fn check_witness(g: &Graph, w: &Witness, truth: &MinorSearch, tally: &mut StressTally, engine: &str) {
    match w {
        Witness::MinorFound(m) => check_model(g, m, truth, tally, engine),
        Witness::TwinsFound(v, x) => {
            assert!(g.are_twins(*v, *x) && g.degree(*v) == 5 && g.degree(*x) == 5);
            tally.twins += 1;
        }
        _ => {}
    }
}

/// Runs the oracle, the Steiner engine at a max-degree vertex, the nested-cut
/// extractor on a diametral pair and the driver on `count` seeded 3-connected
/// graphs. Panics on any unverifiable model or any model the oracle refutes.
pub fn run_stress(seed: u64, count: usize) -> StressTally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = OracleBudget {
        node_limit: 2_000_000,
        time_limit: Duration::from_secs(20),
    };
    let mut tally = StressTally { models: 0, twins: 0, decided: 0 };
    for _ in 0..count {
        let g = three_connected(&mut rng);
        let ell = rng.gen_range(2..=4);
        let truth = find_k2l_minor(&g, ell, budget, 1).unwrap();
        match &truth {
            MinorSearch::Found(m) => {
                assert_eq!(verify_model(&g, m), Ok(()));
                tally.decided += 1;
            }
            MinorSearch::NoMinor => tally.decided += 1,
            MinorSearch::BudgetExhausted { .. } => {}
        }

        let x = g.vertices().max_by_key(|&v| (g.degree(v), Reverse(v))).unwrap();
        if let LeafSearch::Minor { model, .. } =
            max_leaf_search(&g, x, ell, default_iteration_cap(&g, x)).unwrap()
        {
            check_model(&g, &model, &truth, &mut tally, "steiner");
        }

        if let Some((s, t, d)) = diametral_pair(&g) {
            if d >= 2 {
                let (ss, ts) = (VertexSet::singleton(s), VertexSet::singleton(t));
                let eta = g.st_connectivity(&ss, &ts).unwrap();
                let seq = find_2nested(&g, &ss, &ts, &layer_cuts(&g, s, t).unwrap(), eta);
                if !seq.is_empty() {
                    let w = extract_from_nested(&g, &seq, ell).unwrap();
                    check_witness(&g, &w, &truth, &mut tally, "nested");
                }
            }
        }

        let cfg = DriverConfig {
            ell,
            d_override: Some(1),
            distance_override: Some(2),
            n_threshold_override: Some(1),
            skip_hypotheses: true,
        };
        let w = theorem_driver(&g, &cfg).unwrap();
        check_witness(&g, &w, &truth, &mut tally, "driver");
    }
    tally
}
