//! Cross-checks the minor oracle against exhaustive label enumeration.

mod common;

use common::{naive_has_minor, random_graph};
use k2l_core::families::{complete_bipartite_2l, necklace, wheel};
use k2l_core::{find_k2l_minor, verify_model, Graph, MinorSearch, OracleBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle(g: &Graph, ell: usize) -> MinorSearch {
    find_k2l_minor(g, ell, OracleBudget::default(), 1).unwrap()
}

fn agree(g: &Graph, ell: usize) {
    let truth = naive_has_minor(g, ell);
    match oracle(g, ell) {
        MinorSearch::Found(m) => {
            assert!(truth, "oracle found a model the brute force denies");
            assert_eq!(verify_model(g, &m), Ok(()));
        }
        MinorSearch::NoMinor => assert!(!truth, "oracle missed a minor on {:?}", g.edges()),
        MinorSearch::BudgetExhausted { .. } => panic!("budget exhausted on a tiny graph"),
    }
}

#[test]
fn small_wheels_match_brute_force() {
    for n in 4..=8 {
        let g = wheel(n).unwrap();
        assert!(naive_has_minor(&g, 3), "wheel({n}) has K_2,3");
        assert!(!naive_has_minor(&g, 4), "wheel({n}) is K_2,4-free");
        agree(&g, 3);
        agree(&g, 4);
    }
}

#[test]
fn small_necklace_and_bipartite() {
    let g = necklace(4).unwrap();
    for ell in 2..=5 {
        agree(&g, ell);
    }
    assert!(!naive_has_minor(&g, 5));
    for ell in 1..=4 {
        let k = complete_bipartite_2l(ell).unwrap();
        assert!(naive_has_minor(&k, ell));
        agree(&k, ell);
        agree(&k, ell + 1);
    }
}

#[test]
fn random_graphs_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..300 {
        let n = rng.gen_range(4..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let ell = 1 + round % 4;
        agree(&g, ell);
    }
}
