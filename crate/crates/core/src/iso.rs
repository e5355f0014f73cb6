//! Exact isomorphism for small graphs.
//!
//! Vertices are first partitioned by iterated degree refinement (colour =
//! degree, then the multiset of neighbour colours, until stable); a
//! backtracking matcher then only pairs vertices of equal colour.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::GraphError;
use crate::graph::Graph;

pub const MAX_ISO_VERTICES: usize = 16;

fn refine(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut history = vec![colour.clone()];
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|&u| colour[u]).collect();
                s.sort_unstable();
                (colour[v], s)
            })
            .collect();
        // rank by sorted signature so colours are comparable across graphs
        let keys: BTreeSet<&(usize, Vec<usize>)> = signatures.iter().collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> =
            keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
        let stable = count_classes(&next) == count_classes(&colour);
        colour = next;
        history.push(colour.clone());
        if stable {
            break;
        }
    }
    history
}

fn count_classes(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Decides whether two graphs with at most [`MAX_ISO_VERTICES`] vertices are
/// isomorphic.
pub fn is_isomorphic_small(g1: &Graph, g2: &Graph) -> Result<bool, GraphError> {
    for g in [g1, g2] {
        if g.n() > MAX_ISO_VERTICES {
            return Err(GraphError::TooLarge(g.n()));
        }
    }
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return Ok(false);
    }
    let mut d1: Vec<usize> = g1.vertices().map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = g2.vertices().map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }
    let h1 = refine(g1);
    let h2 = refine(g2);
    if h1.len() != h2.len() {
        return Ok(false);
    }
    for (a, b) in h1.iter().zip(&h2) {
        let mut sa = a.clone();
        let mut sb = b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(false);
        }
    }
    let c1 = h1.last().unwrap();
    let c2 = h2.last().unwrap();
    // match the most constrained vertices first
    let mut order: Vec<usize> = g1.vertices().collect();
    order.sort_by_key(|&v| {
        let class = c1.iter().filter(|&&c| c == c1[v]).count();
        (class, std::cmp::Reverse(g1.degree(v)), v)
    });
    let mut map = vec![usize::MAX; g1.n()];
    let mut used = vec![false; g2.n()];
    Ok(extend(g1, g2, c1, c2, &order, 0, &mut map, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &Graph,
    g2: &Graph,
    c1: &[usize],
    c2: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in g2.vertices() {
        if used[w] || c2[w] != c1[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g1.has_edge(u, v) == g2.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g1, g2, c1, c2, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
