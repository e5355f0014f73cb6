//! Unit vertex-capacity max flow via vertex splitting.
//!
//! Every vertex `v` outside the terminal sets becomes `in(v) -> out(v)` with
//! capacity one. Terminal vertices are uncapacitated, so the source and sink
//! sets behave as if contracted. Augmentation is breadth-first over adjacency
//! lists built in ascending id order, which makes the flow, the cut, and the
//! path decomposition fully deterministic.

use std::collections::VecDeque;

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};

const INF: i32 = i32::MAX / 4;

/// Outcome of one `S`–`T` flow computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Menger {
    pub value: usize,
    /// Minimum cut closest to the source side.
    pub cut: VertexSet,
    /// `value` internally disjoint paths, each starting in `S`, ending in `T`,
    /// with every interior vertex outside `S ∪ T`.
    pub paths: Vec<Vec<usize>>,
}

struct Arc {
    to: usize,
    cap: i32,
    orig: i32,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, orig: cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            orig: 0,
        });
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut pred = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    pred[arc.to] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut v = sink;
        while v != source {
            let a = pred[v];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            v = self.arcs[a ^ 1].to;
        }
        true
    }

    fn residual_reach(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

/// Max flow between vertex sets `s` and `t`, optionally restricted to the
/// vertices marked in `allowed` (terminals are always allowed).
pub fn menger(
    g: &Graph,
    s: &VertexSet,
    t: &VertexSet,
    allowed: Option<&[bool]>,
) -> Result<Menger, GraphError> {
    let n = g.n();
    if s.is_empty() || t.is_empty() {
        return Err(GraphError::EmptySet);
    }
    g.check_set(s)?;
    g.check_set(t)?;
    let in_s = s.to_mask(n);
    let in_t = t.to_mask(n);
    if s.intersects(t) || s.iter().any(|u| g.neighbors(u).iter().any(|&v| in_t[v])) {
        return Err(GraphError::NotSeparable);
    }
    let ok = |v: usize| in_s[v] || in_t[v] || allowed.map_or(true, |a| a[v]);

    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    for v in 0..n {
        if !ok(v) {
            continue;
        }
        if in_s[v] {
            net.add(source, 2 * v, INF);
        }
        let cap = if in_s[v] || in_t[v] { INF } else { 1 };
        net.add(2 * v, 2 * v + 1, cap);
        if in_t[v] {
            net.add(2 * v + 1, sink, INF);
        }
    }
    for v in 0..n {
        if !ok(v) || in_t[v] {
            continue;
        }
        for &u in g.neighbors(v) {
            if ok(u) && !in_s[u] {
                net.add(2 * v + 1, 2 * u, INF);
            }
        }
    }

    let mut value = 0;
    while net.augment(source, sink) {
        value += 1;
    }

    let reach = net.residual_reach(source);
    let cut: VertexSet = (0..n)
        .filter(|&v| ok(v) && !in_s[v] && !in_t[v] && reach[2 * v] && !reach[2 * v + 1])
        .collect();

    let paths = decompose(&mut net, n, source, sink, value, &in_s, &in_t);
    debug_assert_eq!(cut.len(), value);
    Ok(Menger { value, cut, paths })
}

fn decompose(
    net: &mut Network,
    n: usize,
    source: usize,
    sink: usize,
    value: usize,
    in_s: &[bool],
    in_t: &[bool],
) -> Vec<Vec<usize>> {
    let mut paths = Vec::with_capacity(value);
    for _ in 0..value {
        let mut walk = Vec::new();
        let mut u = source;
        while u != sink {
            let a = net.out[u]
                .iter()
                .copied()
                .find(|&a| a % 2 == 0 && net.arcs[a].orig - net.arcs[a].cap > 0)
                .expect("flow conservation");
            net.arcs[a].cap += 1;
            u = net.arcs[a].to;
            if u < 2 * n && u % 2 == 0 {
                walk.push(u / 2);
            }
        }
        paths.push(clean_walk(walk, in_s, in_t));
    }
    paths.sort();
    paths
}

/// Trims a source-to-sink walk to a simple path from its last `S` vertex to
/// the first `T` vertex after it.
fn clean_walk(walk: Vec<usize>, in_s: &[bool], in_t: &[bool]) -> Vec<usize> {
    let first_t = walk.iter().position(|&v| in_t[v]).expect("walk reaches T");
    let last_s = walk[..first_t]
        .iter()
        .rposition(|&v| in_s[v])
        .expect("walk starts in S");
    let mut path: Vec<usize> = Vec::new();
    for &v in &walk[last_s..=first_t] {
        if let Some(pos) = path.iter().position(|&p| p == v) {
            path.truncate(pos + 1);
        } else {
            path.push(v);
        }
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_are_internally_disjoint() {
        // two parallel routes plus a shared hub
        let g = Graph::new(6, &[(0, 1), (1, 5), (0, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap();
        let r = menger(&g, &VertexSet::singleton(0), &VertexSet::singleton(5), None).unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.paths, vec![vec![0, 1, 5], vec![0, 2, 5], vec![0, 3, 4, 5]]);
        assert_eq!(r.cut, VertexSet::from([1, 2, 3]));
    }

    #[test]
    fn allowed_region_restricts_paths() {
        let g = Graph::new(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        let allowed = [true, true, false, true];
        let r = menger(&g, &VertexSet::singleton(0), &VertexSet::singleton(3), Some(&allowed)).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.paths, vec![vec![0, 1, 3]]);
    }

    #[test]
    fn set_terminals_share_no_interior() {
        // S = {0,1} adjacent, both reach 2; 2 reaches T = {3}
        let g = Graph::new(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let r = menger(&g, &VertexSet::from([0, 1]), &VertexSet::singleton(3), None).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.cut, VertexSet::from([2]));
    }
}
