use std::collections::VecDeque;

use crate::error::EngineError;
use crate::graph::{Graph, VertexSet};

use super::paths::{Measure, PathSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Case {
    /// A connector with at least one interior vertex joins the segments of
    /// paths `a < b`; its interior avoids both paths.
    Case1 {
        a: usize,
        b: usize,
        connector: Vec<usize>,
    },
    /// Some vertex of the gap lies on no path; `component` is the first such
    /// component and `path` the lowest path it touches.
    Case2 { component: VertexSet, path: usize },
    /// The gap is covered by the paths; `v` is the first gap vertex of path 0.
    Case3 { v: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCase {
    pub j: usize,
    pub case: Case,
}

impl GapCase {
    pub fn number(&self) -> u8 {
        match self.case {
            Case::Case1 { .. } => 1,
            Case::Case2 { .. } => 2,
            Case::Case3 { .. } => 3,
        }
    }
}

/// Shortest connector of length ≥ 2 from the segment of `a` to the segment of
/// `b` in gap `j`, interior in `Y_j \ (P_a ∪ P_b)`.
pub fn connector(g: &Graph, ps: &PathSystem, j: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let y = ps.gaps[j].to_mask(n);
    let mut blocked = vec![false; n];
    for &v in ps.paths[a].iter().chain(&ps.paths[b]) {
        blocked[v] = true;
    }
    let mut target = vec![false; n];
    for &v in ps.segment(b, j) {
        target[v] = true;
    }
    let mut sources: Vec<usize> = ps.segment(a, j).to_vec();
    sources.sort_unstable();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &s in &sources {
        parent[s] = s;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        let interior = parent[v] != v;
        for &u in g.neighbors(v) {
            if interior && target[u] {
                let mut path = vec![u, v];
                let mut cur = v;
                while parent[cur] != cur {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if y[u] && !blocked[u] && parent[u] == usize::MAX {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

/// Every pair `a < b` with a connector in gap `j`, ascending.
pub fn connectors_in_gap(g: &Graph, ps: &PathSystem, j: usize) -> Vec<(usize, usize, Vec<usize>)> {
    let eta = ps.eta();
    let mut out = Vec::new();
    for a in 0..eta {
        for b in a + 1..eta {
            if let Some(c) = connector(g, ps, j, a, b) {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn free_components(g: &Graph, ps: &PathSystem, j: usize) -> Vec<VertexSet> {
    let owner = ps.on_paths(g.n());
    let mut free = vec![false; g.n()];
    for v in ps.gaps[j].iter() {
        free[v] = owner[v].is_none();
    }
    g.components_within(&free)
}

/// Paths whose segment in gap `j` touches `comp`, ascending.
fn attached_paths(g: &Graph, ps: &PathSystem, j: usize, comp: &VertexSet) -> Vec<usize> {
    (0..ps.eta())
        .filter(|&a| {
            ps.segment(a, j)
                .iter()
                .any(|&v| g.neighbors(v).iter().any(|&u| comp.contains(u)))
        })
        .collect()
}

pub fn classify_gap(g: &Graph, ps: &PathSystem, j: usize) -> GapCase {
    let eta = ps.eta();
    for a in 0..eta {
        for b in a + 1..eta {
            if let Some(connector) = connector(g, ps, j, a, b) {
                return GapCase {
                    j,
                    case: Case::Case1 { a, b, connector },
                };
            }
        }
    }
    if let Some(component) = free_components(g, ps, j).into_iter().next() {
        let path = attached_paths(g, ps, j, &component)
            .first()
            .copied()
            .unwrap_or(0);
        return GapCase {
            j,
            case: Case::Case2 { component, path },
        };
    }
    let v = *ps
        .interior(0, j)
        .first()
        .expect("2-nested cuts leave a gap vertex on every path");
    GapCase {
        j,
        case: Case::Case3 { v },
    }
}

/// `(#case 1, #case 2, -length)` summed over gaps.
pub fn measure(g: &Graph, ps: &PathSystem) -> Measure {
    let (mut c1, mut c2, mut len) = (0, 0, 0isize);
    for j in 0..ps.gap_count() {
        match classify_gap(g, ps, j).number() {
            1 => c1 += 1,
            2 => c2 += 1,
            _ => {}
        }
        len -= ps.gap_length(j) as isize;
    }
    (c1, c2, len)
}

fn splice(head: &[usize], tail: &[usize]) -> Vec<usize> {
    head.iter().chain(tail).copied().collect()
}

/// Shortest path inside `comp` from a neighbour of `x` to a neighbour of `y`,
/// returned with `x` and `y` attached at the ends.
fn through_component(g: &Graph, comp: &VertexSet, x: usize, y: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[x] = x;
    let mut queue = VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if u == y && v != x {
                let mut path = vec![y, v];
                let mut cur = v;
                while cur != x {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if comp.contains(u) && parent[u] == usize::MAX {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

/// Candidate path systems for gap `j`, in the fixed try order: detours
/// through free components, chord shortcuts, crossing swaps.
fn candidates(g: &Graph, ps: &PathSystem, j: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for comp in free_components(g, ps, j) {
        for a in attached_paths(g, ps, j, &comp) {
            let (lo, hi) = ps.range(a, j);
            let p = &ps.paths[a];
            let touch: Vec<usize> = (lo..=hi)
                .filter(|&i| g.neighbors(p[i]).iter().any(|&u| comp.contains(u)))
                .collect();
            // outermost attachments first
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for (x, &i) in touch.iter().enumerate() {
                for &k in &touch[x + 1..] {
                    pairs.push((i, k));
                }
            }
            pairs.sort_by_key(|&(i, k)| (std::cmp::Reverse(k - i), i));
            for (i, k) in pairs {
                if let Some(detour) = through_component(g, &comp, p[i], p[k]) {
                    let mut paths = ps.paths.clone();
                    paths[a] = splice(&p[..i], &splice(&detour, &p[k + 1..]));
                    out.push(paths);
                }
            }
        }
    }
    for a in 0..ps.eta() {
        let (lo, hi) = ps.range(a, j);
        let p = &ps.paths[a];
        for i in lo..=hi {
            for k in i + 2..=hi {
                if g.has_edge(p[i], p[k]) {
                    let mut paths = ps.paths.clone();
                    paths[a] = splice(&p[..=i], &p[k..]);
                    out.push(paths);
                }
            }
        }
    }
    for a in 0..ps.eta() {
        for b in 0..ps.eta() {
            if a != b {
                crossing_swaps(g, ps, j, a, b, &mut out);
            }
        }
    }
    out
}

/// `P_a ← P_a[..=p] + P_b[q..]` and `P_b ← P_b[..=p'] + P_a[q'..]` for edges
/// `P_a[p] P_b[q]` and `P_b[p'] P_a[q']` with `p < q'` and `p' < q`.
fn crossing_swaps(
    g: &Graph,
    ps: &PathSystem,
    j: usize,
    a: usize,
    b: usize,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let (pa, qa) = ps.range(a, j);
    let (pb, qb) = ps.range(b, j);
    let (x, y) = (&ps.paths[a], &ps.paths[b]);
    for p in pa + 1..qa {
        for q in pb..=qb {
            if !g.has_edge(x[p], y[q]) {
                continue;
            }
            for p2 in pb..q {
                for q2 in p + 1..=qa {
                    if !g.has_edge(y[p2], x[q2]) {
                        continue;
                    }
                    let mut paths = ps.paths.clone();
                    paths[a] = splice(&x[..=p], &y[q..]);
                    paths[b] = splice(&y[..=p2], &x[q2..]);
                    out.push(paths);
                }
            }
        }
    }
}

/// First exchange in gap `j` that yields a valid system with a strictly
/// larger [`measure`].
pub fn reroute(g: &Graph, ps: &PathSystem, gap: &GapCase) -> Result<PathSystem, EngineError> {
    if gap.number() == 1 {
        return Err(EngineError::NoExchangeApplicable);
    }
    let current = measure(g, ps);
    for paths in candidates(g, ps, gap.j) {
        let next = ps.with_paths(paths);
        if next.validate(g).is_ok() && measure(g, &next) > current {
            return Ok(next);
        }
    }
    Err(EngineError::NoExchangeApplicable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nested::fixtures::{ladder, ladder_cuts};
    use crate::nested::paths::disjoint_path_system;

    #[test]
    fn subdivided_rung_is_case1() {
        let g = ladder(9, &[0, 4, 8], &[4]);
        let ps = disjoint_path_system(&g, &ladder_cuts(9, &[2, 6])).unwrap();
        let gc = classify_gap(&g, &ps, 0);
        assert_eq!(
            gc.case,
            Case::Case1 {
                a: 0,
                b: 1,
                connector: vec![4, 18, 13]
            }
        );
    }

    #[test]
    fn plain_rungs_are_case3() {
        let g = ladder(9, &[0, 4, 8], &[]);
        let ps = disjoint_path_system(&g, &ladder_cuts(9, &[2, 6])).unwrap();
        assert_eq!(classify_gap(&g, &ps, 0).number(), 3);
        assert!(reroute(&g, &ps, &classify_gap(&g, &ps, 0)).is_err());
    }

    #[test]
    fn pendant_component_is_case2() {
        // ladder plus a vertex hanging off rail vertex 4
        let base = ladder(9, &[0, 8], &[]);
        let mut e = base.edges();
        e.push((4, 18));
        let g = Graph::new(19, &e).unwrap();
        let ps = disjoint_path_system(&g, &ladder_cuts(9, &[2, 6])).unwrap();
        let gc = classify_gap(&g, &ps, 0);
        assert_eq!(
            gc.case,
            Case::Case2 {
                component: VertexSet::from([18]),
                path: 0
            }
        );
    }

    #[test]
    fn detour_through_triangle_component() {
        // component {18, 19} attached to 3, 4, 5: the outermost detour frees 4
        // and its rung to the other rail then becomes a connector
        let base = ladder(9, &[0, 4, 8], &[]);
        let mut e = base.edges();
        e.extend([(3, 18), (18, 19), (19, 5), (4, 19)]);
        let g = Graph::new(20, &e).unwrap();
        let ps = disjoint_path_system(&g, &ladder_cuts(9, &[2, 6])).unwrap();
        let gc = classify_gap(&g, &ps, 0);
        assert_eq!(gc.number(), 2);
        let next = reroute(&g, &ps, &gc).unwrap();
        assert!(next.validate(&g).is_ok());
        assert!(measure(&g, &next) > measure(&g, &ps));
        assert_eq!(classify_gap(&g, &next, 0).number(), 1);
    }

    #[test]
    fn chord_shortens_gap() {
        let base = ladder(9, &[0, 8], &[]);
        let mut e = base.edges();
        e.push((3, 5));
        let g = Graph::new(18, &e).unwrap();
        let ps = disjoint_path_system(&g, &ladder_cuts(9, &[2, 6])).unwrap();
        // force the rail that ignores the chord
        let ps = ps.with_paths(vec![(0..9).collect(), (9..18).collect()]);
        assert!(ps.validate(&g).is_ok());
        let gc = classify_gap(&g, &ps, 0);
        assert_eq!(gc.number(), 3);
        let next = reroute(&g, &ps, &gc).unwrap();
        assert!(measure(&g, &next) > measure(&g, &ps));
    }
}
