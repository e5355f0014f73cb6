//! Immutable simple undirected graphs over dense vertex ids `0..n`.
//!
//! Everything downstream (flows, minor search, the Steiner and nested-cut
//! engines) reads a [`Graph`] and never mutates it. Sets of vertices are
//! carried as [`VertexSet`], which always iterates in ascending id order so
//! that every derived result is deterministic.

use std::collections::VecDeque;

use crate::error::GraphError;
use crate::flow;

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// A set of vertex ids, stored sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    /// Builds a set from a membership mask.
    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &b)| b.then_some(v))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().any(|v| large.contains(v))
    }

    /// Dense membership mask of length `n`. Members `>= n` are ignored.
    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter().filter(|&v| v < n) {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// BFS distance classes from a source vertex. `layers[i]` holds the vertices
/// at distance exactly `i`; unreachable vertices appear in no layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    pub source: usize,
    pub layers: Vec<VertexSet>,
    dist: Vec<Option<usize>>,
}

impl Layering {
    pub fn layer_of(&self, v: usize) -> Option<usize> {
        self.dist.get(v).copied().flatten()
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(VertexSet::len).collect()
    }
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges collapse; self-loops are
    /// rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m2 = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m2 += list.len();
        }
        Ok(Graph { adj, m: m2 / 2 })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Closed neighborhood `N[v]`, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        out
    }

    /// Open neighborhood of a vertex set, excluding the set itself.
    pub fn neighborhood_of_set(&self, set: &VertexSet) -> VertexSet {
        let mask = set.to_mask(self.n());
        set.iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|&u| !mask[u])
            .collect()
    }

    /// Checks the symmetry and simplicity invariants by full scan.
    pub fn check_invariants(&self) -> bool {
        let mut total = 0;
        for (v, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &u in list {
                if u == v || u >= self.n() || self.adj[u].binary_search(&v).is_err() {
                    return false;
                }
            }
            total += list.len();
        }
        total == 2 * self.m
    }

    /// Whether the subgraph induced on `set` is connected (the empty set is not).
    pub fn is_connected_subset(&self, set: &VertexSet) -> bool {
        let Some(start) = set.min() else {
            return false;
        };
        let mask = set.to_mask(self.n());
        let seen = self.reach(&[start], |v| mask[v]);
        seen.iter().filter(|&&b| b).count() == set.len()
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.is_connected_subset(&self.vertices().collect())
    }

    /// Vertices reachable from `sources` through vertices accepted by `allow`.
    /// Sources are always included.
    pub fn reach(&self, sources: &[usize], allow: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] && allow(u) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Connected components of the subgraph induced on `allowed`, each sorted,
    /// ordered by smallest member.
    pub fn components_within(&self, allowed: &[bool]) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for v in self.vertices() {
            if allowed[v] && !seen[v] {
                let comp = self.reach(&[v], |u| allowed[u]);
                let set = VertexSet::from_mask(&comp);
                for u in set.iter() {
                    seen[u] = true;
                }
                out.push(set);
            }
        }
        out
    }

    /// Unweighted distances from a set of sources.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in &self.adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn bfs_layering(&self, s: usize) -> Result<Layering, GraphError> {
        if s >= self.n() {
            return Err(GraphError::VertexOutOfRange(s));
        }
        let dist = self.distances_from(&[s]);
        let depth = dist.iter().flatten().max().map_or(0, |d| d + 1);
        let mut layers = vec![Vec::new(); depth];
        for (v, d) in dist.iter().enumerate() {
            if let Some(d) = d {
                layers[*d].push(v);
            }
        }
        Ok(Layering {
            source: s,
            layers: layers.into_iter().map(VertexSet).collect(),
            dist,
        })
    }

    /// Minimum distance between two vertex sets; 0 when they intersect and
    /// `None` when no path joins them.
    pub fn distance_between_sets(
        &self,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<Option<usize>, GraphError> {
        if a.is_empty() || b.is_empty() {
            return Err(GraphError::EmptySet);
        }
        self.check_set(a)?;
        self.check_set(b)?;
        let dist = self.distances_from(a.as_slice());
        Ok(b.iter().filter_map(|v| dist[v]).min())
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<(), GraphError> {
        match set.max() {
            Some(v) if v >= self.n() => Err(GraphError::VertexOutOfRange(v)),
            _ => Ok(()),
        }
    }

    /// `η(S,T)`: the minimum number of vertices outside `S ∪ T` whose removal
    /// separates `S` from `T`.
    pub fn st_connectivity(&self, s: &VertexSet, t: &VertexSet) -> Result<usize, GraphError> {
        Ok(flow::menger(self, s, t, None)?.value)
    }

    /// Vertex connectivity, with `κ(K_n) = n - 1`.
    pub fn vertex_connectivity(&self) -> Result<usize, GraphError> {
        let n = self.n();
        if n < 2 {
            return Err(GraphError::TooSmall);
        }
        if !self.is_connected() {
            return Ok(0);
        }
        let mut best = n - 1;
        // A minimum separator misses one of the first best+1 vertices, so
        // sources beyond that index cannot improve the bound.
        let mut i = 0;
        while i <= best && i < n {
            for j in (i + 1)..n {
                if self.has_edge(i, j) {
                    continue;
                }
                let k = flow::menger(self, &VertexSet::singleton(i), &VertexSet::singleton(j), None)?
                    .value;
                best = best.min(k);
            }
            i += 1;
        }
        Ok(best)
    }

    /// All twin pairs `u < v` with `N[u] = N[v]`, optionally restricted to a
    /// common degree.
    pub fn find_twins(&self, degree_filter: Option<usize>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, v) in self.edges() {
            if self.degree(u) != self.degree(v) {
                continue;
            }
            if degree_filter.is_some_and(|d| self.degree(u) != d) {
                continue;
            }
            if self.are_twins(u, v) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        u != v && self.has_edge(u, v) && self.closed_neighborhood(u) == self.closed_neighborhood(v)
    }

    /// Contracts the listed edges. Returns the quotient graph and the map from
    /// old ids to new ids; classes are numbered by ascending smallest member.
    pub fn contract_edges(
        &self,
        edges: &[(usize, usize)],
    ) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(u, v) in edges {
            if u >= n || v >= n || !self.has_edge(u, v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                // keep the smaller id as the root so roots are class minima
                let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
                parent[hi] = lo;
            }
        }
        let mut new_id = vec![usize::MAX; n];
        let mut mapping = vec![0; n];
        let mut next = 0;
        for v in 0..n {
            let r = find(&mut parent, v);
            if new_id[r] == usize::MAX {
                new_id[r] = next;
                next += 1;
            }
            mapping[v] = new_id[r];
        }
        let quotient: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (mapping[u], mapping[v]))
            .filter(|(a, b)| a != b)
            .collect();
        Ok((Graph::new(next, &quotient)?, mapping))
    }

    /// Subgraph induced on `keep`, relabelled in ascending order. Returns the
    /// graph and the list of original ids (new id `i` is `ids[i]`).
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let ids: Vec<usize> = keep.iter().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        (Graph::new(ids.len(), &edges).expect("induced edges are valid"), ids)
    }

    /// Same graph with one vertex deleted (ids above it shift down by one).
    pub fn without_vertex(&self, x: usize) -> (Graph, Vec<usize>) {
        self.induced_subgraph(&self.vertices().filter(|&v| v != x).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn build_triangle() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.m(), 3);
        assert!(g.check_invariants());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(2, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn self_loop_and_range_errors() {
        assert_eq!(Graph::new(1, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange(2)));
    }

    #[test]
    fn connectivity_small() {
        assert_eq!(complete(4).vertex_connectivity().unwrap(), 3);
        assert_eq!(cycle(5).vertex_connectivity().unwrap(), 2);
        assert_eq!(Graph::empty(1).vertex_connectivity(), Err(GraphError::TooSmall));
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.vertex_connectivity().unwrap(), 0);
    }

    #[test]
    fn st_connectivity_examples() {
        // K_{2,3}: 0,1 on the small side
        let k23 = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let s = VertexSet::singleton(0);
        let t = VertexSet::singleton(1);
        assert_eq!(k23.st_connectivity(&s, &t).unwrap(), 3);
        let c6 = cycle(6);
        assert_eq!(
            c6.st_connectivity(&VertexSet::singleton(0), &VertexSet::singleton(3))
                .unwrap(),
            2
        );
        assert_eq!(
            c6.st_connectivity(&VertexSet::singleton(0), &VertexSet::singleton(1)),
            Err(GraphError::NotSeparable)
        );
        assert_eq!(
            c6.st_connectivity(&VertexSet::from([0, 2]), &VertexSet::from([2, 4])),
            Err(GraphError::NotSeparable)
        );
    }

    #[test]
    fn layering_basic() {
        let p = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let l = p.bfs_layering(0).unwrap();
        assert_eq!(l.layers, vec![VertexSet::from([0]), VertexSet::from([1]), VertexSet::from([2])]);
        let l = complete(4).bfs_layering(0).unwrap();
        assert_eq!(l.sizes(), vec![1, 3]);
        assert!(p.bfs_layering(3).is_err());
        let disc = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(disc.bfs_layering(0).unwrap().layer_of(2), None);
    }

    #[test]
    fn twins_in_clique() {
        assert_eq!(complete(3).find_twins(None), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(complete(3).find_twins(Some(5)).is_empty());
        assert!(cycle(5).find_twins(None).is_empty());
    }

    #[test]
    fn contraction_examples() {
        let tri = complete(3);
        let (g, map) = tri.contract_edges(&[(0, 1)]).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(map, vec![0, 0, 1]);
        let p = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (g, _) = p.contract_edges(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(p.contract_edges(&[(0, 2)]), Err(GraphError::NotAnEdge(0, 2)));
    }

    #[test]
    fn set_distances() {
        let c6 = cycle(6);
        let d = |a: &[usize], b: &[usize]| {
            c6.distance_between_sets(&a.to_vec().into(), &b.to_vec().into())
                .unwrap()
        };
        assert_eq!(d(&[0], &[1]), Some(1));
        assert_eq!(d(&[0, 1], &[0, 1]), Some(0));
        assert_eq!(d(&[0], &[3]), Some(3));
        let disc = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(
            disc.distance_between_sets(&VertexSet::singleton(0), &VertexSet::singleton(2))
                .unwrap(),
            None
        );
        assert_eq!(
            c6.distance_between_sets(&VertexSet::new(), &VertexSet::singleton(2)),
            Err(GraphError::EmptySet)
        );
    }

    #[test]
    fn vertex_set_ops() {
        let mut s: VertexSet = vec![5, 1, 3, 1].into();
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert!(s.insert(2));
        assert!(!s.insert(2));
        assert!(s.remove(5));
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert!(s.intersects(&VertexSet::from([3, 9])));
        assert_eq!(s.difference(&VertexSet::from([2])).as_slice(), &[1, 3]);
    }
}
