//! Max-leaf Steiner trees around a high-degree vertex.
//!
//! Given `x`, the terminals are `X = N(x)` and the host is `G - x`. A Steiner
//! tree spans `X` inside the host and has every leaf in `X`. Once such a tree
//! has `ℓ` leaves, contracting its internal vertices gives a `K_{2,ℓ}` minor
//! with `x` as the other hub. The engine climbs towards more leaves using
//! exchange moves: add one or two connecting paths whose interiors avoid the
//! tree, then delete cycle edges and prune non-terminal leaves. A move is only
//! applied when the leaf count strictly increases, so the search terminates
//! after at most `|X|` moves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::EngineError;
use crate::graph::{Graph, VertexSet};
use crate::minor::{verify_model, MinorModel};

type Edge = (usize, usize);

fn norm(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A tree inside `G - x` spanning `X = N(x)` with all leaves in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    pub x: usize,
    pub terminals: VertexSet,
    vertices: BTreeSet<usize>,
    edges: BTreeSet<Edge>,
}

impl SteinerTree {
    /// Builds and validates a tree from an explicit edge list (a lone
    /// terminal is allowed when `X` has one vertex).
    pub fn from_edges(g: &Graph, x: usize, edges: &[Edge]) -> Result<Self, EngineError> {
        let terminals: VertexSet = g.neighbors(x).iter().copied().collect();
        let mut vertices: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        if edges.is_empty() {
            vertices.extend(terminals.iter());
        }
        let tree = SteinerTree {
            x,
            terminals,
            vertices,
            edges: edges.iter().map(|&(u, v)| norm(u, v)).collect(),
        };
        tree.validate(g)?;
        Ok(tree)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    fn adjacency(&self) -> BTreeMap<usize, Vec<usize>> {
        adjacency(&self.vertices, &self.edges)
    }

    /// Vertices of tree degree at most one.
    pub fn leaves(&self) -> VertexSet {
        leaves_of(&self.adjacency())
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    /// Tree vertices that are not leaves.
    pub fn internal(&self) -> VertexSet {
        let adj = self.adjacency();
        adj.iter()
            .filter(|(_, n)| n.len() >= 2)
            .map(|(&v, _)| v)
            .collect()
    }

    /// The unique tree path between two tree vertices.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut parent = BTreeMap::new();
        parent.insert(from, from);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &u in &adj[&v] {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(u) {
                    e.insert(v);
                    queue.push_back(u);
                }
            }
        }
        parent.get(&to)?;
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::InvalidTree(m));
        if self.vertices.contains(&self.x) {
            return bad(format!("tree uses the removed vertex {}", self.x));
        }
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return bad(format!("({u}, {v}) is not an edge of the host"));
            }
        }
        if self.vertices.is_empty() {
            return bad("empty tree".into());
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return bad("edge count is not vertex count minus one".into());
        }
        let adj = self.adjacency();
        let start = *self.vertices.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[&v] {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        if seen.len() != self.vertices.len() {
            return bad("tree is disconnected".into());
        }
        if let Some(t) = self.terminals.iter().find(|t| !self.vertices.contains(t)) {
            return bad(format!("terminal {t} is not spanned"));
        }
        if let Some(l) = self.leaves().iter().find(|&l| !self.terminals.contains(l)) {
            return bad(format!("leaf {l} is not a terminal"));
        }
        Ok(())
    }
}

fn adjacency(vertices: &BTreeSet<usize>, edges: &BTreeSet<Edge>) -> BTreeMap<usize, Vec<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
    for &(u, v) in edges {
        adj.get_mut(&u).unwrap().push(v);
        adj.get_mut(&v).unwrap().push(u);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    adj
}

fn leaves_of(adj: &BTreeMap<usize, Vec<usize>>) -> VertexSet {
    adj.iter()
        .filter(|(_, n)| n.len() <= 1)
        .map(|(&v, _)| v)
        .collect()
}

/// Repeatedly deletes non-terminal vertices of degree at most one.
fn prune(vertices: &mut BTreeSet<usize>, edges: &mut BTreeSet<Edge>, terminals: &VertexSet) {
    let mut adj = adjacency(vertices, edges);
    let mut queue: VecDeque<usize> = adj
        .iter()
        .filter(|(v, n)| n.len() <= 1 && !terminals.contains(**v))
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = queue.pop_front() {
        let Some(nbrs) = adj.remove(&v) else { continue };
        vertices.remove(&v);
        for u in nbrs {
            edges.remove(&norm(u, v));
            let list = adj.get_mut(&u).unwrap();
            list.retain(|&w| w != v);
            if list.len() <= 1 && !terminals.contains(u) {
                queue.push_back(u);
            }
        }
    }
}

/// Label of a terminal in the bare-path decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Branching,
    Leaf,
    /// First or last terminal of its bare path that is not a leaf.
    NonStrictlyInternal,
    Even,
    Odd,
}

/// A component of the tree minus its branching vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarePath {
    /// All vertices in path order, starting at the end with the smaller id.
    pub vertices: Vec<usize>,
    /// The terminals `u_1..u_s` in path order.
    pub terminals: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClassification {
    pub branching: VertexSet,
    pub bare_paths: Vec<BarePath>,
    pub labels: BTreeMap<usize, Label>,
    pub terminal_count: usize,
    pub leaves: usize,
    pub branching_terminals: usize,
    /// Terminals at either end of their bare path, leaves included.
    pub non_strictly_internal: usize,
    pub even: usize,
    pub odd: usize,
    /// `(even, odd)` per bare path.
    pub per_path: Vec<(usize, usize)>,
}

impl PathClassification {
    /// `|X| = branching terminals + non-strictly-internal + e + o`.
    pub fn counting_identity_holds(&self) -> bool {
        self.terminal_count
            == self.branching_terminals + self.non_strictly_internal + self.even + self.odd
    }

    /// `e ≥ o` on every bare path and at most two end terminals per path.
    pub fn per_path_bounds_hold(&self) -> bool {
        self.per_path.iter().all(|&(e, o)| e >= o)
            && self.non_strictly_internal <= 2 * self.bare_paths.len()
    }

    /// The degree-lemma count `|X| ≤ (ℓ-1) + o + e + 4ℓ`, valid whenever the
    /// tree has at most `ℓ - 1` leaves.
    pub fn degree_count_bound(&self, ell: usize) -> bool {
        self.terminal_count < ell + self.odd + self.even + 4 * ell
    }

    /// Previous and next terminal of an even or odd terminal on its bare path.
    pub fn flanking(&self, u: usize) -> Option<(usize, usize)> {
        self.bare_paths.iter().find_map(|p| {
            let i = p.terminals.iter().position(|&t| t == u)?;
            (i > 0 && i + 1 < p.terminals.len()).then(|| (p.terminals[i - 1], p.terminals[i + 1]))
        })
    }

    pub fn even_vertices(&self) -> Vec<usize> {
        self.labels
            .iter()
            .filter(|(_, l)| **l == Label::Even)
            .map(|(&v, _)| v)
            .collect()
    }
}

/// Splits the tree at its branching vertices and labels every terminal.
pub fn classify(t: &SteinerTree) -> PathClassification {
    let adj = t.adjacency();
    let branching: VertexSet = adj
        .iter()
        .filter(|(_, n)| n.len() >= 3)
        .map(|(&v, _)| v)
        .collect();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut bare_paths = Vec::new();
    // walk each component of the tree minus branching vertices from an end
    for &v in adj.keys() {
        if branching.contains(v) || seen.contains(&v) {
            continue;
        }
        let inner = |w: usize| -> Vec<usize> {
            adj[&w]
                .iter()
                .copied()
                .filter(|u| !branching.contains(*u))
                .collect()
        };
        // find the ends of this component, then start from the smaller one
        let mut comp = vec![v];
        let mut stack = vec![v];
        let mut local: BTreeSet<usize> = BTreeSet::from([v]);
        while let Some(a) = stack.pop() {
            for b in inner(a) {
                if local.insert(b) {
                    comp.push(b);
                    stack.push(b);
                }
            }
        }
        let start = *local
            .iter()
            .filter(|&&a| inner(a).len() <= 1)
            .min()
            .expect("a path component has an end");
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = inner(cur).into_iter().find(|&b| b != prev);
            match next {
                Some(b) if !order.contains(&b) => {
                    order.push(b);
                    prev = cur;
                    cur = b;
                }
                _ => break,
            }
        }
        seen.extend(local);
        let terminals: Vec<usize> = order.iter().copied().filter(|&a| t.terminals.contains(a)).collect();
        bare_paths.push(BarePath {
            vertices: order,
            terminals,
        });
    }
    bare_paths.sort_by_key(|p| p.vertices[0]);

    let mut labels = BTreeMap::new();
    let mut per_path = Vec::new();
    let (mut even, mut odd, mut nsi, mut leaves) = (0, 0, 0, 0);
    for p in &bare_paths {
        let s = p.terminals.len();
        let (mut pe, mut po) = (0, 0);
        for (i, &u) in p.terminals.iter().enumerate() {
            let pos = i + 1;
            let label = if adj[&u].len() <= 1 {
                leaves += 1;
                nsi += 1;
                Label::Leaf
            } else if pos == 1 || pos == s {
                nsi += 1;
                Label::NonStrictlyInternal
            } else if pos % 2 == 0 {
                pe += 1;
                Label::Even
            } else {
                po += 1;
                Label::Odd
            };
            labels.insert(u, label);
        }
        even += pe;
        odd += po;
        per_path.push((pe, po));
    }
    let mut branching_terminals = 0;
    for b in branching.iter() {
        if t.terminals.contains(b) {
            labels.insert(b, Label::Branching);
            branching_terminals += 1;
        }
    }
    PathClassification {
        branching,
        bare_paths,
        labels,
        terminal_count: t.terminals.len(),
        leaves,
        branching_terminals,
        non_strictly_internal: nsi,
        even,
        odd,
        per_path,
    }
}

/// Heuristic start: attach terminals in ascending order by shortest paths to
/// the current tree, then prune.
pub fn initial_steiner_tree(g: &Graph, x: usize) -> Result<SteinerTree, EngineError> {
    if x >= g.n() {
        return Err(crate::error::GraphError::VertexOutOfRange(x).into());
    }
    let terminals: VertexSet = g.neighbors(x).iter().copied().collect();
    let Some(first) = VertexSet::min(&terminals) else {
        return Err(EngineError::IsolatedVertex(x));
    };
    let reach = g.reach(&[first], |v| v != x);
    if terminals.iter().any(|t| !reach[t]) {
        return Err(EngineError::TerminalsDisconnected);
    }
    let mut vertices = BTreeSet::from([first]);
    let mut edges = BTreeSet::new();
    for t in terminals.iter() {
        if vertices.contains(&t) {
            continue;
        }
        let mut parent = vec![usize::MAX; g.n()];
        parent[t] = t;
        let mut queue = VecDeque::from([t]);
        let mut hit = None;
        'bfs: while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if u == x || parent[u] != usize::MAX {
                    continue;
                }
                parent[u] = v;
                if vertices.contains(&u) {
                    hit = Some(u);
                    break 'bfs;
                }
                queue.push_back(u);
            }
        }
        let mut cur = hit.expect("terminal is reachable");
        while cur != t {
            let p = parent[cur];
            edges.insert(norm(cur, p));
            vertices.insert(p);
            cur = p;
        }
    }
    prune(&mut vertices, &mut edges, &terminals);
    let tree = SteinerTree {
        x,
        terminals,
        vertices,
        edges,
    };
    debug_assert!(tree.validate(g).is_ok());
    Ok(tree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// Path out of the tree segment between the flanking terminals of an even
    /// terminal.
    QuAugment,
    /// Tree through a component of the non-tree vertices joining three tree
    /// vertices.
    ComponentReroute,
    /// Any single connecting path between two tree vertices.
    PathSwap,
    /// Two connecting paths ending on the same leaf.
    DoubleQuCombine,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::QuAugment => "qu-augment",
            MoveKind::ComponentReroute => "component-reroute",
            MoveKind::PathSwap => "path-swap",
            MoveKind::DoubleQuCombine => "double-qu-combine",
        };
        f.write_str(s)
    }
}

/// An exchange: add the paths, delete the edges, prune.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub added_paths: Vec<Vec<usize>>,
    pub removed_tree_edges: Vec<Edge>,
}

impl Move {
    pub fn apply(&self, t: &SteinerTree) -> SteinerTree {
        let mut vertices = t.vertices.clone();
        let mut edges = t.edges.clone();
        for p in &self.added_paths {
            vertices.extend(p.iter().copied());
            for w in p.windows(2) {
                edges.insert(norm(w[0], w[1]));
            }
        }
        for e in &self.removed_tree_edges {
            edges.remove(e);
        }
        prune(&mut vertices, &mut edges, &t.terminals);
        SteinerTree {
            x: t.x,
            terminals: t.terminals.clone(),
            vertices,
            edges,
        }
    }
}

/// Read-only context for move discovery.
struct Mover<'a> {
    g: &'a Graph,
    t: &'a SteinerTree,
    current: usize,
}

impl<'a> Mover<'a> {
    fn free(&self, v: usize) -> bool {
        v != self.t.x && !self.t.contains(v)
    }

    /// Shortest connecting paths from `start` (a tree vertex) through non-tree
    /// vertices to every tree vertex accepted by `target`, one per target,
    /// ordered by target id. Direct non-tree edges count as paths.
    fn connectors(&self, start: usize, target: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let g = self.g;
        let mut parent = vec![usize::MAX; g.n()];
        parent[start] = start;
        let mut queue = VecDeque::from([start]);
        let mut found: BTreeMap<usize, usize> = BTreeMap::new();
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if u == self.t.x || u == start {
                    continue;
                }
                if self.t.contains(u) {
                    let tree_edge = v == start && self.t.edges.contains(&norm(u, v));
                    if !tree_edge && target(u) && !found.contains_key(&u) {
                        found.insert(u, v);
                    }
                } else if parent[u] == usize::MAX {
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        found
            .into_iter()
            .map(|(end, last)| {
                let mut path = vec![end, last];
                let mut cur = last;
                while cur != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                path.dedup();
                path
            })
            .collect()
    }

    /// Adds the paths and picks the cycle-edge deletions that maximise the
    /// pruned leaf count. Returns a move only if it beats the current tree.
    fn evaluate(&self, kind: MoveKind, paths: Vec<Vec<usize>>) -> Option<Move> {
        let mut vertices = self.t.vertices.clone();
        let mut edges = self.t.edges.clone();
        for p in &paths {
            vertices.extend(p.iter().copied());
            for w in p.windows(2) {
                edges.insert(norm(w[0], w[1]));
            }
        }
        let cyclomatic = edges.len() + 1 - vertices.len();
        if cyclomatic == 0 || cyclomatic > 2 {
            return None;
        }
        let mut best: Option<(usize, Vec<Edge>)> = None;
        let mut consider = |removed: Vec<Edge>, vs: &BTreeSet<usize>, es: &BTreeSet<Edge>| {
            let mut vs = vs.clone();
            let mut es = es.clone();
            prune(&mut vs, &mut es, &self.t.terminals);
            let leaves = leaves_of(&adjacency(&vs, &es)).len();
            if leaves > self.current && best.as_ref().map_or(true, |(b, _)| leaves > *b) {
                best = Some((leaves, removed));
            }
        };
        for e1 in cycle_edges(&vertices, &edges) {
            let mut es1 = edges.clone();
            es1.remove(&e1);
            if cyclomatic == 1 {
                consider(vec![e1], &vertices, &es1);
                continue;
            }
            for e2 in cycle_edges(&vertices, &es1) {
                if e2 <= e1 {
                    continue;
                }
                let mut es2 = es1.clone();
                es2.remove(&e2);
                consider(vec![e1, e2], &vertices, &es2);
            }
        }
        best.map(|(_, removed)| Move {
            kind,
            added_paths: paths,
            removed_tree_edges: removed,
        })
    }

    fn qu_augment(&self, class: &PathClassification) -> Option<Move> {
        for u in class.even_vertices() {
            let (v, w) = class.flanking(u)?;
            let span = self.t.path(v, w)?;
            let inside: BTreeSet<usize> = span.iter().copied().collect();
            for &z in &span[1..span.len() - 1] {
                for q in self.connectors(z, |y| !inside.contains(&y)) {
                    if let Some(m) = self.evaluate(MoveKind::QuAugment, vec![q]) {
                        return Some(m);
                    }
                }
            }
        }
        None
    }

    fn component_reroute(&self) -> Option<Move> {
        let g = self.g;
        let free: Vec<bool> = g.vertices().map(|v| self.free(v)).collect();
        for comp in g.components_within(&free) {
            let attach: VertexSet = comp
                .iter()
                .flat_map(|c| g.neighbors(c).iter().copied())
                .filter(|&a| self.t.contains(a))
                .collect();
            let a = attach.as_slice();
            if a.len() < 3 {
                continue;
            }
            let inside = comp.to_mask(g.n());
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    let Some(p1) = path_through(g, a[i], &[a[j]], &inside) else {
                        continue;
                    };
                    for &k in &a[j + 1..] {
                        let Some(p2) = path_through(g, k, &p1, &inside) else {
                            continue;
                        };
                        if let Some(m) = self.evaluate(MoveKind::ComponentReroute, vec![p1.clone(), p2]) {
                            return Some(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn all_connectors(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for a in self.t.vertices() {
            out.extend(self.connectors(a, |b| b > a));
        }
        out
    }

    fn path_swap(&self, connectors: &[Vec<usize>]) -> Option<Move> {
        connectors
            .iter()
            .find_map(|q| self.evaluate(MoveKind::PathSwap, vec![q.clone()]))
    }

    fn double_qu(&self, connectors: &[Vec<usize>]) -> Option<Move> {
        let leaves = self.t.leaves();
        // orient every connector touching a leaf so that it ends there
        let mut by_leaf: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for q in connectors {
            let (first, last) = (q[0], *q.last().unwrap());
            if leaves.contains(last) {
                by_leaf.entry(last).or_default().push(q.clone());
            }
            if leaves.contains(first) {
                let mut r = q.clone();
                r.reverse();
                by_leaf.entry(first).or_default().push(r);
            }
        }
        for qs in by_leaf.values() {
            for i in 0..qs.len() {
                for j in i + 1..qs.len() {
                    let first = &qs[i];
                    let interior: BTreeSet<usize> =
                        first[1..first.len() - 1].iter().copied().collect();
                    // stop the second path where it meets the first one
                    let mut second = Vec::new();
                    for &v in &qs[j] {
                        second.push(v);
                        if interior.contains(&v) {
                            break;
                        }
                    }
                    if second.len() < 2 || second[0] == first[0] {
                        continue;
                    }
                    if let Some(m) =
                        self.evaluate(MoveKind::DoubleQuCombine, vec![first.clone(), second])
                    {
                        return Some(m);
                    }
                }
            }
        }
        None
    }
}

/// Edges lying on a cycle of the given connected graph.
fn cycle_edges(vertices: &BTreeSet<usize>, edges: &BTreeSet<Edge>) -> Vec<Edge> {
    let mut out = Vec::new();
    for &e in edges {
        let mut rest = edges.clone();
        rest.remove(&e);
        let adj = adjacency(vertices, &rest);
        let mut seen = BTreeSet::from([e.0]);
        let mut queue = VecDeque::from([e.0]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[&v] {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        if seen.contains(&e.1) {
            out.push(e);
        }
    }
    out
}

/// Shortest path from `from` to any vertex of `to`, with interior restricted
/// to `inside`.
fn path_through(g: &Graph, from: usize, to: &[usize], inside: &[bool]) -> Option<Vec<usize>> {
    let targets: BTreeSet<usize> = to.iter().copied().collect();
    let mut parent = vec![usize::MAX; g.n()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if parent[u] != usize::MAX {
                continue;
            }
            if targets.contains(&u) && v != from {
                let mut path = vec![u];
                let mut cur = v;
                while cur != from {
                    path.push(cur);
                    cur = parent[cur];
                }
                path.push(from);
                path.reverse();
                return Some(path);
            }
            if inside[u] {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

/// First improving move in catalog order, or `None` at saturation.
pub fn find_improving_move(g: &Graph, t: &SteinerTree) -> Option<Move> {
    let mover = Mover {
        g,
        t,
        current: t.leaf_count(),
    };
    if mover.current >= t.terminals.len() {
        return None;
    }
    let class = classify(t);
    if let Some(m) = mover.qu_augment(&class) {
        return Some(m);
    }
    if let Some(m) = mover.component_reroute() {
        return Some(m);
    }
    let connectors = mover.all_connectors();
    mover
        .path_swap(&connectors)
        .or_else(|| mover.double_qu(&connectors))
}

/// Per-kind counts of applied moves.
pub type Telemetry = BTreeMap<MoveKind, usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafSearch {
    Minor {
        model: MinorModel,
        tree: SteinerTree,
        iterations: usize,
        telemetry: Telemetry,
    },
    Saturated {
        tree: SteinerTree,
        classification: PathClassification,
        iterations: usize,
        telemetry: Telemetry,
    },
}

/// Hub `{x}`, hub = internal tree vertices, legs = the `ℓ` smallest leaves.
pub fn model_from_tree(g: &Graph, t: &SteinerTree, ell: usize) -> Option<MinorModel> {
    let leaves = t.leaves();
    if ell == 0 || leaves.len() < ell {
        return None;
    }
    let mut internal = t.internal();
    let legs: Vec<VertexSet> = leaves.iter().take(ell).map(VertexSet::singleton).collect();
    if internal.is_empty() {
        // a single vertex or a single edge: use an unused leaf or neighbour
        let used: BTreeSet<usize> = leaves.iter().take(ell).collect();
        let spare = leaves
            .iter()
            .find(|l| !used.contains(l))
            .or_else(|| {
                let u = VertexSet::min(&leaves)?;
                g.neighbors(u).iter().copied().find(|&y| y != t.x && !used.contains(&y))
            })?;
        internal = VertexSet::singleton(spare);
    }
    let model = MinorModel {
        ell,
        side_a: VertexSet::singleton(t.x),
        side_b: internal,
        legs,
    };
    verify_model(g, &model).ok().map(|_| model)
}

/// Hill-climbs with [`find_improving_move`] until the tree has `ell` leaves
/// (returning the model) or no move applies.
pub fn max_leaf_search(
    g: &Graph,
    x: usize,
    ell: usize,
    iteration_cap: usize,
) -> Result<LeafSearch, EngineError> {
    if ell == 0 {
        return Err(EngineError::BadEll);
    }
    let mut tree = initial_steiner_tree(g, x)?;
    let mut telemetry = Telemetry::new();
    let mut iterations = 0;
    loop {
        if let Some(model) = model_from_tree(g, &tree, ell) {
            return Ok(LeafSearch::Minor {
                model,
                tree,
                iterations,
                telemetry,
            });
        }
        let Some(mv) = find_improving_move(g, &tree) else {
            let classification = classify(&tree);
            return Ok(LeafSearch::Saturated {
                tree,
                classification,
                iterations,
                telemetry,
            });
        };
        if iterations >= iteration_cap {
            return Err(EngineError::IterationCapExceeded(iteration_cap));
        }
        let next = mv.apply(&tree);
        debug_assert!(next.validate(g).is_ok());
        debug_assert!(next.leaf_count() > tree.leaf_count());
        *telemetry.entry(mv.kind).or_default() += 1;
        tree = next;
        iterations += 1;
    }
}

/// Default cap: one more than the number of terminals.
pub fn default_iteration_cap(g: &Graph, x: usize) -> usize {
    g.degree(x) + 1
}

/// Vertices of degree above `7ℓ`, ascending.
pub fn degree_scan(g: &Graph, ell: usize) -> Vec<usize> {
    g.vertices().filter(|&v| g.degree(v) > 7 * ell).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{apex_necklace, complete_bipartite_2l, gadget_wheel, necklace, wheel};

    #[test]
    fn wheel_hub_tree_is_rim_path() {
        let g = wheel(6).unwrap();
        let t = initial_steiner_tree(&g, 6).unwrap();
        assert_eq!(t.leaf_count(), 2);
        assert_eq!(t.edges().len(), 5);
        assert!(t.validate(&g).is_ok());
    }

    #[test]
    fn k23_tree_is_star() {
        let g = complete_bipartite_2l(3).unwrap();
        let t = initial_steiner_tree(&g, 0).unwrap();
        assert_eq!(t.edges(), vec![(1, 2), (1, 3), (1, 4)]);
        assert_eq!(t.leaves(), VertexSet::from([2, 3, 4]));
        assert!(find_improving_move(&g, &t).is_none());
    }

    #[test]
    fn isolated_and_disconnected_terminals() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(initial_steiner_tree(&g, 2), Err(EngineError::IsolatedVertex(2)));
        // x = 0 joins two otherwise separate vertices
        let g = Graph::new(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(initial_steiner_tree(&g, 0), Err(EngineError::TerminalsDisconnected));
    }

    #[test]
    fn classify_path_tree() {
        // a path whose five vertices are all terminals: x = 5 sees 0..5
        let mut e: Vec<Edge> = (0..4).map(|i| (i, i + 1)).collect();
        e.extend((0..5).map(|i| (i, 5)));
        let g = Graph::new(6, &e).unwrap();
        let t = SteinerTree::from_edges(&g, 5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = classify(&t);
        assert_eq!(c.labels[&0], Label::Leaf);
        assert_eq!(c.labels[&4], Label::Leaf);
        assert_eq!(c.labels[&1], Label::Even);
        assert_eq!(c.labels[&2], Label::Odd);
        assert_eq!(c.labels[&3], Label::Even);
        assert_eq!((c.even, c.odd), (2, 1));
        assert!(c.counting_identity_holds());
        assert_eq!(c.flanking(1), Some((0, 2)));
    }

    #[test]
    fn classify_star() {
        let g = complete_bipartite_2l(3).unwrap();
        let t = initial_steiner_tree(&g, 0).unwrap();
        let c = classify(&t);
        assert_eq!(c.branching, VertexSet::from([1]));
        assert_eq!(c.leaves, 3);
        assert_eq!((c.even, c.odd, c.branching_terminals), (0, 0, 0));
        assert!(c.counting_identity_holds());
    }

    #[test]
    fn classify_wheel8_rim() {
        let g = wheel(8).unwrap();
        let t = initial_steiner_tree(&g, 8).unwrap();
        let c = classify(&t);
        assert_eq!((c.even, c.odd), (3, 3));
        assert_eq!(c.non_strictly_internal, 2);
        assert!(find_improving_move(&g, &t).is_none());
    }

    #[test]
    fn invalid_trees_rejected() {
        let g = wheel(4).unwrap();
        // leaf 4 is the hub itself
        assert!(SteinerTree::from_edges(&g, 4, &[(0, 1), (1, 2), (2, 3), (3, 4)]).is_err());
        // does not span terminal 3
        assert!(SteinerTree::from_edges(&g, 4, &[(0, 1), (1, 2)]).is_err());
        // cycle
        assert!(SteinerTree::from_edges(&g, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).is_err());
    }

    #[test]
    fn identity_search_on_k23() {
        let g = complete_bipartite_2l(3).unwrap();
        match max_leaf_search(&g, 0, 3, 4).unwrap() {
            LeafSearch::Minor { model, .. } => {
                assert_eq!(model.legs, vec![VertexSet::from([2]), VertexSet::from([3]), VertexSet::from([4])]);
                assert_eq!(model.side_b, VertexSet::from([1]));
            }
            other => panic!("expected a model, got {other:?}"),
        }
    }

    #[test]
    fn apex_necklace_improves() {
        let g = apex_necklace(8).unwrap();
        let t = initial_steiner_tree(&g, 16).unwrap();
        let mv = find_improving_move(&g, &t).expect("a move");
        let next = mv.apply(&t);
        assert!(next.validate(&g).is_ok());
        assert!(next.leaf_count() > t.leaf_count());
        let r = max_leaf_search(&g, 16, 4, 9).unwrap();
        assert!(matches!(r, LeafSearch::Minor { .. }));
    }

    #[test]
    fn wheel_saturates() {
        let g = wheel(30).unwrap();
        match max_leaf_search(&g, 30, 3, 31).unwrap() {
            LeafSearch::Saturated { tree, .. } => assert_eq!(tree.leaf_count(), 2),
            other => panic!("expected saturation, got {other:?}"),
        }
    }

    #[test]
    fn degree_scan_examples() {
        assert_eq!(degree_scan(&wheel(22).unwrap(), 3), vec![22]);
        assert!(degree_scan(&necklace(8).unwrap(), 1).is_empty());
        assert_eq!(degree_scan(&gadget_wheel(11).unwrap(), 3), vec![0]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = apex_necklace(12).unwrap();
        assert_eq!(
            max_leaf_search(&g, 24, 6, 0),
            Err(EngineError::IterationCapExceeded(0))
        );
    }
}
