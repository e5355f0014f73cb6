//! `K_{2,ℓ}` minor models: independent verification and exact search.
//!
//! A model is two disjoint connected branch sets `A` and `B` for the two hubs
//! and `ℓ` further disjoint connected sets (legs), each touching both `A` and
//! `B`. Extra edges inside or between branch sets are allowed.
//!
//! The exact search enumerates candidate hub pairs `(A, B)` and decides the
//! legs with a flow: `ℓ` legs exist for a fixed pair iff the remaining
//! vertices carry `ℓ` vertex-disjoint paths from `N(A)` to `N(B)` (a single
//! vertex adjacent to both counts as a path). Hub pairs are enumerated once
//! each up to swapping, with `A` the side that is smaller, or equal in size and
//! with the smaller minimum id.

use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{EngineError, GraphError};
use crate::graph::{Graph, VertexSet};

/// Branch-set certificate of a `K_{2,ℓ}` minor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorModel {
    pub ell: usize,
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    pub legs: Vec<VertexSet>,
}

/// First clause of the model definition that a candidate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `ell` disagrees with the number of legs.
    LegCount { ell: usize, legs: usize },
    OutOfRange { vertex: usize },
    Empty { set: String },
    Overlap { first: String, second: String, vertex: usize },
    Disconnected { set: String },
    MissingSideEdge { leg: usize, side: char },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LegCount { ell, legs } => write!(f, "leg-count ell={ell} legs={legs}"),
            Violation::OutOfRange { vertex } => write!(f, "out-of-range vertex={vertex}"),
            Violation::Empty { set } => write!(f, "empty set={set}"),
            Violation::Overlap {
                first,
                second,
                vertex,
            } => write!(f, "overlap sets={first},{second} vertex={vertex}"),
            Violation::Disconnected { set } => write!(f, "disconnected set={set}"),
            Violation::MissingSideEdge { leg, side } => {
                write!(f, "missing-side-edge leg=L{} side={side}", leg + 1)
            }
        }
    }
}

impl MinorModel {
    fn named_sets(&self) -> Vec<(String, &VertexSet)> {
        let mut out = vec![("A".to_string(), &self.side_a), ("B".to_string(), &self.side_b)];
        for (i, leg) in self.legs.iter().enumerate() {
            out.push((format!("L{}", i + 1), leg));
        }
        out
    }

    /// Drops legs beyond the first `ell`.
    pub fn truncated(&self, ell: usize) -> MinorModel {
        MinorModel {
            ell,
            side_a: self.side_a.clone(),
            side_b: self.side_b.clone(),
            legs: self.legs[..ell.min(self.legs.len())].to_vec(),
        }
    }
}

/// Checks every model clause in `g`; `Ok(())` means the model is valid.
pub fn verify_model(g: &Graph, model: &MinorModel) -> Result<(), Violation> {
    if model.legs.len() != model.ell || model.ell == 0 {
        return Err(Violation::LegCount {
            ell: model.ell,
            legs: model.legs.len(),
        });
    }
    let sets = model.named_sets();
    let mut owner: Vec<Option<usize>> = vec![None; g.n()];
    for (i, (name, set)) in sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Violation::Empty { set: name.clone() });
        }
        for v in set.iter() {
            if v >= g.n() {
                return Err(Violation::OutOfRange { vertex: v });
            }
            if let Some(j) = owner[v] {
                return Err(Violation::Overlap {
                    first: sets[j].0.clone(),
                    second: name.clone(),
                    vertex: v,
                });
            }
            owner[v] = Some(i);
        }
    }
    for (name, set) in &sets {
        if !g.is_connected_subset(set) {
            return Err(Violation::Disconnected { set: name.clone() });
        }
    }
    for (i, leg) in model.legs.iter().enumerate() {
        for (side_idx, side) in [(0usize, 'A'), (1, 'B')] {
            let touches = leg
                .iter()
                .any(|v| g.neighbors(v).iter().any(|&u| owner[u] == Some(side_idx)));
            if !touches {
                return Err(Violation::MissingSideEdge { leg: i, side });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            node_limit: 10_000_000,
            time_limit: Duration::from_secs(60),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorSearch {
    Found(MinorModel),
    NoMinor,
    BudgetExhausted { nodes: u64 },
}

impl MinorSearch {
    pub fn model(&self) -> Option<&MinorModel> {
        match self {
            MinorSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// Largest vertex count the bitmask search supports.
pub const MAX_ORACLE_VERTICES: usize = 64;

struct Oracle {
    n: usize,
    nbr: Vec<u64>,
    ell: usize,
}

enum Step {
    Continue,
    Found(MinorModel),
    Stop,
}

struct Meter {
    nodes: u64,
    limit: u64,
    deadline: Instant,
}

impl Meter {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.limit {
            return false;
        }
        // checking the clock on every node is measurably slow
        !(self.nodes % 4096 == 0 && Instant::now() > self.deadline)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn to_set(mask: u64) -> VertexSet {
    bits(mask).collect()
}

impl Oracle {
    fn new(g: &Graph, ell: usize) -> Self {
        let nbr = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &u| acc | (1 << u)))
            .collect();
        Oracle {
            n: g.n(),
            nbr,
            ell,
        }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn neighborhood(&self, set: u64) -> u64 {
        bits(set).fold(0, |acc, v| acc | self.nbr[v]) & !set
    }

    /// Enumerates each connected subset of `allowed` that contains `root`,
    /// whose other members exceed `root`, and whose size is at most `max`.
    /// The callback sees every set once, in a fixed depth-first order.
    fn connected_sets(
        &self,
        root: usize,
        allowed: u64,
        max: usize,
        visit: &mut dyn FnMut(u64) -> Step,
    ) -> Step {
        let above = allowed & u64::MAX.checked_shl(root as u32 + 1).unwrap_or(0);
        let ext = self.nbr[root] & above;
        self.esu(1 << root, ext, above, max, visit)
    }

    fn esu(
        &self,
        sub: u64,
        mut ext: u64,
        above: u64,
        max: usize,
        visit: &mut dyn FnMut(u64) -> Step,
    ) -> Step {
        match visit(sub) {
            Step::Continue => {}
            other => return other,
        }
        if sub.count_ones() as usize >= max {
            return Step::Continue;
        }
        let closed = sub | self.neighborhood(sub);
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let exclusive = self.nbr[w] & above & !closed;
            match self.esu(sub | (1 << w), ext | exclusive, above, max, visit) {
                Step::Continue => {}
                other => return other,
            }
        }
        Step::Continue
    }

    /// Vertex-disjoint paths inside `rest` from vertices adjacent to `a` to
    /// vertices adjacent to `b`. Returns the paths once `ell` are found.
    fn legs(&self, a: u64, b: u64) -> Option<Vec<Vec<usize>>> {
        let rest = self.full() & !a & !b;
        let src = self.neighborhood(a) & rest;
        let dst = self.neighborhood(b) & rest;
        if (src.count_ones() as usize) < self.ell || (dst.count_ones() as usize) < self.ell {
            return None;
        }
        let mut flow = LegFlow::new(self.n);
        for _ in 0..self.ell {
            if !flow.augment(&self.nbr, rest, src, dst) {
                return None;
            }
        }
        Some(flow.paths())
    }
}

const SRC: usize = usize::MAX - 1;
const SNK: usize = usize::MAX - 2;
const NONE: usize = usize::MAX;

/// Unit vertex-capacity flow state. Node `2v` is `in(v)`, `2v + 1` is
/// `out(v)`; `pin[v]`/`succ[v]` are the flow predecessor and successor of a
/// used vertex (`SRC`/`SNK` at the path ends).
struct LegFlow {
    n: usize,
    used: u64,
    pin: Vec<usize>,
    succ: Vec<usize>,
}

impl LegFlow {
    fn new(n: usize) -> Self {
        LegFlow {
            n,
            used: 0,
            pin: vec![NONE; n],
            succ: vec![NONE; n],
        }
    }

    fn augment(&mut self, nbr: &[u64], rest: u64, src: u64, dst: u64) -> bool {
        let sink = 2 * self.n;
        let mut pred = vec![NONE; 2 * self.n + 1];
        let mut queue = VecDeque::new();
        for v in bits(src) {
            if self.pin[v] != SRC {
                pred[2 * v] = SRC;
                queue.push_back(2 * v);
            }
        }
        while let Some(node) = queue.pop_front() {
            let v = node / 2;
            let push = |to: usize, pred: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
                if pred[to] == NONE {
                    pred[to] = node;
                    queue.push_back(to);
                }
            };
            if node % 2 == 0 {
                if self.used & (1 << v) == 0 {
                    push(2 * v + 1, &mut pred, &mut queue);
                } else if self.pin[v] != SRC {
                    // cancel the flow arc out(p) -> in(v)
                    push(2 * self.pin[v] + 1, &mut pred, &mut queue);
                }
            } else {
                if dst & (1 << v) != 0 && self.succ[v] != SNK {
                    pred[sink] = node;
                    break;
                }
                for u in bits(nbr[v] & rest) {
                    if self.succ[v] != u {
                        push(2 * u, &mut pred, &mut queue);
                    }
                }
                if self.used & (1 << v) != 0 {
                    push(2 * v, &mut pred, &mut queue);
                }
            }
        }
        if pred[sink] == NONE {
            return false;
        }
        let mut arcs = Vec::new();
        let mut node = sink;
        while node != SRC {
            let p = pred[node];
            arcs.push((p, node));
            node = p;
        }
        arcs.reverse();
        for (from, to) in arcs {
            if from == SRC {
                self.pin[to / 2] = SRC;
            } else if to == sink {
                self.succ[from / 2] = SNK;
            } else {
                let (fv, tv) = (from / 2, to / 2);
                match (from % 2, to % 2) {
                    (0, 1) if fv == tv => self.used |= 1 << fv,
                    (1, 0) if fv == tv => {
                        self.used &= !(1 << fv);
                        self.pin[fv] = NONE;
                        self.succ[fv] = NONE;
                    }
                    (1, 0) => {
                        self.succ[fv] = tv;
                        self.pin[tv] = fv;
                    }
                    (0, 1) => {
                        // in(fv) -> out(tv) undoes tv -> fv
                        if self.pin[fv] == tv {
                            self.pin[fv] = NONE;
                        }
                        if self.succ[tv] == fv {
                            self.succ[tv] = NONE;
                        }
                    }
                    _ => unreachable!("arc kinds are fixed by node parity"),
                }
            }
        }
        true
    }

    fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for v in bits(self.used) {
            if self.pin[v] == SRC {
                let mut path = vec![v];
                let mut cur = v;
                while self.succ[cur] != SNK {
                    cur = self.succ[cur];
                    path.push(cur);
                }
                out.push(path);
            }
        }
        out
    }
}

/// Exact search for a `K_{2,ℓ}` minor. Deterministic for a given graph and
/// `ell`; with `threads > 1` the top-level hub candidates are searched in
/// parallel and the first model in sequential order is returned.
pub fn find_k2l_minor(
    g: &Graph,
    ell: usize,
    budget: OracleBudget,
    threads: usize,
) -> Result<MinorSearch, EngineError> {
    if ell == 0 {
        return Err(EngineError::BadEll);
    }
    if g.n() > MAX_ORACLE_VERTICES {
        return Err(GraphError::TooLarge(g.n()).into());
    }
    let n = g.n();
    if n < ell + 2 {
        return Ok(MinorSearch::NoMinor);
    }
    let oracle = Oracle::new(g, ell);
    let max_a = (n - ell) / 2;
    let deadline = Instant::now() + budget.time_limit;

    // Each root owns the hub sets A with min(A) = root; the subsearches are
    // independent, so they can run on separate workers.
    let roots: Vec<usize> = (0..n).collect();
    let run_root = |root: usize, limit: u64| -> (MinorSearch, u64) {
        let mut meter = Meter {
            nodes: 0,
            limit,
            deadline,
        };
        let out = search_root(&oracle, root, max_a, &mut meter);
        (out, meter.nodes)
    };

    let results: Vec<(MinorSearch, u64)> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            roots
                .par_iter()
                .map(|&r| run_root(r, budget.node_limit))
                .collect()
        })
    } else {
        let mut acc = Vec::new();
        let mut spent = 0u64;
        for &r in &roots {
            let (res, nodes) = run_root(r, budget.node_limit.saturating_sub(spent));
            spent += nodes;
            let stop = !matches!(res, MinorSearch::NoMinor);
            acc.push((res, nodes));
            if stop {
                break;
            }
        }
        acc
    };

    // sequential reduction: identical answer regardless of worker count
    let mut spent = 0u64;
    for (res, nodes) in results {
        spent = spent.saturating_add(nodes);
        match res {
            MinorSearch::Found(model) if spent <= budget.node_limit => {
                return Ok(MinorSearch::Found(model))
            }
            MinorSearch::NoMinor if spent <= budget.node_limit => {}
            _ => return Ok(MinorSearch::BudgetExhausted { nodes: spent }),
        }
    }
    Ok(MinorSearch::NoMinor)
}

fn search_root(oracle: &Oracle, root: usize, max_a: usize, meter: &mut Meter) -> MinorSearch {
    let n = oracle.n;
    let ell = oracle.ell;
    let full = oracle.full();
    let mut found = None;
    let mut exhausted = false;
    oracle.connected_sets(root, full, max_a, &mut |a: u64| {
        if !meter.tick() {
            exhausted = true;
            return Step::Stop;
        }
        let size_a = a.count_ones() as usize;
        if (oracle.neighborhood(a).count_ones() as usize) < ell {
            return Step::Continue;
        }
        let rest_a = full & !a;
        let max_b = n - size_a - ell;
        let min_a = root;
        for b_root in bits(rest_a) {
            let step = oracle.connected_sets(b_root, rest_a, max_b, &mut |b: u64| {
                if !meter.tick() {
                    exhausted = true;
                    return Step::Stop;
                }
                let size_b = b.count_ones() as usize;
                // canonical orientation: (|A|, min A) < (|B|, min B)
                if size_b < size_a || (size_b == size_a && b_root < min_a) {
                    return Step::Continue;
                }
                match oracle.legs(a, b) {
                    Some(paths) => Step::Found(MinorModel {
                        ell,
                        side_a: to_set(a),
                        side_b: to_set(b),
                        legs: paths.into_iter().map(VertexSet::from).collect(),
                    }),
                    None => Step::Continue,
                }
            });
            match step {
                Step::Continue => {}
                Step::Found(m) => {
                    found = Some(m);
                    return Step::Stop;
                }
                Step::Stop => return Step::Stop,
            }
        }
        Step::Continue
    });
    match found {
        Some(mut m) => {
            m.legs.sort();
            MinorSearch::Found(m)
        }
        None if exhausted => MinorSearch::BudgetExhausted { nodes: meter.nodes },
        None => MinorSearch::NoMinor,
    }
}

/// Per-`ℓ` sweep from 1 to `ell_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSweep {
    pub outcomes: Vec<(usize, MinorSearch)>,
    /// Largest `ℓ` with a model, if any.
    pub largest: Option<usize>,
    /// False if a model was found at some `ℓ` while a smaller `ℓ` reported
    /// no minor (impossible for a correct search).
    pub monotone: bool,
}

pub fn minor_free_up_to(
    g: &Graph,
    ell_max: usize,
    budget: OracleBudget,
    threads: usize,
) -> Result<MinorSweep, EngineError> {
    if ell_max == 0 {
        return Err(EngineError::BadEll);
    }
    let mut outcomes = Vec::new();
    for ell in 1..=ell_max {
        outcomes.push((ell, find_k2l_minor(g, ell, budget, threads)?));
    }
    let largest = outcomes
        .iter()
        .filter(|(_, r)| matches!(r, MinorSearch::Found(_)))
        .map(|(l, _)| *l)
        .max();
    let monotone = match largest {
        Some(top) => outcomes
            .iter()
            .filter(|(l, _)| *l <= top)
            .all(|(_, r)| !matches!(r, MinorSearch::NoMinor)),
        None => true,
    };
    Ok(MinorSweep {
        outcomes,
        largest,
        monotone,
    })
}
