use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::EngineError;
use crate::graph::{Graph, VertexSet};
use crate::io::write_certificate;
use crate::minor::{verify_model, MinorModel};

use super::cuts::{lemma_threshold, CutSequence};
use super::gap::{classify_gap, connectors_in_gap, reroute, Case};
use super::paths::{disjoint_path_system, PathSystem};

/// Ordered `key: value` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report(pub Vec<(String, String)>);

impl Report {
    pub fn new() -> Self {
        Report(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    MinorFound(MinorModel),
    TwinsFound(usize, usize),
    Saturated(Report),
    Inconclusive(Report),
}

impl Witness {
    pub fn to_text(&self) -> String {
        let report = |tag: &str, r: &Report| {
            let mut out = format!("{tag}\n");
            for (k, v) in &r.0 {
                writeln!(out, "{k}: {v}").unwrap();
            }
            out
        };
        match self {
            Witness::MinorFound(m) => format!("MINOR\n{}", write_certificate(m)),
            Witness::TwinsFound(v, w) => format!("TWINS {v} {w}\n"),
            Witness::Saturated(r) => report("SATURATED", r),
            Witness::Inconclusive(r) => report("INCONCLUSIVE", r),
        }
    }

    /// Definitive outcomes are a certificate or a twin pair.
    pub fn is_definitive(&self) -> bool {
        matches!(self, Witness::MinorFound(_) | Witness::TwinsFound(..))
    }
}

/// Applies [`reroute`] to the first improvable gap until none improves.
/// Returns the final system and the number of accepted exchanges.
pub fn reroute_to_fixpoint(g: &Graph, mut ps: PathSystem) -> (PathSystem, usize) {
    let mut steps = 0;
    'outer: loop {
        for j in 0..ps.gap_count() {
            let gc = classify_gap(g, &ps, j);
            if let Ok(next) = reroute(g, &ps, &gc) {
                ps = next;
                steps += 1;
                continue 'outer;
            }
        }
        return (ps, steps);
    }
}

/// Gap index and connector, per path pair.
type Tally = BTreeMap<(usize, usize), Vec<(usize, Vec<usize>)>>;

/// Pairs `(a, b)` with the gaps carrying a connector between them.
fn tallies(g: &Graph, ps: &PathSystem) -> Tally {
    let mut out = Tally::new();
    for j in 0..ps.gap_count() {
        for (a, b, c) in connectors_in_gap(g, ps, j) {
            out.entry((a, b)).or_default().push((j, c));
        }
    }
    out
}

/// Sides are `P_a`, `P_b` trimmed to the cuts bounding the chosen gaps; legs
/// are connector interiors.
fn pigeonhole_model(
    ps: &PathSystem,
    ell: usize,
    a: usize,
    b: usize,
    gaps: &[(usize, Vec<usize>)],
) -> MinorModel {
    let chosen = &gaps[..ell];
    let first = chosen[0].0;
    let last = chosen[ell - 1].0 + 1;
    let span = |p: usize| -> VertexSet {
        let (lo, hi) = (ps.crossing(p, first), ps.crossing(p, last));
        ps.paths[p][lo..=hi].iter().copied().collect()
    };
    MinorModel {
        ell,
        side_a: span(a),
        side_b: span(b),
        legs: chosen
            .iter()
            .map(|(_, c)| c[1..c.len() - 1].iter().copied().collect())
            .collect(),
    }
}

/// Degree-5 twin pair inside a gap: the first two gap vertices of each path
/// against the first two of every other path, then any adjacent pair across
/// two paths.
fn twins_in_gap(g: &Graph, ps: &PathSystem, j: usize) -> Option<(usize, usize)> {
    let ok = |v: usize, w: usize| g.degree(v) == 5 && g.degree(w) == 5 && g.are_twins(v, w);
    let pair = |v: usize, w: usize| (v.min(w), v.max(w));
    let eta = ps.eta();
    for a in 0..eta {
        for b in 0..eta {
            if a == b {
                continue;
            }
            for &v in ps.interior(a, j).iter().take(2) {
                for &w in ps.interior(b, j).iter().take(2) {
                    if ok(v, w) {
                        return Some(pair(v, w));
                    }
                }
            }
        }
    }
    for a in 0..eta {
        for &v in ps.interior(a, j) {
            for b in a + 1..eta {
                for &w in ps.interior(b, j) {
                    if ok(v, w) {
                        return Some(pair(v, w));
                    }
                }
            }
        }
    }
    None
}

/// Runs the gap analysis on a 2-nested sequence and extracts a minor model
/// (pigeonhole over connectors), a degree-5 twin pair (covered gaps), or a
/// saturation report.
pub fn extract_from_nested(g: &Graph, cuts: &CutSequence, ell: usize) -> Result<Witness, EngineError> {
    if ell == 0 {
        return Err(EngineError::BadEll);
    }
    let ps = disjoint_path_system(g, cuts)?;
    let (ps, steps) = reroute_to_fixpoint(g, ps);
    let counts = tallies(g, &ps);
    if let Some((&(a, b), gaps)) = counts.iter().find(|(_, gs)| gs.len() >= ell) {
        let model = pigeonhole_model(&ps, ell, a, b, gaps);
        debug_assert_eq!(verify_model(g, &model), Ok(()));
        if verify_model(g, &model).is_ok() {
            return Ok(Witness::MinorFound(model));
        }
    }
    let cases: Vec<u8> = (0..ps.gap_count())
        .map(|j| classify_gap(g, &ps, j).number())
        .collect();
    for (j, _) in cases.iter().enumerate().filter(|(_, &c)| c == 3) {
        if let Some((v, w)) = twins_in_gap(g, &ps, j) {
            return Ok(Witness::TwinsFound(v, w));
        }
    }
    let count = |k: u8| cases.iter().filter(|&&c| c == k).count();
    let best = counts.values().map(|gs| gs.len()).max().unwrap_or(0);
    let case_list: Vec<String> = cases.iter().map(|c| c.to_string()).collect();
    Ok(Witness::Saturated(
        Report::new()
            .with("stage", "nested-cuts")
            .with("cuts", cuts.len())
            .with("eta", cuts.eta)
            .with("threshold", lemma_threshold(ell, cuts.eta))
            .with("gaps", ps.gap_count())
            .with("case1", count(1))
            .with("case2", count(2))
            .with("case3", count(3))
            .with("gap-cases", if case_list.is_empty() { "-".into() } else { case_list.join(" ") })
            .with("best-pair-connectors", best)
            .with("reroutes", steps),
    ))
}

/// First case-3 vertex of each gap, for diagnostics.
pub fn case3_vertices(g: &Graph, ps: &PathSystem) -> Vec<(usize, usize)> {
    (0..ps.gap_count())
        .filter_map(|j| match classify_gap(g, ps, j).case {
            Case::Case3 { v } => Some((j, v)),
            _ => None,
        })
        .collect()
}
