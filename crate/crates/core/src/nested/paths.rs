use std::collections::BTreeSet;

use crate::error::EngineError;
use crate::flow::menger;
use crate::graph::{Graph, VertexSet};

use super::cuts::CutSequence;

/// `η` internally disjoint `S`–`T` paths, each crossing every cut once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    pub cuts: CutSequence,
    pub paths: Vec<Vec<usize>>,
    /// `Y_j` for the gap between cut `j` and cut `j + 1`.
    pub gaps: Vec<VertexSet>,
}

/// Progress measure: (gaps in case 1, gaps in case 2, minus path length
/// inside gaps). Compared lexicographically.
pub type Measure = (usize, usize, isize);

impl PathSystem {
    pub fn eta(&self) -> usize {
        self.paths.len()
    }

    pub fn gap_count(&self) -> usize {
        self.gaps.len()
    }

    /// Position of path `a`'s vertex on cut `j`.
    pub fn crossing(&self, a: usize, j: usize) -> usize {
        let cut = &self.cuts.cuts[j];
        self.paths[a]
            .iter()
            .position(|&v| cut.contains(v))
            .expect("validated paths cross every cut")
    }

    /// Positions `[p, q]` of path `a` from cut `j` to cut `j + 1`, inclusive.
    pub fn range(&self, a: usize, j: usize) -> (usize, usize) {
        (self.crossing(a, j), self.crossing(a, j + 1))
    }

    /// `P_a ∩ (Y_j ∪ C_j ∪ C_{j+1})` in path order.
    pub fn segment(&self, a: usize, j: usize) -> &[usize] {
        let (p, q) = self.range(a, j);
        &self.paths[a][p..=q]
    }

    /// `P_a ∩ Y_j` in path order.
    pub fn interior(&self, a: usize, j: usize) -> &[usize] {
        let (p, q) = self.range(a, j);
        &self.paths[a][p + 1..q]
    }

    pub fn on_paths(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (a, p) in self.paths.iter().enumerate() {
            for &v in p {
                owner[v] = Some(a);
            }
        }
        owner
    }

    /// Total number of path edges inside gap `j`.
    pub fn gap_length(&self, j: usize) -> usize {
        (0..self.eta()).map(|a| self.segment(a, j).len() - 1).sum()
    }

    /// Same cuts, new paths; gaps are recomputed.
    pub fn with_paths(&self, paths: Vec<Vec<usize>>) -> PathSystem {
        PathSystem {
            cuts: self.cuts.clone(),
            paths,
            gaps: self.gaps.clone(),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::InvalidPathSystem(m));
        let (s, t) = (&self.cuts.source, &self.cuts.sink);
        if self.paths.len() != self.cuts.eta {
            return bad(format!("{} paths for eta {}", self.paths.len(), self.cuts.eta));
        }
        let mut used = BTreeSet::new();
        for (a, p) in self.paths.iter().enumerate() {
            if p.len() < 2 || !s.contains(p[0]) || !t.contains(*p.last().unwrap()) {
                return bad(format!("path {a} does not run from S to T"));
            }
            if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return bad(format!("path {a} uses a non-edge"));
            }
            for &v in &p[1..p.len() - 1] {
                if s.contains(v) || t.contains(v) {
                    return bad(format!("path {a} revisits S or T at {v}"));
                }
                if !used.insert(v) {
                    return bad(format!("vertex {v} is shared by two paths"));
                }
            }
            for (j, c) in self.cuts.cuts.iter().enumerate() {
                let hits = p.iter().filter(|&&v| c.contains(v)).count();
                if hits != 1 {
                    return bad(format!("path {a} meets cut {j} {hits} times"));
                }
            }
        }
        Ok(())
    }
}

/// `Y_j = S_{C_{j+1}} \ (S_{C_j} ∪ C_j)` for consecutive cuts.
pub fn gap_sets(g: &Graph, cuts: &CutSequence) -> Vec<VertexSet> {
    let sides = cuts.source_sides(g);
    (0..cuts.len().saturating_sub(1))
        .map(|j| {
            sides[j + 1]
                .iter()
                .filter(|&v| !sides[j].contains(v) && !cuts.cuts[j].contains(v))
                .collect()
        })
        .collect()
}

/// Flow paths between the terminal sets of a validated cut sequence.
pub fn disjoint_path_system(g: &Graph, cuts: &CutSequence) -> Result<PathSystem, EngineError> {
    cuts.validate(g)?;
    let flow = menger(g, &cuts.source, &cuts.sink, None)?;
    let ps = PathSystem {
        cuts: cuts.clone(),
        paths: flow.paths,
        gaps: gap_sets(g, cuts),
    };
    ps.validate(g)?;
    for (j, y) in ps.gaps.iter().enumerate() {
        debug_assert!(!y.is_empty(), "gap {j} is empty despite distance 2");
    }
    Ok(ps)
}
