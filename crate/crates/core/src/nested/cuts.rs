use crate::error::{EngineError, GraphError};
use crate::flow::menger;
use crate::graph::{Graph, VertexSet};

/// Minimum `S`–`T` vertex cut closest to `S`.
pub fn min_vertex_cut(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<VertexSet, GraphError> {
    Ok(menger(g, s, t, None)?.cut)
}

/// Vertices reachable from `s` without touching `cut` (`S_C`).
pub fn source_side(g: &Graph, s: &VertexSet, cut: &VertexSet) -> VertexSet {
    let mask = cut.to_mask(g.n());
    VertexSet::from_mask(&g.reach(s.as_slice(), |v| !mask[v]))
}

/// `cut` avoids `S ∪ T` and separates them.
pub fn is_st_cut(g: &Graph, s: &VertexSet, t: &VertexSet, cut: &VertexSet) -> bool {
    if cut.intersects(s) || cut.intersects(t) {
        return false;
    }
    !source_side(g, s, cut).intersects(t)
}

/// An ordered family of minimum `S`–`T` cuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSequence {
    pub source: VertexSet,
    pub sink: VertexSet,
    pub cuts: Vec<VertexSet>,
    pub eta: usize,
}

impl CutSequence {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// `S_{C_j}` for every cut.
    pub fn source_sides(&self, g: &Graph) -> Vec<VertexSet> {
        self.cuts
            .iter()
            .map(|c| source_side(g, &self.source, c))
            .collect()
    }

    /// Checks sizes, separation, strict nesting and pairwise distance ≥ 2.
    pub fn validate(&self, g: &Graph) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::InvalidCutSequence(m));
        if self.source.is_empty() || self.sink.is_empty() {
            return bad("empty terminal set".into());
        }
        if self.source.intersects(&self.sink) {
            return bad("source and sink overlap".into());
        }
        let eta = match g.st_connectivity(&self.source, &self.sink) {
            Ok(e) => e,
            Err(e) => return bad(e.to_string()),
        };
        if eta != self.eta {
            return bad(format!("declared eta {} but connectivity is {eta}", self.eta));
        }
        for (j, c) in self.cuts.iter().enumerate() {
            g.check_set(c)?;
            if c.len() != eta {
                return bad(format!("cut {j} has size {}, expected {eta}", c.len()));
            }
            if !is_st_cut(g, &self.source, &self.sink, c) {
                return bad(format!("cut {j} does not separate source from sink"));
            }
        }
        let sides = self.source_sides(g);
        for j in 1..sides.len() {
            let (a, b) = (&sides[j - 1], &sides[j]);
            if a.len() >= b.len() || a.iter().any(|v| !b.contains(v)) {
                return bad(format!("source sides of cuts {} and {j} are not strictly nested", j - 1));
            }
        }
        for i in 0..self.cuts.len() {
            for j in i + 1..self.cuts.len() {
                let d = g.distance_between_sets(&self.cuts[i], &self.cuts[j])?;
                if d.is_some_and(|d| d < 2) {
                    return bad(format!("cuts {i} and {j} are closer than 2"));
                }
            }
        }
        Ok(())
    }
}

/// `ℓ · C(η, 2)`: the number of cuts the pigeonhole argument needs to exceed.
pub fn lemma_threshold(ell: usize, eta: usize) -> usize {
    ell * (eta * eta.saturating_sub(1) / 2)
}

/// For each BFS layer `0 < i < dist(s, t)`, an inclusion-minimal `s`–`t` cut
/// inside the layer, obtained by dropping vertices in ascending id order
/// while the rest still separates.
pub fn layer_cuts(g: &Graph, s: usize, t: usize) -> Result<Vec<(usize, VertexSet)>, EngineError> {
    let layering = g.bfs_layering(s)?;
    if t >= g.n() {
        return Err(GraphError::VertexOutOfRange(t).into());
    }
    let dist = layering.layer_of(t).ok_or(EngineError::TerminalsDisconnected)?;
    if dist < 2 {
        return Err(EngineError::TooClose(dist));
    }
    let (ss, ts) = (VertexSet::singleton(s), VertexSet::singleton(t));
    let mut out = Vec::with_capacity(dist - 1);
    for i in 1..dist {
        let mut cut = layering.layers[i].clone();
        for v in layering.layers[i].iter() {
            let mut smaller = cut.clone();
            smaller.remove(v);
            if is_st_cut(g, &ss, &ts, &smaller) {
                cut = smaller;
            }
        }
        out.push((i, cut));
    }
    Ok(out)
}

/// Longest chain of size-`eta` cuts with layer indices at least two apart and
/// strictly nested source sides; among longest chains the one with the
/// earliest layers. Layer distance ≥ 2 implies graph distance ≥ 2.
pub fn find_2nested(
    g: &Graph,
    source: &VertexSet,
    sink: &VertexSet,
    cuts: &[(usize, VertexSet)],
    eta: usize,
) -> CutSequence {
    let usable: Vec<&(usize, VertexSet)> = cuts
        .iter()
        .filter(|(_, c)| c.len() == eta && is_st_cut(g, source, sink, c))
        .collect();
    let sides: Vec<VertexSet> = usable.iter().map(|(_, c)| source_side(g, source, c)).collect();
    let fits = |a: usize, b: usize| {
        usable[b].0 >= usable[a].0 + 2
            && sides[a].len() < sides[b].len()
            && sides[a].iter().all(|v| sides[b].contains(v))
    };
    // longest[i] = longest chain starting at i
    let k = usable.len();
    let mut longest = vec![1usize; k];
    for a in (0..k).rev() {
        for b in a + 1..k {
            if fits(a, b) {
                longest[a] = longest[a].max(longest[b] + 1);
            }
        }
    }
    let mut chosen = Vec::new();
    if let Some(best) = longest.iter().copied().max() {
        let mut cur = (0..k).find(|&i| longest[i] == best);
        while let Some(a) = cur {
            chosen.push(usable[a].1.clone());
            cur = (a + 1..k).find(|&b| fits(a, b) && longest[b] + 1 == longest[a]);
        }
    }
    CutSequence {
        source: source.clone(),
        sink: sink.clone(),
        cuts: chosen,
        eta,
    }
}
