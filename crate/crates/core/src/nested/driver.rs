use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::EngineError;
use crate::flow::menger;
use crate::graph::{Graph, VertexSet};
use crate::minor::{verify_model, MinorModel};
use crate::steiner::{default_iteration_cap, degree_scan, max_leaf_search, LeafSearch};

use super::cuts::{layer_cuts, source_side, CutSequence};
use super::extract::{extract_from_nested, Report, Witness};

/// Parameters of the top-level driver. Overrides replace the true constants,
/// which are far beyond anything that fits in memory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DriverConfig {
    pub ell: usize,
    /// Replaces `d = ⌈ℓ³/2⌉`.
    pub d_override: Option<usize>,
    /// Replaces the required distance `2(d+1)^ℓ` between `s` and `t`.
    pub distance_override: Option<usize>,
    /// Replaces `n_ℓ = (7ℓ)^{2(d+1)^ℓ}`.
    pub n_threshold_override: Option<usize>,
    pub skip_hypotheses: bool,
}

impl DriverConfig {
    pub fn new(ell: usize) -> Self {
        DriverConfig {
            ell,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.ell == 0 {
            return Err(EngineError::BadEll);
        }
        for (name, v) in [
            ("d", self.d_override),
            ("distance", self.distance_override),
            ("n", self.n_threshold_override),
        ] {
            if v == Some(0) {
                return Err(EngineError::InvalidConfig(format!("{name} override must be positive")));
            }
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d_override.unwrap_or_else(|| driver_d(self.ell))
    }

    /// `2(d+1)^e`.
    pub fn span(&self, e: usize) -> BigUint {
        BigUint::from(2u32) * BigUint::from(self.d() + 1).pow(e as u32)
    }

    pub fn required_distance(&self) -> BigUint {
        match self.distance_override {
            Some(r) => BigUint::from(r),
            None => self.span(self.ell),
        }
    }

    /// Human-readable `n_ℓ`.
    pub fn n_threshold_display(&self) -> String {
        match self.n_threshold_override {
            Some(n) => n.to_string(),
            None => format!("{}^{}", 7 * self.ell, self.span(self.ell)),
        }
    }

    /// `n < n_ℓ`, decided without expanding huge powers.
    pub fn below_n_threshold(&self, n: usize) -> bool {
        if let Some(t) = self.n_threshold_override {
            return n < t;
        }
        let exponent = self.span(self.ell);
        match exponent.to_u32() {
            // (7ℓ)^64 already exceeds every machine-sized n
            Some(e) if e < 64 => BigUint::from(n) < BigUint::from(7 * self.ell).pow(e),
            _ => true,
        }
    }
}

/// `⌈ℓ³/2⌉`.
pub fn driver_d(ell: usize) -> usize {
    (ell * ell * ell).div_ceil(2)
}

fn inconclusive(reason: &str) -> Report {
    Report::new().with("reason", reason)
}

/// Minimum degree 5, 3-connectivity, no degree-5 twins.
pub fn check_hypotheses(g: &Graph) -> Result<Option<Witness>, EngineError> {
    if g.n() < 2 {
        return Ok(Some(Witness::Inconclusive(inconclusive("graph too small"))));
    }
    let delta = g.min_degree();
    if delta < 5 {
        return Ok(Some(Witness::Inconclusive(
            inconclusive("min degree 5 violated").with("min-degree", delta),
        )));
    }
    let kappa = g.vertex_connectivity()?;
    if kappa < 3 {
        return Ok(Some(Witness::Inconclusive(
            inconclusive("3-connectivity violated").with("connectivity", kappa),
        )));
    }
    if let Some(&(v, w)) = g.find_twins(Some(5)).first() {
        return Ok(Some(Witness::TwinsFound(v, w)));
    }
    Ok(None)
}

/// Lexicographically least `(s, t)`, `s < t`, at maximum distance.
pub fn diametral_pair(g: &Graph) -> Option<(usize, usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for s in g.vertices() {
        let dist = g.distances_from(&[s]);
        for t in s + 1..g.n() {
            let d = dist[t]?;
            if best.map_or(true, |(_, _, b)| d > b) {
                best = Some((s, t, d));
            }
        }
    }
    best
}

/// Degree branch, then size and distance thresholds, then layer cuts with
/// the `k`-maximisation: either `k = ℓ` disjoint paths between two far
/// layers give the minor directly, or `d` nested `k`-cuts feed
/// [`extract_from_nested`].
pub fn theorem_driver(g: &Graph, cfg: &DriverConfig) -> Result<Witness, EngineError> {
    cfg.validate()?;
    let ell = cfg.ell;
    if !cfg.skip_hypotheses {
        if let Some(w) = check_hypotheses(g)? {
            return Ok(w);
        }
    }
    if let Some(&x) = degree_scan(g, ell).first() {
        let cap = default_iteration_cap(g, x);
        return Ok(match max_leaf_search(g, x, ell, cap)? {
            LeafSearch::Minor { model, .. } => Witness::MinorFound(model),
            LeafSearch::Saturated {
                tree,
                classification: c,
                iterations,
                ..
            } => Witness::Saturated(
                Report::new()
                    .with("stage", "degree")
                    .with("vertex", x)
                    .with("degree", g.degree(x))
                    .with("leaves", tree.leaf_count())
                    .with("branching", c.branching.len())
                    .with("even", c.even)
                    .with("odd", c.odd)
                    .with("iterations", iterations),
            ),
        });
    }
    if cfg.below_n_threshold(g.n()) {
        return Ok(Witness::Inconclusive(
            inconclusive("below n_l")
                .with("n", g.n())
                .with("n-threshold", cfg.n_threshold_display()),
        ));
    }
    let Some((s, t, diameter)) = diametral_pair(g) else {
        return Ok(Witness::Inconclusive(inconclusive("graph is disconnected")));
    };
    let required = cfg.required_distance();
    if BigUint::from(diameter) < required {
        return Ok(Witness::Inconclusive(
            inconclusive("diameter below required distance")
                .with("diameter", diameter)
                .with("required", required),
        ));
    }
    let layers = layer_cuts(g, s, t)?;
    let cut = |i: usize| &layers[i - 1].1;
    let last = diameter - 1;
    let mut eta_memo = std::collections::HashMap::new();
    let mut eta = |i: usize, j: usize| -> Result<usize, EngineError> {
        if let Some(&e) = eta_memo.get(&(i, j)) {
            return Ok(e);
        }
        let e = menger(g, cut(i), cut(j), None)?.value;
        eta_memo.insert((i, j), e);
        Ok(e)
    };
    let mut chosen = None;
    'k: for k in (1..=ell).rev() {
        let Some(span) = cfg.span(ell - k).to_usize() else {
            continue;
        };
        for i in 1..=last {
            for j in i + span.max(2)..=last {
                if eta(i, j)? >= k {
                    chosen = Some((k, i, j));
                    break 'k;
                }
            }
        }
    }
    let Some((k, i, j)) = chosen else {
        return Ok(Witness::Inconclusive(
            inconclusive("no layer pair at the required span").with("diameter", diameter),
        ));
    };
    let ss = VertexSet::singleton(s);
    let ts = VertexSet::singleton(t);
    let side_s = source_side(g, &ss, cut(i)).union(cut(i));
    let side_t = source_side(g, &ts, cut(j)).union(cut(j));
    if k == ell {
        return Ok(direct_model(g, &side_s, &side_t, ell)
            .map(Witness::MinorFound)
            .unwrap_or_else(|| {
                Witness::Inconclusive(
                    inconclusive("far layers overlap")
                        .with("layer-i", i)
                        .with("layer-j", j),
                )
            }));
    }
    let d = cfg.d();
    let step = cfg.span(ell - k - 1).to_usize().unwrap_or(usize::MAX);
    let mut cuts = Vec::with_capacity(d);
    for q in 0..d {
        let a = i + q * step;
        let b = a + step;
        if b > j {
            break;
        }
        let outside_a = source_side(g, &ss, cut(a));
        let outside_b = source_side(g, &ts, cut(b));
        let allowed: Vec<bool> = g
            .vertices()
            .map(|v| !outside_a.contains(v) && !outside_b.contains(v))
            .collect();
        let flow = menger(g, cut(a), cut(b), Some(&allowed))?;
        if flow.value != k {
            return Ok(Witness::Inconclusive(
                inconclusive("intermediate cut size differs from k")
                    .with("k", k)
                    .with("found", flow.value)
                    .with("layers", format!("{a} {b}")),
            ));
        }
        cuts.push(flow.cut);
    }
    let seq = CutSequence {
        source: side_s,
        sink: side_t,
        cuts,
        eta: k,
    };
    if let Err(e) = seq.validate(g) {
        return Ok(Witness::Inconclusive(
            inconclusive("assembled cut sequence is not 2-nested")
                .with("k", k)
                .with("detail", e),
        ));
    }
    extract_from_nested(g, &seq, ell)
}

/// Hubs `A ⊇ C_i`, `B ⊇ C_j`, legs the interiors of `ℓ` disjoint paths.
fn direct_model(g: &Graph, a: &VertexSet, b: &VertexSet, ell: usize) -> Option<MinorModel> {
    let flow = menger(g, a, b, None).ok()?;
    if flow.value < ell {
        return None;
    }
    let model = MinorModel {
        ell,
        side_a: a.clone(),
        side_b: b.clone(),
        legs: flow.paths[..ell]
            .iter()
            .map(|p| p[1..p.len() - 1].iter().copied().collect())
            .collect(),
    };
    verify_model(g, &model).ok().map(|_| model)
}
