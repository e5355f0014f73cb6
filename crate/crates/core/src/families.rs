//! Deterministic generators for the named graph families, plus audits.
//!
//! Vertex layouts (fixed, certificates and golden tests depend on them):
//!
//! | family | ids |
//! |---|---|
//! | `necklace(n)` | inner cycle `v_i = i`, outer cycle `w_i = n + i` |
//! | `wheel(n)` | rim `0..n`, hub `n` |
//! | `gadget_wheel(n)` | hub `0`, rim `u_1..u_2n = 1..=2n`, gadget `i` adds `2n+3i+1..=2n+3i+3` |
//! | `cycle_strong_edge(n)` | `(i,a) = i`, `(i,b) = n + i` |
//! | `king(r, c)` | row-major `r * cols + c` |
//! | `complete_bipartite_2l(l)` | sides `{0,1}` and `2..l+2` |
//! | `apex_necklace(n)` | `necklace(n)` plus apex `2n` |

use std::fmt;

use crate::error::FamilyError;
use crate::graph::Graph;

fn at_least(name: &'static str, value: usize, min: usize) -> Result<(), FamilyError> {
    if value < min {
        Err(FamilyError::ParamTooSmall { name, value, min })
    } else {
        Ok(())
    }
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::new(n, &edges).expect("generator edges are in range and loop-free")
}

/// Two `n`-cycles `v` and `w` with `v_i` joined to `w_i` and `w_{i+1}`.
pub fn necklace(n: usize) -> Result<Graph, FamilyError> {
    at_least("n", n, 4)?;
    let mut e = Vec::with_capacity(4 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        e.push((i, j));
        e.push((n + i, n + j));
        e.push((i, n + i));
        e.push((i, n + j));
    }
    Ok(build(2 * n, e))
}

pub fn wheel(n: usize) -> Result<Graph, FamilyError> {
    at_least("n", n, 3)?;
    let mut e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    e.extend((0..n).map(|i| (i, n)));
    Ok(build(n + 1, e))
}

/// Even wheel with rim `u_1..u_{2n}` where each pair `u_{2i-1}, u_{2i}` is
/// completed to a `K_5` by three new vertices.
pub fn gadget_wheel(n: usize) -> Result<Graph, FamilyError> {
    gadget_wheel_delta(n, 4)
}

/// Variant where each rim pair sits in a `K_{δ+1}` with `δ - 1` new vertices;
/// `δ = 4` is [`gadget_wheel`]. Minimum degree is `δ`.
pub fn gadget_wheel_delta(n: usize, delta: usize) -> Result<Graph, FamilyError> {
    at_least("n", n, 2)?;
    at_least("delta", delta, 2)?;
    let rim = 2 * n;
    let extra = delta - 1;
    let total = 1 + rim + extra * n;
    let mut e = Vec::new();
    for k in 1..=rim {
        e.push((0, k));
        e.push((k, k % rim + 1));
    }
    for i in 0..n {
        let mut clique = vec![2 * i + 1, 2 * i + 2];
        clique.extend((0..extra).map(|t| 1 + rim + extra * i + t));
        for (a, &u) in clique.iter().enumerate() {
            for &v in &clique[a + 1..] {
                e.push((u, v));
            }
        }
    }
    Ok(build(total, e))
}

/// Strong product `C_n ⊠ K_2`.
pub fn cycle_strong_edge(n: usize) -> Result<Graph, FamilyError> {
    at_least("n", n, 4)?;
    let mut e = Vec::with_capacity(5 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        e.push((i, n + i));
        for a in [i, n + i] {
            for b in [j, n + j] {
                e.push((a, b));
            }
        }
    }
    Ok(build(2 * n, e))
}

/// King's graph on `rows × cols` vertices.
pub fn king(rows: usize, cols: usize) -> Result<Graph, FamilyError> {
    at_least("rows", rows, 1)?;
    at_least("cols", cols, 1)?;
    let id = |r: usize, c: usize| r * cols + c;
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                e.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                e.push((id(r, c), id(r + 1, c)));
                if c + 1 < cols {
                    e.push((id(r, c), id(r + 1, c + 1)));
                    e.push((id(r, c + 1), id(r + 1, c)));
                }
            }
        }
    }
    Ok(build(rows * cols, e))
}

pub fn complete_bipartite_2l(ell: usize) -> Result<Graph, FamilyError> {
    at_least("ell", ell, 1)?;
    let e = (2..ell + 2).flat_map(|v| [(0, v), (1, v)]).collect();
    Ok(build(ell + 2, e))
}

/// `necklace(n)` plus an apex adjacent to the inner cycle.
pub fn apex_necklace(n: usize) -> Result<Graph, FamilyError> {
    let base = necklace(n)?;
    let mut e = base.edges();
    e.extend((0..n).map(|i| (i, 2 * n)));
    Ok(build(2 * n + 1, e))
}

/// Family selector used by the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Necklace(usize),
    Wheel(usize),
    GadgetWheel(usize),
    GadgetWheelDelta(usize, usize),
    CycleStrongEdge(usize),
    King(usize, usize),
    CompleteBipartite2l(usize),
    ApexNecklace(usize),
}

impl FamilySpec {
    pub fn parse(kind: &str, params: &[usize]) -> Result<Self, FamilyError> {
        let arity = |expected: usize| {
            if params.len() == expected {
                Ok(())
            } else {
                Err(FamilyError::WrongArity {
                    family: kind.to_string(),
                    expected,
                    got: params.len(),
                })
            }
        };
        let spec = match kind {
            "necklace" => arity(1).map(|_| FamilySpec::Necklace(params[0])),
            "wheel" => arity(1).map(|_| FamilySpec::Wheel(params[0])),
            "gadget_wheel" => arity(1).map(|_| FamilySpec::GadgetWheel(params[0])),
            "gadget_wheel_delta" => {
                arity(2).map(|_| FamilySpec::GadgetWheelDelta(params[0], params[1]))
            }
            "cycle_strong_edge" => arity(1).map(|_| FamilySpec::CycleStrongEdge(params[0])),
            "king" => arity(2).map(|_| FamilySpec::King(params[0], params[1])),
            "complete_bipartite_2l" => {
                arity(1).map(|_| FamilySpec::CompleteBipartite2l(params[0]))
            }
            "apex_necklace" => arity(1).map(|_| FamilySpec::ApexNecklace(params[0])),
            other => Err(FamilyError::UnknownFamily(other.to_string())),
        }?;
        Ok(spec)
    }

    pub fn generate(&self) -> Result<Graph, FamilyError> {
        match *self {
            FamilySpec::Necklace(n) => necklace(n),
            FamilySpec::Wheel(n) => wheel(n),
            FamilySpec::GadgetWheel(n) => gadget_wheel(n),
            FamilySpec::GadgetWheelDelta(n, d) => gadget_wheel_delta(n, d),
            FamilySpec::CycleStrongEdge(n) => cycle_strong_edge(n),
            FamilySpec::King(r, c) => king(r, c),
            FamilySpec::CompleteBipartite2l(l) => complete_bipartite_2l(l),
            FamilySpec::ApexNecklace(n) => apex_necklace(n),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Necklace(n) => write!(f, "necklace n={n}"),
            FamilySpec::Wheel(n) => write!(f, "wheel n={n}"),
            FamilySpec::GadgetWheel(n) => write!(f, "gadget_wheel n={n}"),
            FamilySpec::GadgetWheelDelta(n, d) => write!(f, "gadget_wheel_delta n={n} delta={d}"),
            FamilySpec::CycleStrongEdge(n) => write!(f, "cycle_strong_edge n={n}"),
            FamilySpec::King(r, c) => write!(f, "king rows={r} cols={c}"),
            FamilySpec::CompleteBipartite2l(l) => write!(f, "complete_bipartite_2l ell={l}"),
            FamilySpec::ApexNecklace(n) => write!(f, "apex_necklace n={n}"),
        }
    }
}

/// Exact structural summary of a graph against the `K_{2,ℓ}` bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyAudit {
    pub ell: usize,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// `None` for graphs with fewer than two vertices.
    pub connectivity: Option<usize>,
    pub twin_pairs: usize,
    pub degree5_twin_pairs: usize,
    pub regular: bool,
    /// `(ℓ+1)(n-1)`, twice the edge bound for `K_{2,ℓ}`-minor-free graphs.
    pub density_bound_twice: i64,
    /// `(ℓ+1)(n-1) - 2m`; twice the slack, kept integral.
    pub density_slack_twice: i64,
    /// Negative slack: the graph cannot be `K_{2,ℓ}`-minor-free.
    pub density_alarm: bool,
    /// The graph is 3-connected with minimum degree ≥ 4 yet some degree
    /// exceeds `7ℓ`, so it cannot be `K_{2,ℓ}`-minor-free.
    pub degree_alarm: bool,
}

impl FamilyAudit {
    /// Slack rendered exactly, e.g. `13` or `2.5`.
    pub fn slack_display(&self) -> String {
        half(self.density_slack_twice)
    }

    pub fn bound_display(&self) -> String {
        half(self.density_bound_twice)
    }
}

fn half(x: i64) -> String {
    if x % 2 == 0 {
        format!("{}", x / 2)
    } else {
        format!("{}{}.5", if x < 0 { "-" } else { "" }, (x.abs()) / 2)
    }
}

pub fn audit(g: &Graph, ell: usize) -> FamilyAudit {
    let n = g.n();
    let m = g.m();
    let connectivity = g.vertex_connectivity().ok();
    let twins = g.find_twins(None);
    let degree5 = twins.iter().filter(|(u, _)| g.degree(*u) == 5).count();
    let bound = (ell as i64 + 1) * (n as i64 - 1);
    let slack = bound - 2 * m as i64;
    let degree_alarm = connectivity.is_some_and(|k| k >= 3)
        && g.min_degree() >= 4
        && g.max_degree() > 7 * ell;
    FamilyAudit {
        ell,
        n,
        m,
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        connectivity,
        twin_pairs: twins.len(),
        degree5_twin_pairs: degree5,
        regular: g.min_degree() == g.max_degree(),
        density_bound_twice: bound,
        density_slack_twice: slack,
        density_alarm: slack < 0,
        degree_alarm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklace_counts() {
        let g = necklace(4).unwrap();
        assert_eq!((g.n(), g.m()), (8, 16));
        assert!(g.vertices().all(|v| g.degree(v) == 4));
        assert!(necklace(3).is_err());
    }

    #[test]
    fn wheel_shapes() {
        let w3 = wheel(3).unwrap();
        assert_eq!((w3.n(), w3.m()), (4, 6));
        let w5 = wheel(5).unwrap();
        assert_eq!(w5.degree(5), 5);
        assert!((0..5).all(|v| w5.degree(v) == 3));
        assert_eq!(
            wheel(2),
            Err(FamilyError::ParamTooSmall {
                name: "n",
                value: 2,
                min: 3
            })
        );
    }

    #[test]
    fn gadget_wheel_counts() {
        let g = gadget_wheel(2).unwrap();
        assert_eq!(g.n(), 11);
        assert_eq!(g.min_degree(), 4);
        assert_eq!(g.degree(0), 4);
        assert!(gadget_wheel(1).is_err());
        let g = gadget_wheel_delta(3, 5).unwrap();
        assert_eq!(g.min_degree(), 5);
        assert_eq!(g.n(), 1 + 6 + 12);
    }

    #[test]
    fn strong_product_counts() {
        let g = cycle_strong_edge(5).unwrap();
        assert_eq!((g.n(), g.m()), (10, 25));
        assert!(g.vertices().all(|v| g.degree(v) == 5));
    }

    #[test]
    fn king_counts() {
        assert_eq!(king(2, 3).unwrap().m(), 11);
        assert_eq!(king(2, 4).unwrap().m(), 16);
        let row = king(1, 5).unwrap();
        assert_eq!(row.edges(), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn bipartite_small_cases() {
        let p3 = complete_bipartite_2l(1).unwrap();
        assert_eq!(p3.edges(), vec![(0, 2), (1, 2)]);
        let c4 = complete_bipartite_2l(2).unwrap();
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));
        assert!(complete_bipartite_2l(0).is_err());
    }

    #[test]
    fn apex_counts() {
        let g = apex_necklace(6).unwrap();
        assert_eq!(g.n(), 13);
        assert_eq!(g.degree(12), 6);
        assert_eq!(g.min_degree(), 4);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(FamilySpec::parse("king", &[2, 4]), Ok(FamilySpec::King(2, 4)));
        assert!(matches!(
            FamilySpec::parse("king", &[2]),
            Err(FamilyError::WrongArity { .. })
        ));
        assert!(matches!(
            FamilySpec::parse("petersen", &[]),
            Err(FamilyError::UnknownFamily(_))
        ));
        assert_eq!(FamilySpec::Necklace(8).to_string(), "necklace n=8");
    }

    #[test]
    fn audit_arithmetic() {
        let a = audit(&necklace(8).unwrap(), 5);
        assert_eq!((a.n, a.m), (16, 32));
        assert_eq!(a.bound_display(), "45");
        assert_eq!(a.slack_display(), "13");
        assert!(!a.density_alarm);
        let a = audit(&complete_bipartite_2l(3).unwrap(), 4);
        assert_eq!((a.m, a.bound_display().as_str()), (6, "10"));
        let a = audit(&wheel(6).unwrap(), 4);
        assert_eq!((a.m, a.bound_display().as_str()), (12, "15"));
        assert_eq!(half(-3), "-1.5");
    }
}
