//! Text formats.
//!
//! Graph: first non-comment line `n m`, then `m` lines `u v` with `u < v`.
//! Lines beginning with `#` are ignored wherever they appear.
//!
//! Certificate:
//!
//! ```text
//! ell 3
//! A: 0
//! B: 1
//! L1: 2
//! L2: 3
//! L3: 4
//! ```

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};
use crate::minor::MinorModel;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty())
}

fn parse_ids(line: usize, s: &str) -> Result<Vec<usize>, GraphError> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| GraphError::Parse {
                line,
                msg: format!("expected a vertex id, found `{t}`"),
            })
        })
        .collect()
}

/// Parses a graph and returns it together with the unconsumed remainder of the
/// input (used when a certificate follows the graph in one stream).
pub fn parse_graph_prefix(text: &str) -> Result<(Graph, String), GraphError> {
    let (g, consumed) = parse_graph_lines(text)?;
    let rest: String = text.lines().skip(consumed).map(|l| format!("{l}\n")).collect();
    Ok((g, rest))
}

/// Parses the graph and reports how many input lines it consumed.
fn parse_graph_lines(text: &str) -> Result<(Graph, usize), GraphError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let nums = parse_ids(hline, header)?;
    let [n, m] = nums[..] else {
        return Err(GraphError::Parse {
            line: hline,
            msg: "header must be `n m`".into(),
        });
    };
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or(GraphError::Parse {
            line: last_line + 1,
            msg: format!("expected {m} edge lines, found {}", edges.len()),
        })?;
        let ids = parse_ids(ln, l)?;
        let [u, v] = ids[..] else {
            return Err(GraphError::Parse {
                line: ln,
                msg: "edge line must be `u v`".into(),
            });
        };
        edges.push((u, v));
        last_line = ln;
    }
    let g = Graph::new(n, &edges)?;
    if g.m() != m {
        return Err(GraphError::Parse {
            line: hline,
            msg: format!("header declares {m} edges but {} are distinct", g.m()),
        });
    }
    Ok((g, last_line))
}

/// Parses a complete graph document; trailing non-comment content is an error.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let (g, consumed) = parse_graph_lines(text)?;
    if let Some((line, _)) = content_lines(text).find(|(l, _)| *l > consumed) {
        return Err(GraphError::Parse {
            line,
            msg: "unexpected content after the edge list".into(),
        });
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn join(set: &VertexSet) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_certificate(model: &MinorModel) -> String {
    let mut out = format!("ell {}\n", model.ell);
    writeln!(out, "A: {}", join(&model.side_a)).unwrap();
    writeln!(out, "B: {}", join(&model.side_b)).unwrap();
    for (i, leg) in model.legs.iter().enumerate() {
        writeln!(out, "L{}: {}", i + 1, join(leg)).unwrap();
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<MinorModel, GraphError> {
    let mut lines = content_lines(text).filter(|(_, l)| l.trim() != "MINOR");
    let err = |line: usize, msg: &str| GraphError::Parse {
        line,
        msg: msg.to_string(),
    };
    let (ln, first) = lines.next().ok_or_else(|| err(1, "missing `ell k` line"))?;
    let ell = first
        .strip_prefix("ell ")
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(|| err(ln, "expected `ell k`"))?;
    let mut labelled = |label: &str| -> Result<VertexSet, GraphError> {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| err(ln, &format!("missing `{label}:` line")))?;
        let body = l
            .strip_prefix(label)
            .and_then(|s| s.strip_prefix(':'))
            .ok_or_else(|| err(ln, &format!("expected `{label}:`")))?;
        let ids = parse_ids(ln, body)?;
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err(ln, "ids must be strictly ascending"));
        }
        Ok(ids.into())
    };
    let side_a = labelled("A")?;
    let side_b = labelled("B")?;
    let mut legs = Vec::with_capacity(ell);
    for i in 1..=ell {
        legs.push(labelled(&format!("L{i}"))?);
    }
    Ok(MinorModel {
        ell,
        side_a,
        side_b,
        legs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip_with_comments() {
        let text = "# comment\n3 2\n0 1\n# mid\n1 2\n";
        let g = parse_graph(text).unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(write_graph(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph("2 1\n0 x\n"), Err(GraphError::Parse { line: 2, .. })));
        assert_eq!(parse_graph("2 1\n0 0\n"), Err(GraphError::SelfLoop(0)));
        assert!(matches!(parse_graph("2 2\n0 1\n0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph("2 1\n0 1\n5 6\n"), Err(GraphError::Parse { line: 3, .. })));
    }

    #[test]
    fn certificate_round_trip() {
        let model = MinorModel {
            ell: 2,
            side_a: VertexSet::from([0]),
            side_b: VertexSet::from([1, 4]),
            legs: vec![VertexSet::from([2]), VertexSet::from([3])],
        };
        let text = write_certificate(&model);
        assert_eq!(text, "ell 2\nA: 0\nB: 1 4\nL1: 2\nL2: 3\n");
        assert_eq!(parse_certificate(&text).unwrap(), model);
        assert!(parse_certificate("ell 1\nA: 0\nB: 1\n").is_err());
        assert!(parse_certificate("ell 1\nA: 2 0\nB: 1\nL1: 3\n").is_err());
    }

    #[test]
    fn graph_prefix_leaves_certificate() {
        let text = "2 1\n0 1\nMINOR\nell 1\n";
        let (g, rest) = parse_graph_prefix(text).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(rest, "MINOR\nell 1\n");
    }
}
