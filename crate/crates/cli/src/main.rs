use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use k2l_core::families::{audit, king, FamilySpec};
use k2l_core::io::{parse_certificate, parse_graph, parse_graph_prefix, write_certificate, write_graph};
use k2l_core::iso::is_isomorphic_small;
use k2l_core::nested::{layer_cuts, theorem_driver, DriverConfig};
use k2l_core::{find_k2l_minor, verify_model, Graph, MinorSearch, OracleBudget};

/// Search for K_{2,l} minors and related structure in small graphs.
#[derive(Parser)]
#[command(name = "k2l", version)]
struct Cli {
    /// Read the graph from this file instead of standard input.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Maximum number of worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named family member in the text graph format.
    Gen {
        family: String,
        params: Vec<usize>,
    },
    /// Decide whether the graph has a K_{2,l} minor.
    MinorTest {
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Print the graph followed by a K_{2,l} certificate.
    MinorExtract {
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Check a certificate against a graph (both on one stream by default).
    VerifyCert {
        /// Read the certificate from this file instead of after the graph.
        #[arg(long, value_name = "FILE")]
        cert: Option<PathBuf>,
    },
    /// Degree, connectivity, twin and edge-density summary.
    Audit {
        #[arg(long)]
        ell: usize,
    },
    /// List adjacent pairs with equal closed neighbourhoods.
    Twins {
        #[arg(long)]
        degree: Option<usize>,
    },
    /// BFS layers from a source, with minimal layer cuts towards a target.
    Layers {
        #[arg(long)]
        source: usize,
        #[arg(long)]
        target: Option<usize>,
    },
    /// Contract the middle horizontal edges of a king's graph.
    KingContract {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Run the full pipeline: hypotheses, degree branch, nested cuts.
    TheoremDrive {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        override_d: Option<usize>,
        #[arg(long)]
        override_distance: Option<usize>,
        #[arg(long)]
        override_n: Option<usize>,
        #[arg(long)]
        skip_hypotheses: bool,
    },
}

#[derive(clap::Args)]
struct OracleArgs {
    #[arg(long)]
    ell: usize,
    /// Search-node budget.
    #[arg(long, default_value_t = 10_000_000)]
    node_limit: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 60)]
    time_limit: u64,
}

impl OracleArgs {
    fn budget(&self) -> OracleBudget {
        OracleBudget {
            node_limit: self.node_limit,
            time_limit: Duration::from_secs(self.time_limit),
        }
    }
}

/// Input or usage problem: reported on stderr with exit code 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Fail> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Fail(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_graph(cli: &Cli) -> Result<Graph, Fail> {
    Ok(parse_graph(&read_input(&cli.input)?)?)
}

/// Output text and exit status (0 definitive, 1 otherwise).
type Outcome = (String, u8);

fn run(cli: &Cli) -> Result<Outcome, Fail> {
    let threads = cli.threads as usize;
    match &cli.command {
        Command::Gen { family, params } => {
            let spec = FamilySpec::parse(&family.replace('-', "_"), params)?;
            let g = spec.generate()?;
            Ok((format!("# {spec}\n{}", write_graph(&g)), 0))
        }
        Command::MinorTest { oracle } => {
            let g = read_graph(cli)?;
            Ok(match find_k2l_minor(&g, oracle.ell, oracle.budget(), threads)? {
                MinorSearch::Found(_) => ("result: minor\n".into(), 0),
                MinorSearch::NoMinor => ("result: no-minor\n".into(), 0),
                MinorSearch::BudgetExhausted { nodes } => {
                    (format!("result: budget-exhausted\nnodes: {nodes}\n"), 1)
                }
            })
        }
        Command::MinorExtract { oracle } => {
            let g = read_graph(cli)?;
            Ok(match find_k2l_minor(&g, oracle.ell, oracle.budget(), threads)? {
                MinorSearch::Found(m) => {
                    (format!("{}MINOR\n{}", write_graph(&g), write_certificate(&m)), 0)
                }
                MinorSearch::NoMinor => ("result: no-minor\n".into(), 0),
                MinorSearch::BudgetExhausted { nodes } => {
                    (format!("result: budget-exhausted\nnodes: {nodes}\n"), 1)
                }
            })
        }
        Command::VerifyCert { cert } => {
            let text = read_input(&cli.input)?;
            let (g, rest) = match cert {
                Some(path) => (parse_graph(&text)?, read_input(&Some(path.clone()))?),
                None => parse_graph_prefix(&text)?,
            };
            let model = parse_certificate(&rest)?;
            Ok(match verify_model(&g, &model) {
                Ok(()) => (format!("valid: true\nell: {}\n", model.ell), 0),
                Err(v) => (format!("valid: false\nviolation: {v}\n"), 1),
            })
        }
        Command::Audit { ell } => {
            let g = read_graph(cli)?;
            let a = audit(&g, *ell);
            let conn = a.connectivity.map_or("-".to_string(), |c| c.to_string());
            let out = format!(
                "n: {}\nm: {}\nell: {}\nmin-degree: {}\nmax-degree: {}\nconnectivity: {conn}\n\
                 regular: {}\ntwin-pairs: {}\ndegree5-twin-pairs: {}\nedge-bound: {}\n\
                 edge-slack: {}\ndensity-alarm: {}\ndegree-alarm: {}\n",
                a.n,
                a.m,
                a.ell,
                a.min_degree,
                a.max_degree,
                a.regular,
                a.twin_pairs,
                a.degree5_twin_pairs,
                a.bound_display(),
                a.slack_display(),
                a.density_alarm,
                a.degree_alarm,
            );
            Ok((out, 0))
        }
        Command::Twins { degree } => {
            let g = read_graph(cli)?;
            let pairs = g.find_twins(*degree);
            let mut out = format!("twins: {}\n", pairs.len());
            for (u, v) in pairs {
                out.push_str(&format!("{u} {v}\n"));
            }
            Ok((out, 0))
        }
        Command::Layers { source, target } => {
            let g = read_graph(cli)?;
            let layering = g.bfs_layering(*source)?;
            let mut out = format!("source: {source}\ndepth: {}\n", layering.depth());
            for (i, layer) in layering.layers.iter().enumerate() {
                out.push_str(&format!("layer {i}: {}\n", join(layer.iter())));
            }
            if let Some(t) = target {
                for (i, cut) in layer_cuts(&g, *source, *t)? {
                    out.push_str(&format!("cut {i}: {}\n", join(cut.iter())));
                }
            }
            Ok((out, 0))
        }
        Command::KingContract { rows, cols } => king_contract(*rows, *cols),
        Command::TheoremDrive {
            ell,
            override_d,
            override_distance,
            override_n,
            skip_hypotheses,
        } => {
            let g = read_graph(cli)?;
            let cfg = DriverConfig {
                ell: *ell,
                d_override: *override_d,
                distance_override: *override_distance,
                n_threshold_override: *override_n,
                skip_hypotheses: *skip_hypotheses,
            };
            let w = theorem_driver(&g, &cfg)?;
            Ok((w.to_text(), if w.is_definitive() { 0 } else { 1 }))
        }
    }
}

fn join(it: impl Iterator<Item = usize>) -> String {
    it.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Contracts the horizontal edge between the two middle columns in every row.
fn king_contract(rows: usize, cols: usize) -> Result<Outcome, Fail> {
    if cols < 4 || cols % 2 != 0 {
        return Err(Fail("cols must be even and at least 4".into()));
    }
    let g = king(rows, cols)?;
    let mid = cols / 2;
    let edges: Vec<(usize, usize)> = (0..rows)
        .map(|r| (r * cols + mid - 1, r * cols + mid))
        .collect();
    let (h, _) = g.contract_edges(&edges)?;
    let target = king(rows, cols - 1)?;
    let iso = is_isomorphic_small(&h, &target)?;
    let kappa = |x: &Graph| x.vertex_connectivity().map_or("-".to_string(), |k| k.to_string());
    let out = format!(
        "isomorphic-to-king-{rows}x{}: {iso}\nvertices-removed: {}\nedges-removed: {}\n\
         min-degree-before: {}\nmin-degree-after: {}\nconnectivity-before: {}\nconnectivity-after: {}\n",
        cols - 1,
        g.n() - h.n(),
        g.m() - h.m(),
        g.min_degree(),
        h.min_degree(),
        kappa(&g),
        kappa(&h),
    );
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
