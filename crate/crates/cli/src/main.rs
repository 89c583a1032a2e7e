use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use clex_core::checks::{self, Context};
use clex_core::clustervars::{compute_table_on, period_five};
use clex_core::combinat::catalan;
use clex_core::exchmod::ExchangeModule;
use clex_core::flipgraph::{geodesic_cycles, ExchangeGraph};
use clex_core::homology::{csv_report, homology_row};
use clex_core::polygon::{Diagonal, DEFAULT_MAX_NODES};
use clex_core::{Error, VERSION};

/// Node bound for commands that build boundary matrices (n <= 6).
const HEAVY_MAX_NODES: usize = 429;

#[derive(Parser)]
#[command(
    name = "clex",
    version,
    about = "Type-A cluster combinatorics: flips, cluster variables, homology, exchange relations"
)]
struct Cli {
    /// Largest exchange graph (node count) a command may build.
    #[arg(long, global = true, env = "CLEX_MAX_NODES")]
    max_nodes: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count triangulations and flips.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Also list every triangulation.
        #[arg(long)]
        list: bool,
    },
    /// Export the exchange graph.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Print the cluster variable table, or one entry.
    ClusterVars {
        #[arg(long)]
        n: usize,
        /// A diagonal written as `a,b`.
        #[arg(long)]
        diagonal: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Geodesic 4- and 5-cycles with their labels.
    Cycles {
        #[arg(long)]
        n: usize,
    },
    /// Rank and torsion of H1.
    Homology {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Pentagonal relations, kernel of θ and the endpoint-1 pairs.
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run verification checks; exits with 1 if any fails.
    Verify {
        #[arg(long)]
        n: usize,
        /// Check id (see the list printed by `--theorem help`), or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// The period-five recurrence from the A2 pentagon.
    Recurrence,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

enum Failure {
    Usage(String),
    Verification(String),
    Resource(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            Error::InvalidDiagonal { .. } | Error::SizeOutOfRange(_) | Error::Parse(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn bound(cli_bound: Option<usize>, heavy: bool) -> usize {
    cli_bound.unwrap_or(if heavy {
        HEAVY_MAX_NODES
    } else {
        DEFAULT_MAX_NODES
    })
}

/// Rejects sizes up front, before any work.
fn admit(n: usize, max_nodes: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let required = catalan(n + 1);
    if required > max_nodes {
        return Err(Failure::Resource(format!(
            "n = {n} needs {required} nodes, bound is {max_nodes} (raise with --max-nodes or CLEX_MAX_NODES)"
        )));
    }
    Ok(())
}

fn header(n: usize) -> String {
    format!("# clex {VERSION}, n = {n}\n")
}

fn parse_diagonal(n: usize, s: &str) -> Result<Diagonal, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(Failure::Usage(format!("diagonal must be `a,b`, got {s:?}")));
    };
    let parse = |x: &str| {
        x.parse::<u16>()
            .map_err(|_| Failure::Usage(format!("bad vertex {x:?}")))
    };
    Ok(Diagonal::new(n, parse(a)?, parse(b)?)?)
}

fn json_string(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match cli.command {
        Command::Enumerate { n, list } => {
            admit(n, bound(cli.max_nodes, false))?;
            let g = ExchangeGraph::build_bounded(n, bound(cli.max_nodes, false))?;
            out.push_str(&header(n));
            writeln!(
                out,
                "{} triangulations, {} edges",
                g.node_count(),
                g.edge_count()
            )
            .unwrap();
            if list {
                for (i, t) in g.nodes().iter().enumerate() {
                    writeln!(out, "{i}: {t}").unwrap();
                }
            }
        }
        Command::Graph { n, format } => {
            let max = bound(cli.max_nodes, false);
            admit(n, max)?;
            let g = ExchangeGraph::build_bounded(n, max)?;
            match format {
                GraphFormat::Dot => out.push_str(&g.to_dot()),
                GraphFormat::Json => {
                    let cycles = geodesic_cycles(&g)?;
                    out.push_str(&json_string(&g.to_json(&cycles.five)));
                }
            }
        }
        Command::ClusterVars {
            n,
            diagonal,
            format,
        } => {
            let max = bound(cli.max_nodes, false);
            admit(n, max)?;
            let wanted = diagonal
                .as_deref()
                .map(|s| parse_diagonal(n, s))
                .transpose()?;
            let table = compute_table_on(&ExchangeGraph::build_bounded(n, max)?)?;
            match (format, wanted) {
                (Format::Json, None) => out.push_str(&json_string(&table.to_json())),
                (Format::Json, Some(d)) => {
                    let p = table.get(&d).expect("every diagonal has a variable");
                    let v = serde_json::json!({
                        "version": VERSION, "n": n, "diagonal": d,
                        "value": p.to_fraction_string(), "terms": p,
                    });
                    out.push_str(&json_string(&v));
                }
                (Format::Text, wanted) => {
                    out.push_str(&header(n));
                    for (d, p) in table.diagonals() {
                        if wanted.is_none_or(|w| w == *d) {
                            writeln!(out, "{d} = {}", p.to_fraction_string()).unwrap();
                        }
                    }
                }
            }
        }
        Command::Cycles { n } => {
            let max = bound(cli.max_nodes, true);
            admit(n, max)?;
            let g = ExchangeGraph::build_bounded(n, max)?;
            let c = geodesic_cycles(&g)?;
            out.push_str(&header(n));
            writeln!(
                out,
                "{} geodesic 4-cycles, {} geodesic 5-cycles",
                c.four.len(),
                c.five.len()
            )
            .unwrap();
            for f in &c.four {
                writeln!(out, "4 {:?} {} {}", f.nodes, f.quads[0], f.quads[1]).unwrap();
            }
            for f in &c.five {
                writeln!(out, "5 {:?} {}", f.nodes, f.label).unwrap();
            }
        }
        Command::Homology { n, format } => {
            let max = bound(cli.max_nodes, true);
            admit(n, max)?;
            let row = homology_row(n)?;
            match format {
                TableFormat::Csv => {
                    out.push_str(&header(n));
                    out.push_str(&csv_report(&[row]));
                }
                TableFormat::Text => {
                    out.push_str(&header(n));
                    let torsion: Vec<String> = row.torsion.iter().map(|t| t.to_string()).collect();
                    writeln!(out, "H1 rank {}", row.rank).unwrap();
                    writeln!(out, "torsion [{}]", torsion.join(", ")).unwrap();
                    writeln!(out, "4-cycles {}", row.four_cycles).unwrap();
                    writeln!(out, "geodesic 5-cycles {}", row.five_cycles).unwrap();
                    writeln!(out, "5-cycle classes {}", row.label_classes).unwrap();
                }
            }
        }
        Command::Relations { n, format } => {
            let max = bound(cli.max_nodes, true);
            admit(n, max)?;
            let m = ExchangeModule::from_graph(&ExchangeGraph::build_bounded(n, max)?)?;
            let g = m.verify_pentagonal_generation();
            if format == Format::Json {
                let verified = [
                    ("pentagons_in_kernel".to_string(), g.in_kernel),
                    ("pentagons_span_kernel".to_string(), g.all_span_kernel),
                    (
                        "one_containing_independent".to_string(),
                        g.one_containing_independent,
                    ),
                ]
                .into_iter()
                .collect();
                out.push_str(&json_string(&m.report(&verified)));
            } else {
                out.push_str(&header(n));
                writeln!(
                    out,
                    "F rank {}, kernel rank {}, image rank {}",
                    m.f_rank(),
                    m.kernel_rank(),
                    m.theta_rank()
                )
                .unwrap();
                writeln!(out, "pentagonal relations ({}):", m.pentagons().len()).unwrap();
                for r in m.pentagons() {
                    let terms: Vec<String> = r
                        .vector
                        .coefficients
                        .iter()
                        .map(|(p, c)| format!("{c:+}{p}"))
                        .collect();
                    writeln!(out, "  {} {}", r.label, terms.join(" ")).unwrap();
                }
                writeln!(out, "kernel basis ({}):", m.kernel_rank()).unwrap();
                let k = m.kernel();
                for j in 0..k.cols() {
                    let terms: Vec<String> = m
                        .pairs()
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| k[(i, j)] != 0.into())
                        .map(|(i, p)| format!("{:+}{p}", k[(i, j)]))
                        .collect();
                    writeln!(out, "  {}", terms.join(" ")).unwrap();
                }
                let basis: Vec<String> = m.exchange_basis().iter().map(|p| p.to_string()).collect();
                writeln!(
                    out,
                    "endpoint-1 pairs ({}): {}",
                    basis.len(),
                    basis.join(" ")
                )
                .unwrap();
            }
        }
        Command::Verify { n, theorem } => {
            let max = bound(cli.max_nodes, true);
            if theorem == "help" {
                for c in checks::registry() {
                    writeln!(out, "{:8} {}", c.id(), c.title()).unwrap();
                }
                return Ok(out);
            }
            let selected = checks::select(&theorem).map_err(|_| {
                Failure::Usage(format!(
                    "unknown check {theorem:?}; choose from {}, all",
                    checks::ids().join(", ")
                ))
            })?;
            admit(n, max)?;
            let ctx = Context::with_bound(n, max);
            out.push_str(&header(n));
            let mut all_ok = true;
            for check in selected {
                let outcome = check.run(&ctx)?;
                let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
                all_ok &= outcome.passed();
                writeln!(out, "[{verdict}] {} {}", check.id(), check.title()).unwrap();
                for (ok, line) in &outcome.lines {
                    writeln!(out, "    {} {line}", if *ok { "ok  " } else { "FAIL" }).unwrap();
                }
            }
            if !all_ok {
                return Err(Failure::Verification(out));
            }
        }
        Command::Recurrence => {
            let p = period_five()?;
            out.push_str(&header(2));
            for (k, f) in p.values.iter().enumerate() {
                writeln!(out, "f{} = {}", k + 1, f.to_fraction_string()).unwrap();
            }
            let orbit: Vec<String> = p.orbit.iter().map(|q| q.to_string()).collect();
            writeln!(out, "orbit at x1 = x2 = 1: {}", orbit.join(", ")).unwrap();
            if !p.confirmed {
                return Err(Failure::Verification(out + "period 5 NOT confirmed\n"));
            }
            out.push_str("period 5 confirmed\n");
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
