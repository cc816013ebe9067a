//! srg-lab: feasibility tables, graph verification, Paley construction, the
//! srg(19,6,1,2) nonexistence proof run, and the exhaustive search oracle.
//!
//! Exit codes are a stable contract: 0 success, 1 semantic failure (a check
//! failed, a trace is broken, a counterexample survived), 2 usage or I/O
//! errors. Human-readable output goes to stdout, diagnostics to stderr, and
//! JSON mode prints nothing but JSON on stdout.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use srg_core::{
    check_identity, enumerate_family, exhaustive_search, paley_graph, parse_graph6,
    prove_nonexistence_19, replay_trace, to_graph6, ProofTrace, SrgParams,
};
use std::io::{BufRead, IsTerminal, Write};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "srg-lab", version, about = "strongly regular graph laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the integrality feasibility screen for a (lambda, mu) family
    Feasible(FeasibleArgs),
    /// Verify graph6 graphs (from a file or stdin) against srg parameters
    Check(CheckArgs),
    /// Emit a named construction as one graph6 line
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run the mechanized srg(19,6,1,2) nonexistence proof
    Prove19(Prove19Args),
    /// Exhaustively enumerate srg(n,k,lambda,mu) up to isomorphism (n <= 19)
    Search(SearchArgs),
    /// Re-validate a serialized proof trace
    Replay(ReplayArgs),
}

#[derive(Args)]
struct FeasibleArgs {
    #[arg(long)]
    lambda: u64,
    #[arg(long)]
    mu: u64,
    #[arg(long)]
    kmax: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// graph6 input, one graph per line; stdin when omitted
    path: Option<std::path::PathBuf>,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    lambda: u64,
    #[arg(long)]
    mu: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum GenKind {
    /// Paley graph on q vertices (q prime, q = 1 mod 4, or q = 9)
    Paley {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args)]
struct Prove19Args {
    /// Write the full proof trace as JSON to this file
    #[arg(long)]
    trace: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    lambda: u64,
    #[arg(long)]
    mu: u64,
    /// Pre-commit the anchor-triangle labeling (sound up to isomorphism)
    #[arg(long)]
    seeded: bool,
    /// Worker threads for top-level branches
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct ReplayArgs {
    trace: std::path::PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Semantic failure (exit 1) versus usage/input/IO errors (exit 2).
enum Failure {
    Semantic,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure::Usage(err.to_string())
    }
}

fn style(text: &str, code: &str) -> String {
    let enabled = match std::env::var("SRG_LAB_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => std::io::stdout().is_terminal(),
    };
    if enabled {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn pass_fail(pass: bool) -> String {
    if pass {
        style("pass", "32")
    } else {
        style("fail", "31")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Feasible(args) => run_feasible(args),
        Command::Check(args) => run_check(args),
        Command::Gen { kind } => run_gen(kind),
        Command::Prove19(args) => run_prove19(args),
        Command::Search(args) => run_search(args),
        Command::Replay(args) => run_replay(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Semantic) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct FeasibleRow {
    k: u64,
    n: u64,
    pass: bool,
    reason: String,
}

fn run_feasible(args: FeasibleArgs) -> Result<(), Failure> {
    if args.kmax > 1_000_000 {
        return Err(Failure::Usage("kmax must be at most 1000000".into()));
    }
    let rows: Vec<FeasibleRow> = enumerate_family(args.lambda, args.mu, args.kmax)
        .into_iter()
        .map(|v| FeasibleRow {
            k: v.params.k,
            n: v.params.n,
            pass: v.passes_integrality,
            reason: v.reason.to_string(),
        })
        .collect();
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Text => {
            println!("{:>6} {:>8} {:>6}  reason", "k", "n", "");
            for row in &rows {
                println!(
                    "{:>6} {:>8} {:>6}  {}",
                    row.k,
                    row.n,
                    pass_fail(row.pass),
                    row.reason
                );
            }
            eprintln!(
                "{} candidate valencies, {} feasible",
                rows.len(),
                rows.iter().filter(|r| r.pass).count()
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckOutput {
    params: SrgParams,
    identity_ok: bool,
    graphs: Vec<CheckRow>,
    all_pass: bool,
}

#[derive(Serialize)]
struct CheckRow {
    line: usize,
    is_srg: bool,
    report: srg_core::SrgReport,
}

fn run_check(args: CheckArgs) -> Result<(), Failure> {
    let p = SrgParams::new(args.n, args.k, args.lambda, args.mu);
    let input: Box<dyn BufRead> = match &args.path {
        Some(path) => Box::new(std::io::BufReader::new(std::fs::File::open(path)?)),
        None => Box::new(std::io::BufReader::new(std::io::stdin())),
    };

    if !check_identity(&p) {
        match args.format {
            Format::Json => {
                let out = CheckOutput {
                    params: p,
                    identity_ok: false,
                    graphs: vec![],
                    all_pass: false,
                };
                println!("{}", serde_json::to_string_pretty(&out)?);
            }
            Format::Text => {
                println!(
                    "{}: parameters {} fail k(k-lambda-1) = (n-k-1)mu (identity_violation)",
                    pass_fail(false),
                    p
                );
            }
        }
        return Err(Failure::Semantic);
    }

    let mut rows = Vec::new();
    let mut checked = 0usize;
    for (index, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let number = index + 1;
        let graph =
            parse_graph6(&line).map_err(|e| Failure::Usage(format!("line {number}: {e}")))?;
        let report = graph
            .is_strongly_regular(&p)
            .map_err(|e| Failure::Usage(format!("line {number}: {e}")))?;
        checked += 1;
        rows.push(CheckRow {
            line: number,
            is_srg: report.is_srg,
            report,
        });
    }
    if checked == 0 {
        eprintln!("warning: no graphs checked");
    }
    let all_pass = rows.iter().all(|r| r.is_srg);
    match args.format {
        Format::Json => {
            let out = CheckOutput {
                params: p,
                identity_ok: true,
                graphs: rows,
                all_pass,
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Text => {
            for row in &rows {
                let detail = if row.is_srg {
                    format!("srg({},{},{},{})", p.n, p.k, p.lambda, p.mu)
                } else if let Some(d) = &row.report.degree_violation {
                    format!("vertex {} has degree {}", d.vertex, d.observed)
                } else if let Some(v) = &row.report.violating_pair {
                    format!(
                        "{} pair ({},{}) has {} common neighbors, expected {}",
                        if v.adjacent {
                            "adjacent"
                        } else {
                            "non-adjacent"
                        },
                        v.u,
                        v.v,
                        v.observed_common,
                        v.expected
                    )
                } else {
                    String::new()
                };
                println!("line {}: {}  {}", row.line, pass_fail(row.is_srg), detail);
            }
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Semantic)
    }
}

fn run_gen(kind: GenKind) -> Result<(), Failure> {
    match kind {
        GenKind::Paley { q } => {
            let g = paley_graph(q).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{}", to_graph6(&g));
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ProveSummary {
    params: SrgParams,
    cases: Vec<CaseSummary>,
    surviving_completions: usize,
    nodes_explored: usize,
    leaves: usize,
    certificates: std::collections::BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct CaseSummary {
    structure: String,
    nodes: usize,
    leaves: usize,
    certificates: std::collections::BTreeMap<String, usize>,
}

fn run_prove19(args: Prove19Args) -> Result<(), Failure> {
    let trace = prove_nonexistence_19();
    if let Some(path) = &args.trace {
        let mut file = std::fs::File::create(path)?;
        file.write_all(trace.to_json().as_bytes())?;
        file.write_all(b"\n")?;
    }
    let summary = ProveSummary {
        params: trace.params,
        cases: trace
            .cases
            .iter()
            .map(|c| CaseSummary {
                structure: c.structure.to_string(),
                nodes: c.nodes,
                leaves: c.leaves.len(),
                certificates: c.certificate_histogram(),
            })
            .collect(),
        surviving_completions: trace.surviving_completions,
        nodes_explored: trace.stats.nodes_explored,
        leaves: trace.stats.leaves,
        certificates: trace.stats.certificates.clone(),
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
        Format::Text => {
            println!("{}: {} top-level cases", trace.params, summary.cases.len());
            for case in &summary.cases {
                println!(
                    "  case {}: {} nodes, {} contradiction leaves {:?}",
                    case.structure, case.nodes, case.leaves, case.certificates
                );
            }
            let verdict = trace.surviving_completions == 0;
            println!(
                "surviving completions: {} -> {}",
                trace.surviving_completions,
                if verdict {
                    style("nonexistence proved", "32")
                } else {
                    style("COUNTEREXAMPLE", "31")
                }
            );
        }
    }
    if trace.surviving_completions == 0 {
        Ok(())
    } else {
        Err(Failure::Semantic)
    }
}

fn run_search(args: SearchArgs) -> Result<(), Failure> {
    let p = SrgParams::new(args.n, args.k, args.lambda, args.mu);
    let jobs = args.jobs.max(1);
    let outcome =
        exhaustive_search(&p, args.seeded, jobs).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{}", serde_json::to_string_pretty(&outcome)?);
    Ok(())
}

#[derive(Serialize)]
struct ReplayOutput {
    ok: bool,
    cases: usize,
    nodes_verified: usize,
    leaves_verified: usize,
    completions_verified: usize,
    error: Option<String>,
}

fn run_replay(args: ReplayArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.trace)?;
    let trace = ProofTrace::from_json(&text)
        .map_err(|e| Failure::Usage(format!("trace does not parse: {e}")))?;
    match replay_trace(&trace) {
        Ok(summary) => {
            match args.format {
                Format::Json => {
                    let out = ReplayOutput {
                        ok: true,
                        cases: summary.cases,
                        nodes_verified: summary.nodes_verified,
                        leaves_verified: summary.leaves_verified,
                        completions_verified: summary.completions_verified,
                        error: None,
                    };
                    println!("{}", serde_json::to_string_pretty(&out)?);
                }
                Format::Text => {
                    println!(
                        "{}: {} cases, {} nodes and {} leaves re-verified",
                        pass_fail(true),
                        summary.cases,
                        summary.nodes_verified,
                        summary.leaves_verified
                    );
                }
            }
            Ok(())
        }
        Err(err) => {
            match args.format {
                Format::Json => {
                    let out = ReplayOutput {
                        ok: false,
                        cases: 0,
                        nodes_verified: 0,
                        leaves_verified: 0,
                        completions_verified: 0,
                        error: Some(err.to_string()),
                    };
                    println!("{}", serde_json::to_string_pretty(&out)?);
                }
                Format::Text => println!("{}: {}", pass_fail(false), err),
            }
            Err(Failure::Semantic)
        }
    }
}
