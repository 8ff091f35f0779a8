//! `dqw`: build graphs, check the walk identities, factor the squared
//! Grover walk and co-simulate it.
//!
//! Exit codes: 0 success, 2 bad input or unmet hypothesis, 3 failed
//! numerical or identity check.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dqw_core::arcs::build_arc_space;
use dqw_core::factor::{factorize_with_tolerance, grover_walk, PRODUCT_TOL};
use dqw_core::graph::{build_family, Family, Graph};
use dqw_core::report::{analysis_report, factorization_report};
use dqw_core::walks::{deviation_series, ArcState};
use dqw_core::Error;

const SIMULATION_TOL: f64 = 1e-7;

#[derive(Parser)]
#[command(name = "dqw", version, about = "Grover walk factorization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph from a named family as JSON.
    Build {
        #[arg(long)]
        family: String,
        /// Family parameters, e.g. `--params 3` or `--params 3 4`.
        #[arg(long, num_args = 1.., value_delimiter = ' ', allow_negative_numbers = true)]
        params: Vec<i64>,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the exact identity checks and print a JSON report.
    Analyze { graph: PathBuf },
    /// Factor U² into commuting exponentials of skew-adjacency matrices.
    Factorize {
        graph: PathBuf,
        /// Bound on ‖U² − Π exp(t_i S(Y_i))‖_F.
        #[arg(long, default_value_t = PRODUCT_TOL)]
        tol: f64,
        /// Write the JSON report here and print a summary instead.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare U^{2m}ψ with the product of exponentials for m = 1..steps/2.
    Simulate {
        graph: PathBuf,
        /// Total number of discrete steps (even).
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Starting arc as an index or `u,v`; uniform state when omitted.
        #[arg(long)]
        start_arc: Option<String>,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_input_error() { 2 } else { 3 };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build { family, params, output } => cmd_build(&family, &params, output.as_deref()),
        Command::Analyze { graph } => cmd_analyze(&graph),
        Command::Factorize { graph, tol, report } => cmd_factorize(&graph, tol, report.as_deref()),
        Command::Simulate { graph, steps, start_arc } => cmd_simulate(&graph, steps, start_arc.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(Graph::from_json(&text)?)
}

fn write_file(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn cmd_build(family: &str, params: &[i64], output: Option<&Path>) -> CmdResult {
    let family: Family = family.parse()?;
    let graph = build_family(family, params)?;
    let text = graph.to_json();
    match output {
        Some(path) => {
            write_file(path, &text)?;
            println!("{family}: n = {}, {} edges -> {}", graph.n(), graph.edge_count(), path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_analyze(path: &Path) -> CmdResult {
    let graph = read_graph(path)?;
    let report = analysis_report(&graph)?;
    print!("{}", report.to_json());
    let failed = report.checks.failures();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::check(format!("identity checks failed: {}", failed.join(", "))))
    }
}

fn cmd_factorize(path: &Path, tol: f64, report_path: Option<&Path>) -> CmdResult {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::input(format!("--tol must be positive, got {tol}")));
    }
    let graph = read_graph(path)?;
    let (report, res) = factorization_report(&graph, tol)?;
    match report_path {
        Some(out) => {
            write_file(out, &report.to_json())?;
            println!("n = {}, k = {}, diameter = {}", graph.n(), graph.degree(), graph.diameter());
            for (i, t) in res.t.iter().enumerate() {
                println!("t_{} = {t:.17e}", i + 1);
            }
            println!("gram rank = {}", res.gram_rank);
            println!("product error = {:.3e} (tolerance {tol:.1e})", res.product_error);
            println!("report written to {}", out.display());
        }
        None => print!("{}", report.to_json()),
    }
    let failed = report.checks.failures();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::check(format!(
            "checks failed: {} (product error {:.3e}, tolerance {tol:.1e})",
            failed.join(", "),
            res.product_error
        )))
    }
}

fn parse_start_arc(text: &str, graph: &Graph, len: usize) -> Result<ArcState, Failure> {
    let index = match text.split_once(',') {
        Some((u, v)) => {
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::input(format!("bad start arc '{text}'")))
            };
            let arc = (parse(u)?, parse(v)?);
            build_arc_space(graph)
                .index_of(arc)
                .ok_or_else(|| Failure::input(format!("({}, {}) is not an arc of the graph", arc.0, arc.1)))?
        }
        None => text
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::input(format!("bad start arc '{text}'")))?,
    };
    Ok(ArcState::basis(len, index)?)
}

fn cmd_simulate(path: &Path, steps: usize, start_arc: Option<&str>) -> CmdResult {
    if !steps.is_multiple_of(2) {
        return Err(Failure::input(format!("--steps must be even, got {steps}")));
    }
    let graph = read_graph(path)?;
    let res = factorize_with_tolerance(&graph, PRODUCT_TOL)?;
    let walk = grover_walk(&build_arc_space(&graph))?;
    let psi = match start_arc {
        Some(text) => parse_start_arc(text, &graph, walk.arc_count())?,
        None => ArcState::uniform(walk.arc_count())?,
    };
    let series = deviation_series(&walk, &res, &psi, steps / 2)?;
    let mut worst: f64 = 0.0;
    for (m, dev) in &series {
        println!("m = {m}: deviation = {dev:.3e}");
        worst = worst.max(*dev);
    }
    if worst < SIMULATION_TOL {
        Ok(())
    } else {
        Err(Failure::check(format!(
            "deviation {worst:.3e} exceeds {SIMULATION_TOL:.0e}"
        )))
    }
}
