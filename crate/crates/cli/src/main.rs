use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use leancut::corpus;
use leancut_core::improve::{leanify, Leanified, LeanifyConfig, StepSummary};
use leancut_core::io::{
    certificate_json, format_decomposition, format_graph, parse_decomposition, parse_graph,
    NamedDecomposition,
};
use leancut_core::leanness::{find_minimal_certificate, is_lean, DEFAULT_MAX_ADH_ENUM};
use leancut_core::oracle::{brute_force_tcw, naive_is_lean, OracleConfig};
use leancut_core::{Error, LeannessConfig, MultiGraph, TreeCutDecomposition};

const EXIT_INVALID: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;
const EXIT_ITERATIONS: u8 = 4;
const EXIT_PARSE: u8 = 64;
const EXIT_NO_INPUT: u8 = 66;

/// Tree-cut decompositions: validation, width, leanness certificates and
/// leanification.
#[derive(Parser)]
#[command(name = "leancut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a decomposition is valid for a graph.
    Validate { graph: PathBuf, decomposition: PathBuf },
    /// Print the width and fatness of a decomposition.
    Width { graph: PathBuf, decomposition: PathBuf },
    /// Print a minimal non-leanness certificate as JSON, or `lean`.
    Certificate {
        graph: PathBuf,
        decomposition: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ADH_ENUM)]
        max_adh_enum: usize,
    },
    /// Make a decomposition lean without increasing its width.
    Leanify {
        graph: PathBuf,
        /// Starting decomposition; when omitted, the exhaustive optimum is
        /// used on small graphs and the single-bag decomposition otherwise.
        decomposition: Option<PathBuf>,
        /// Improvement steps allowed per 3-edge-connected piece.
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_ADH_ENUM)]
        max_adh_enum: usize,
        /// Print one tab-separated line per improvement step to stderr.
        #[arg(long)]
        trace: bool,
        /// Confirm leanness of the result by exhaustive enumeration.
        #[arg(long)]
        oracle_check: bool,
        /// Where to write the decomposition (default: stdout).
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Where to write the JSON run report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exact tree-cut width of a small graph by exhaustive enumeration.
    Tcw {
        graph: PathBuf,
        #[arg(long)]
        max_tree_nodes: Option<usize>,
        #[arg(long)]
        no_empty_bags: bool,
        /// Where to write the optimal decomposition found.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print a random multigraph; the seed comes from LEANCUT_SEED.
    RandomGraph {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        connected: bool,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::InvalidDecomposition(_) => EXIT_INVALID,
            Error::Undecided { .. } => EXIT_UNDECIDED,
            Error::IterationLimit { .. } => EXIT_ITERATIONS,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CmdResult = Result<(), Failure>;

struct Input {
    bytes: Vec<u8>,
    path: PathBuf,
}

impl Input {
    fn read(path: &Path) -> Result<Self, Failure> {
        let bytes = fs::read(path)
            .map_err(|e| failure(EXIT_NO_INPUT, format!("cannot read {}: {e}", path.display())))?;
        Ok(Self { bytes, path: path.to_owned() })
    }

    fn text(&self) -> Result<&str, Failure> {
        std::str::from_utf8(&self.bytes)
            .map_err(|_| failure(EXIT_PARSE, format!("{} is not UTF-8", self.path.display())))
    }

    fn sha256(&self) -> String {
        hex::encode(Sha256::digest(&self.bytes))
    }

    fn context(&self, e: Error) -> Failure {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", self.path.display(), f.message);
        f
    }
}

fn load_graph(input: &Input) -> Result<MultiGraph, Failure> {
    parse_graph(input.text()?).map_err(|e| input.context(e))
}

fn load_pair(
    graph: &Path,
    decomposition: &Path,
) -> Result<(MultiGraph, NamedDecomposition, Input, Input), Failure> {
    let gi = Input::read(graph)?;
    let di = Input::read(decomposition)?;
    let g = load_graph(&gi)?;
    let d = parse_decomposition(di.text()?).map_err(|e| di.context(e))?;
    d.decomposition.validate(&g).map_err(|v| di.context(v.into()))?;
    Ok((g, d, gi, di))
}

fn write_out(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| failure(1, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn trace_line(index: usize, s: &StepSummary) -> String {
    let position = s.fatness_position.map_or("-".to_string(), |p| p.to_string());
    format!("{index}\t{}\t{}\t{}\t{}\t{position}", s.k, s.distance, s.cut_size, s.width)
}

fn step_json(s: &StepSummary) -> Value {
    json!({
        "k": s.k,
        "distance": s.distance,
        "cut_size": s.cut_size,
        "width": s.width,
        "fatness_position": s.fatness_position,
    })
}

#[allow(clippy::too_many_arguments)]
fn leanify_cmd(
    graph: &Path,
    decomposition: Option<&Path>,
    max_iters: Option<usize>,
    max_adh_enum: usize,
    trace: bool,
    oracle_check: bool,
    output: Option<&Path>,
    report: Option<&Path>,
) -> CmdResult {
    let started = Instant::now();
    let gi = Input::read(graph)?;
    let g = load_graph(&gi)?;
    let oracle_cfg = OracleConfig::default();
    let (start, start_kind, decomposition_hash) = match decomposition {
        Some(path) => {
            let di = Input::read(path)?;
            let d = parse_decomposition(di.text()?).map_err(|e| di.context(e))?;
            d.decomposition.validate(&g).map_err(|v| di.context(v.into()))?;
            (d.decomposition, "input", Some(di.sha256()))
        }
        None if g.num_vertices() <= oracle_cfg.max_vertices => {
            (brute_force_tcw(&g, &oracle_cfg)?.1, "oracle-optimal", None)
        }
        None => (TreeCutDecomposition::trivial(&g), "trivial", None),
    };
    let leanness = LeannessConfig { max_adh_enum };
    let cfg = LeanifyConfig { leanness, max_iters };
    let result: Leanified = match leanify(&g, Some(&start), cfg) {
        Ok(r) => r,
        Err(Error::IterationLimit { limit, trace: fatness, .. }) => {
            return Err(failure(
                EXIT_ITERATIONS,
                format!(
                    "iteration guard of {limit} improvement steps exceeded; last fatness {}",
                    fatness.last().map(|f| f.to_string()).unwrap_or_default()
                ),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    if trace {
        let mut err = std::io::stderr().lock();
        for (i, s) in result.steps.iter().enumerate() {
            let _ = writeln!(err, "{}", trace_line(i + 1, s));
        }
    }
    let out = &result.decomposition;
    let lean = is_lean(&g, out, leanness)?;
    let oracle =
        if oracle_check {
            match naive_is_lean(&g, out) {
                Ok(verdict) if verdict == lean => json!(verdict),
                Ok(verdict) => return Err(failure(
                    1,
                    format!(
                        "exhaustive check disagrees: flow-based says lean={lean}, enumeration says {verdict}"
                    ),
                )),
                Err(Error::Resource(reason)) => json!({ "skipped": reason }),
                Err(e) => return Err(e.into()),
            }
        } else {
            Value::Null
        };
    let report_json = json!({
        "command": "leanify",
        "graph_sha256": gi.sha256(),
        "decomposition_sha256": decomposition_hash,
        "start": start_kind,
        "max_adh_enum": max_adh_enum,
        "max_iters": max_iters,
        "width_before": start.width(&g),
        "width_after": out.width(&g),
        "lean": lean,
        "oracle_check": oracle,
        "iterations": result.steps.len(),
        "splits": result.splits,
        "steps": result.steps.iter().map(step_json).collect::<Vec<_>>(),
        "fatness_trace": result.fatness_trace.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "nodes": out.num_nodes(),
    });
    write_out(output, &format_decomposition(out))?;
    let report_text = serde_json::to_string_pretty(&report_json).expect("report serializes") + "\n";
    match report {
        Some(p) => {
            fs::write(p, report_text).map_err(|e| failure(1, format!("cannot write {}: {e}", p.display())))?
        }
        None => eprint!("{report_text}"),
    }
    eprintln!("wall time: {:.3}s", started.elapsed().as_secs_f64());
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Validate { graph, decomposition } => {
            load_pair(&graph, &decomposition)?;
            println!("ok");
            Ok(())
        }
        Command::Width { graph, decomposition } => {
            let (g, d, _, _) = load_pair(&graph, &decomposition)?;
            let d = &d.decomposition;
            println!("width={}", d.width(&g));
            println!("fatness={}", d.fatness(&g));
            Ok(())
        }
        Command::Certificate { graph, decomposition, max_adh_enum } => {
            let (g, d, _, _) = load_pair(&graph, &decomposition)?;
            match find_minimal_certificate(&g, &d.decomposition, LeannessConfig { max_adh_enum })? {
                None => println!("lean"),
                Some(c) => println!("{}", certificate_json(&c, &d)),
            }
            Ok(())
        }
        Command::Leanify {
            graph,
            decomposition,
            max_iters,
            max_adh_enum,
            trace,
            oracle_check,
            output,
            report,
        } => leanify_cmd(
            &graph,
            decomposition.as_deref(),
            max_iters,
            max_adh_enum,
            trace,
            oracle_check,
            output.as_deref(),
            report.as_deref(),
        ),
        Command::Tcw { graph, max_tree_nodes, no_empty_bags, output } => {
            let g = load_graph(&Input::read(&graph)?)?;
            let cfg = OracleConfig { max_tree_nodes, allow_empty_bags: !no_empty_bags, ..Default::default() };
            let (w, d) = brute_force_tcw(&g, &cfg)?;
            println!("tcw={w}");
            write_out(output.as_deref(), &format_decomposition(&d))
        }
        Command::RandomGraph { vertices, edges, connected } => {
            if vertices < 2 && edges > 0 {
                return Err(failure(1, "edges need at least two vertices"));
            }
            if connected && edges + 1 < vertices {
                return Err(failure(
                    1,
                    format!("a connected graph on {vertices} vertices needs {} edges", vertices - 1),
                ));
            }
            let mut rng = corpus::rng(corpus::seed_from_env());
            let g = if connected {
                corpus::random_connected_multigraph(&mut rng, vertices, edges)
            } else {
                corpus::random_multigraph(&mut rng, vertices, edges)
            };
            print!("{}", format_graph(&g)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
