//! Command-line front end: `generate`, `optimize`, `evaluate`, `rank`.
//!
//! Exit codes: 0 success, 2 usage errors, 3 validation errors (bad
//! parameters, malformed or disconnected inputs), 4 I/O errors.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dist::{apsp_with_workers, metrics};
use crate::graph::{parse_edge_list, serialize_edge_list, Graph, GraphError};
use crate::grow::{add_edges, GrowConfig, TieBreak};
use crate::importance::rank_edges;
use crate::report::RunReport;
use crate::seed::{create_base_graph, Matching};
use crate::two_opt::{multiple_2opt, Acceptance, PairOrdering, SearchConfig};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "odgraph",
    version,
    about = "Construct and refine low-diameter graphs for a given order and degree"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph: Petersen-block base plus greedy pentagon-driven growth
    Generate(GenerateArgs),
    /// Refine a graph with importance-prioritized 2-opt local search
    Optimize(OptimizeArgs),
    /// Report order, degrees, diameter, ASPL and lower bounds
    Evaluate {
        /// Edge-list file
        input: PathBuf,
    },
    /// Print edges sorted ascending by importance
    Rank {
        /// Edge-list file
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long)]
    pub degree: usize,
    /// Integer seed, or `random` for entropy
    #[arg(long, default_value = "1")]
    pub seed: String,
    /// Inter-block wiring pattern
    #[arg(long, value_enum, default_value_t = MatchingArg::Cross)]
    pub matching: MatchingArg,
    /// How the lowest-degree node is picked each round
    #[arg(long, value_enum, default_value_t = TieBreakArg::LowestId)]
    pub tie_break: TieBreakArg,
    /// Full distance recompute every N insertions (0 disables)
    #[arg(long, default_value_t = 64)]
    pub recompute_cadence: usize,
    /// Output edge-list path
    #[arg(long)]
    pub output: PathBuf,
    /// Threads for bulk distance recomputations
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    /// Edge-list file to refine
    pub input: PathBuf,
    #[arg(long, default_value_t = 60.0)]
    pub timeout_secs: f64,
    #[arg(long, value_enum, default_value_t = OrderingArg::SmallestFirst)]
    pub ordering: OrderingArg,
    /// `strict` or `threshold=EPS`
    #[arg(long, default_value = "strict")]
    pub acceptance: String,
    /// Accepted swaps between importance recomputations
    #[arg(long, default_value_t = 50)]
    pub rerank_cadence: usize,
    /// Integer seed, or `random` for entropy
    #[arg(long, default_value = "1")]
    pub seed: String,
    /// Output edge-list path
    #[arg(long)]
    pub output: PathBuf,
    /// Swap history CSV path
    #[arg(long)]
    pub history: Option<PathBuf>,
    /// Evaluations between worse acceptances (threshold mode); defaults to
    /// one full pass
    #[arg(long)]
    pub worse_window: Option<u64>,
    /// Fruitless passes before restarting from the best graph
    #[arg(long, default_value_t = 3)]
    pub restart_after: usize,
    /// Stop early once the best ASPL reaches this value
    #[arg(long)]
    pub target_aspl: Option<f64>,
    /// Threads for bulk distance recomputations
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MatchingArg {
    Cross,
    Offset5,
    Identity,
}

impl From<MatchingArg> for Matching {
    fn from(m: MatchingArg) -> Matching {
        match m {
            MatchingArg::Cross => Matching::Cross,
            MatchingArg::Offset5 => Matching::Offset5,
            MatchingArg::Identity => Matching::Identity,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum TieBreakArg {
    LowestId,
    Seeded,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OrderingArg {
    SmallestFirst,
    Triangle,
}

#[derive(Debug)]
enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Parses arguments from the environment and runs; returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Evaluate { input } => cmd_evaluate(&input),
        Command::Rank { input } => cmd_rank(&input),
    }
}

fn parse_seed(text: &str) -> Result<u64, CliError> {
    if text == "random" {
        return Ok(rand::random());
    }
    text.parse::<u64>()
        .map_err(|_| CliError::Validation(format!("seed must be an integer or `random`, got {text:?}")))
}

fn parse_acceptance(text: &str) -> Result<Acceptance, CliError> {
    if text == "strict" {
        return Ok(Acceptance::Strict);
    }
    if let Some(eps) = text.strip_prefix("threshold=") {
        let eps: f64 = eps
            .parse()
            .map_err(|_| CliError::Validation(format!("bad threshold epsilon {eps:?}")))?;
        if eps < 0.0 {
            return Err(CliError::Validation("threshold epsilon must be >= 0".into()));
        }
        return Ok(Acceptance::Threshold { eps });
    }
    Err(CliError::Validation(format!(
        "acceptance must be `strict` or `threshold=EPS`, got {text:?}"
    )))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::Io(format!("cannot open {}: {e}", path.display())))?;
    parse_edge_list(BufReader::new(file))
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn write_graph(path: &Path, g: &Graph) -> Result<(), CliError> {
    let mut file = File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    file.write_all(serialize_edge_list(g).as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    if args.order < 20 {
        return Err(CliError::Validation(format!(
            "order must be at least 20, got {}",
            args.order
        )));
    }
    if args.degree < 5 {
        return Err(CliError::Validation(format!(
            "degree must be at least 5, got {}",
            args.degree
        )));
    }
    if args.order * args.degree % 2 != 0 {
        eprintln!(
            "warning: order * degree is odd; one node will stay at degree {}",
            args.degree - 1
        );
    }
    let seed = parse_seed(&args.seed)?;
    let start = Instant::now();
    let base = create_base_graph(args.order, args.matching.into())
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let grow_cfg = GrowConfig {
        tie_break: match args.tie_break {
            TieBreakArg::LowestId => TieBreak::LowestId,
            TieBreakArg::Seeded => TieBreak::Seeded,
        },
        recompute_cadence: args.recompute_cadence,
        seed,
        workers: args.workers.max(1),
    };
    let outcome =
        add_edges(&base, args.degree, &grow_cfg).map_err(|e| CliError::Validation(e.to_string()))?;
    for &node in &outcome.deficient {
        eprintln!(
            "warning: node {node} left at degree {} of {}",
            outcome.graph.degree(node),
            args.degree
        );
    }
    write_graph(&args.output, &outcome.graph)?;
    let m = metrics(&outcome.dist).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut report = RunReport::new(args.order, outcome.graph.edge_count(), &m)
        .param("degree", args.degree)
        .param("matching", format!("{:?}", args.matching).to_lowercase())
        .param("tie_break", format!("{:?}", args.tie_break).to_lowercase())
        .param("recompute_cadence", args.recompute_cadence)
        .param("edges_grown", outcome.added_main)
        .param("edges_filled", outcome.added_fill);
    report.seed = Some(seed);
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    print!("{}", report.render());
    Ok(())
}

fn cmd_optimize(args: OptimizeArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    let seed = parse_seed(&args.seed)?;
    let acceptance = parse_acceptance(&args.acceptance)?;
    if args.timeout_secs < 0.0 {
        return Err(CliError::Validation("timeout must be non-negative".into()));
    }
    let cfg = SearchConfig {
        ordering: match args.ordering {
            OrderingArg::SmallestFirst => PairOrdering::SmallestFirst,
            OrderingArg::Triangle => PairOrdering::Triangle,
        },
        acceptance,
        timeout: Duration::from_secs_f64(args.timeout_secs),
        rerank_cadence: args.rerank_cadence.max(1),
        seed,
        worse_window: args.worse_window,
        restart_after: args.restart_after.max(1),
        target_aspl: args.target_aspl,
    };
    let start = Instant::now();
    let (best, history) =
        multiple_2opt(&g, &cfg).map_err(|e| CliError::Validation(e.to_string()))?;
    write_graph(&args.output, &best)?;
    if let Some(path) = &args.history {
        let mut file = File::create(path)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
        file.write_all(history.to_csv().as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let dm = apsp_with_workers(&best, args.workers.max(1));
    let m = metrics(&dm).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut report = RunReport::new(best.order(), best.edge_count(), &m)
        .param("ordering", format!("{:?}", args.ordering).to_lowercase())
        .param("acceptance", &args.acceptance)
        .param("rerank_cadence", args.rerank_cadence)
        .param("timeout_secs", args.timeout_secs)
        .param(
            "swaps_accepted",
            history
                .records
                .iter()
                .filter(|r| r.variant != crate::two_opt::HistoryVariant::Restart)
                .count(),
        )
        .param("evaluations", history.evaluations);
    report.seed = Some(seed);
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    print!("{}", report.render());
    Ok(())
}

fn cmd_evaluate(input: &Path) -> Result<(), CliError> {
    let g = read_graph(input)?;
    let dm = apsp_with_workers(&g, 1);
    let m = metrics(&dm).map_err(|e| CliError::Validation(e.to_string()))?;
    let report = RunReport::new(g.order(), g.edge_count(), &m);
    print!("{}", report.metric_lines());
    Ok(())
}

fn cmd_rank(input: &Path) -> Result<(), CliError> {
    let g = read_graph(input)?;
    let rank = rank_edges(&g).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut out = String::new();
    for (slot, (edge, importance)) in rank.iter().enumerate() {
        out.push_str(&format!("{} {} {importance:.6} {slot}\n", edge.u, edge.v));
    }
    print!("{out}");
    Ok(())
}
