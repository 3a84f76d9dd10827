mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degseq::verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "degseq", version, about = "Exact degree sequence optimization on graphs")]
struct Cli {
    /// Worker threads for parallel sections (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximize a convex function of linear criteria of the degree sequence.
    SolveMulti(SolveMultiArgs),
    /// Maximize a separable objective subject to per-color edge counts.
    SolveColored(SolveColoredArgs),
    /// Write the integer program of a colored instance.
    EmitIp(EmitIpArgs),
    /// Generate an instance file.
    Gen(Box<GenArgs>),
    /// Run a verification suite and report each check.
    Verify(VerifyArgs),
    /// Compute tree-depth and an elimination forest of an instance graph.
    Treedepth(TreedepthArgs),
}

#[derive(Debug, Args)]
struct SolveMultiArgs {
    instance: PathBuf,
    /// Exact number of edges in the subgraph.
    #[arg(long, conflicts_with = "unprescribed", required_unless_present = "unprescribed")]
    m: Option<usize>,
    /// Optimize over subgraphs of any size.
    #[arg(long)]
    unprescribed: bool,
}

#[derive(Debug, Args)]
struct SolveColoredArgs {
    instance: PathBuf,
    /// Elimination forest file (JSON array of 1-based parent labels, 0 for roots).
    #[arg(long, group = "forest_source")]
    forest: Option<PathBuf>,
    /// Use an optimal forest (small graphs only).
    #[arg(long, group = "forest_source")]
    exact_treedepth: bool,
    /// Use the greedy forest. This is the default unless the instance embeds a forest.
    #[arg(long, group = "forest_source")]
    heuristic: bool,
    /// Solve by exhaustive enumeration instead.
    #[arg(long)]
    brute: bool,
}

#[derive(Debug, Args)]
struct EmitIpArgs {
    instance: PathBuf,
    /// Output path; standard output when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    ExactMatching,
    Factor,
    LuFactor,
    Cubic,
    BipartiteCc,
    Subdivision,
    Partition,
    Random,
    RandomBoundedTd,
}

#[derive(Debug, Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of vertices for random graphs.
    #[arg(long)]
    n: Option<usize>,
    /// Maximum forest height for random-bounded-td.
    #[arg(long)]
    d: Option<usize>,
    /// Number of edge colors.
    #[arg(long)]
    p: Option<usize>,
    /// Side size for exact-matching, number of criteria for random.
    #[arg(long)]
    r: Option<usize>,
    /// Edge count for random, edge cap for random-bounded-td.
    #[arg(long)]
    edges: Option<usize>,
    /// Ancestor edge probability for random-bounded-td.
    #[arg(long)]
    density: Option<f64>,
    /// Edge count for the subdivision gadget.
    #[arg(long)]
    m: Option<usize>,
    /// Comma-separated integers for partition.
    #[arg(long, value_delimiter = ',')]
    values: Vec<i64>,
    /// Comma-separated allowed degrees for factor.
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<usize>,
    /// Lower degree bound for lu-factor.
    #[arg(long)]
    lower: Option<usize>,
    /// Upper degree bound for lu-factor, clipped to each vertex degree.
    #[arg(long)]
    upper: Option<usize>,
    #[command(flatten)]
    graph: GraphArgs,
    /// Output path; standard output when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct GraphArgs {
    /// Complete graph on N vertices.
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Path on N vertices.
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// Cycle on N vertices.
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    /// Star with N leaves.
    #[arg(long, value_name = "N")]
    star: Option<usize>,
    /// Take the graph of an existing instance file.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// small-multi, small-colored, ip-equivalence, treedepth or gadgets.
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = degseq::verify::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Args)]
struct TreedepthArgs {
    instance: PathBuf,
    /// Report the greedy forest instead of an optimal one.
    #[arg(long)]
    heuristic: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_: degseq::Error| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite; expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(cli.command, &argv) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
