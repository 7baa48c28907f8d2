//! `burnkit`: exact burning numbers, bounds, tree predicates and campaigns
//! from the command line. Every command prints one JSON report.

mod commands;
mod config;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use burnkit::graph::GraphFormat;
use burnkit::report::Report;
use clap::{Args, Parser, Subcommand};

use config::Config;

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_TETHER: u8 = 4;
pub const EXIT_COUNTEREXAMPLE: u8 = 5;
pub const EXIT_RESUME: u8 = 6;

#[derive(Parser)]
#[command(name = "burnkit", version, about = "Graph burning verification workbench")]
struct Cli {
    /// TOML or JSON file with defaults for any flag; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Also write the report (and campaign checkpoints) into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact burning number with a witness schedule.
    Exact(ExactArgs),
    /// Upper bound from a packing certificate or a tethering.
    Bound(BoundArgs),
    /// Degree-profile predicates for a tree or a degree histogram.
    Tree(TreeArgs),
    /// Exhaustive, checkpointed sweep over a tree family.
    Campaign(CampaignArgs),
    /// Recheck a burning schedule against a graph.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct GraphArgs {
    /// Graph file; the format defaults to graph6 for .g6 files and edge list otherwise.
    pub input: Option<PathBuf>,
    #[arg(long, value_name = "graph6|edgelist")]
    pub format: Option<GraphFormat>,
}

#[derive(Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Give up (exit 3) if the burning number exceeds K.
    #[arg(long, value_name = "K")]
    pub budget: Option<usize>,
    #[arg(long, value_name = "NAME")]
    pub solver: Option<String>,
}

#[derive(Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_name = "pack|tether")]
    pub method: Option<String>,
    /// Tethering as {"pieces": [...]}, JSON or TOML.
    #[arg(long, value_name = "FILE")]
    pub tether: Option<PathBuf>,
    /// Minimum degree for the triangle-free tethering preset.
    #[arg(long)]
    pub d: Option<u32>,
    /// Vertex count when no graph is given.
    #[arg(long)]
    pub n: Option<u64>,
    /// Slope of a linear tethering, as an integer or a fraction `a/b`.
    #[arg(long, value_name = "H")]
    pub linear_h: Option<String>,
}

#[derive(Args)]
pub struct TreeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Degree histogram `degree:count,...` instead of a tree file.
    #[arg(long, value_name = "K:COUNT,...")]
    pub histogram: Option<String>,
    /// Family degree for the minimum-degree criterion (default: the tree's least non-leaf degree).
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Args)]
pub struct CampaignArgs {
    /// Campaign spec, JSON or TOML; flags override its fields.
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Least degree allowed on a non-leaf vertex.
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, value_delimiter = ',', value_name = "NAME,...")]
    pub checks: Option<Vec<String>>,
    #[arg(long, value_name = "TREES")]
    pub checkpoint_interval: Option<u64>,
    /// Continue from a checkpoint written by an earlier run of the same spec.
    #[arg(long, value_name = "FILE")]
    pub resume: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    pub jobs: Option<usize>,
    /// Stop after this many checkpoints, leaving a resumable state.
    #[arg(long, value_name = "COUNT")]
    pub stop_after: Option<u64>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Source labels in lighting order.
    #[arg(long, value_name = "V,...")]
    pub sources: Option<String>,
}

/// An error together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Failure::new(EXIT_PARSE, message)
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Failure::new(EXIT_INVALID, format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// A finished command: its report and the exit code to leave with.
pub struct Outcome {
    pub report: Report,
    pub code: u8,
}

pub struct Context {
    pub config: Config,
    pub out: Option<PathBuf>,
    pub argv: Vec<String>,
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let config = Config::load(cli.config.as_deref())?;
    let out = cli.out.or_else(|| config.out.clone());
    let ctx = Context { config, out, argv: std::env::args().skip(1).collect() };
    let outcome = match cli.command {
        Command::Exact(args) => commands::exact(&ctx, args),
        Command::Bound(args) => commands::bound(&ctx, args),
        Command::Tree(args) => commands::tree(&ctx, args),
        Command::Campaign(args) => commands::campaign(&ctx, args),
        Command::Verify(args) => commands::verify(&ctx, args),
    }?;
    let json = outcome.report.to_json();
    if let Some(dir) = &ctx.out {
        std::fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
        let path = dir.join("report.json");
        burnkit::campaign::write_atomic(&path, json.as_bytes()).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
    }
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout().lock(), "{json}");
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.code),
        Err(failure) => {
            eprintln!("burnkit: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
