//! `spdiff`: experiments on single-peaked opinion diffusion.
//!
//! Exit codes: 0 when every checked law or expectation held, 1 when a
//! refutation or violation was found, 2 on usage or capacity errors.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use config::FileConfig;
use report::Artifact;

#[derive(Parser, Debug)]
#[command(name = "spdiff", version, about = "Single-peaked opinion diffusion experiments")]
struct Cli {
    /// Flat TOML file with defaults for any flag (keys use `_` for `-`).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Root directory for run reports; each run gets a new subdirectory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Print the JSON result instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the single-peaked rankings of an axis with their thresholds.
    Enumerate(EnumerateArgs),
    /// Evaluate voting rules on a profile file.
    Rules(RulesArgs),
    /// Search all single-peaked profiles for a property violation.
    Check(CheckArgs),
    /// Rule x property matrix over a searched space.
    Table1(Table1Args),
    /// Run the diffusion process on a network.
    Diffuse(DiffuseArgs),
    /// Spread an extreme opinion with the greedy schedule.
    Spread(SpreadArgs),
    /// Write a random single-peaked profile or network.
    Generate(GenerateArgs),
}

#[derive(Args, Debug, Default)]
pub struct EnumerateArgs {
    /// Number of candidates on the canonical axis a > b > ...
    #[arg(long)]
    pub m: Option<usize>,
    /// Explicit axis, e.g. "left > centre > right".
    #[arg(long)]
    pub axis: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct RulesArgs {
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,
    /// A rule selector or `all`.
    #[arg(long)]
    pub rule: Option<String>,
    /// Current opinion for the tie-break, e.g. "b > a > c".
    #[arg(long)]
    pub current: Option<String>,
    /// Winner rankings listed per rule.
    #[arg(long)]
    pub max_winners: Option<usize>,
}

#[derive(Args, Debug, Default)]
pub struct CheckArgs {
    #[arg(long)]
    pub rule: Option<String>,
    /// cwc | clc | spp | emc | maj
    #[arg(long)]
    pub property: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Also run the fixed counterexample profiles.
    #[arg(long)]
    pub paper_witnesses: bool,
}

#[derive(Args, Debug, Default)]
pub struct Table1Args {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Include the fixed counterexample profiles.
    #[arg(long)]
    pub paper_witnesses: bool,
}

#[derive(Args, Debug, Default, Clone)]
pub struct NetSource {
    /// Network file; otherwise one is generated from --m, --n, --graph, --seed.
    #[arg(long, value_name = "FILE")]
    pub net: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// path | cycle | star | complete | gnp:P
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Default)]
pub struct DiffuseArgs {
    #[command(flatten)]
    pub source: NetSource,
    #[arg(long)]
    pub rule: Option<String>,
    /// round-robin | random | explicit
    #[arg(long)]
    pub scheduler: Option<String>,
    /// Voter ids for the explicit scheduler, comma separated.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub max_steps: Option<usize>,
}

#[derive(Args, Debug, Default)]
pub struct SpreadArgs {
    #[command(flatten)]
    pub source: NetSource,
    #[arg(long)]
    pub rule: Option<String>,
    /// up | down
    #[arg(long)]
    pub target: Option<String>,
    /// Compare with the exhaustive search (small networks only).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub oracle_max_states: Option<usize>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Network sizes for a sweep of generated networks, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub sweep: Option<Vec<usize>>,
    /// Seeds per sweep size.
    #[arg(long)]
    pub seeds: Option<u64>,
}

#[derive(Args, Debug, Default)]
pub struct GenerateArgs {
    /// profile | network
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file (must not exist); stdout otherwise.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(spdiff_core::Error),
    Io(std::io::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(spdiff_core::Error::LawViolation(_)) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<spdiff_core::Error> for Failure {
    fn from(e: spdiff_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// What a finished command hands back for printing and the run directory.
pub struct Outcome {
    pub config: Value,
    pub body: Value,
    pub summary: String,
    pub exit_code: u8,
    pub artifacts: Vec<Artifact>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let file = match cli.config.as_deref().map(FileConfig::load).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(e) => {
            eprintln!("spdiff: {e}");
            return ExitCode::from(2);
        }
    };
    let out_root = cli.out.clone().or_else(|| file.out.clone());
    let name = match &cli.command {
        Command::Enumerate(_) => "enumerate",
        Command::Rules(_) => "rules",
        Command::Check(_) => "check",
        Command::Table1(_) => "table1",
        Command::Diffuse(_) => "diffuse",
        Command::Spread(_) => "spread",
        Command::Generate(_) => "generate",
    };
    let result = match cli.command {
        Command::Enumerate(a) => commands::enumerate(a, &file),
        Command::Rules(a) => commands::rules(a, &file),
        Command::Check(a) => commands::check(a, &file),
        Command::Table1(a) => commands::table1(a, &file),
        Command::Diffuse(a) => commands::diffuse(a, &file),
        Command::Spread(a) => commands::spread(a, &file),
        Command::Generate(a) => commands::generate(a, &file),
    };
    let (config, body, code, artifacts) = match result {
        Ok(o) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&o.body).expect("json values serialize"));
            } else {
                print!("{}", o.summary);
            }
            (o.config, o.body, o.exit_code, o.artifacts)
        }
        Err(e) => {
            eprintln!("spdiff: {e}");
            let code = e.exit_code();
            (Value::Null, json!({ "error": e.to_string() }), code, Vec::new())
        }
    };
    if let Some(root) = out_root {
        match report::write_run(&root, name, &config, &body, code, started.elapsed(), &artifacts) {
            Ok(dir) => eprintln!("report: {}", dir.display()),
            Err(e) => {
                eprintln!("spdiff: writing report: {e}");
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::from(code)
}
