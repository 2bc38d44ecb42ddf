use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mpg_core::Algorithm;
use num_bigint::BigInt;

mod bench;
mod check;
mod error;
mod files;
mod record;
mod solve;

#[derive(Parser)]
#[command(name = "mpg", version, about = "Mean-payoff game solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game and print `<id> <0|1>` per position (0: Max wins).
    Solve(SolveArgs),
    /// Write a seeded random game.
    Generate(GenerateArgs),
    /// Convert a parity game into a mean-payoff game.
    Convert(ConvertArgs),
    /// Validate a game and, optionally, a measure file against it.
    Check(CheckArgs),
    /// Run solvers over a directory or a built-in suite and write CSV.
    Bench(BenchArgs),
    /// Check that all finished runs in a bench CSV agree on the winners.
    Agree(AgreeArgs),
}

#[derive(clap::Args)]
pub struct SolveArgs {
    #[arg(long, default_value = "qdpm", value_parser = parse_algo)]
    pub algo: Algorithm,
    #[arg(long)]
    pub input: PathBuf,
    /// Solve for mean payoff greater than this value instead of 0.
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<BigInt>,
    /// Emit stats JSON: to stderr without a value, else to the given file.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    pub stats: Option<Option<PathBuf>>,
    /// Write every lift event as `<step> <id> <old> <new>`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write the final measure, and for qdpm its strategy, in the format
    /// read by `check --solution`.
    #[arg(long)]
    pub measure: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_outdeg: usize,
    #[arg(long, default_value_t = -15000, allow_hyphen_values = true)]
    pub weight_lo: i64,
    #[arg(long, default_value_t = 15000, allow_hyphen_values = true)]
    pub weight_hi: i64,
    /// Probability that a position belongs to Max.
    #[arg(long, default_value_t = 0.5)]
    pub owner_ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SourceFormat {
    Parity,
}

#[derive(clap::Args)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub from: SourceFormat,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub solution: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Random,
    Fig1,
    Sim,
}

#[derive(clap::Args)]
pub struct BenchArgs {
    /// Every `.mpg` and `.pg` file in this directory is one instance.
    #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
    pub dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long, value_delimiter = ',', default_value = "qdpm,brim", value_parser = parse_algo)]
    pub algos: Vec<Algorithm>,
    /// Per-run limit in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub timeout: f64,
    /// Output file; stdout if omitted.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Positions per game in the random suite.
    #[arg(long, default_value_t = 5000)]
    pub n: usize,
    /// Out-degree clusters of the random suite.
    #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
    pub degrees: Vec<usize>,
    /// Games per cluster in the random suite.
    #[arg(long, default_value_t = 20)]
    pub count: u64,
    /// First seed of the random suite.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(clap::Args)]
pub struct AgreeArgs {
    #[arg(long)]
    pub csv: PathBuf,
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve::run(&a),
        Command::Generate(a) => solve::generate(&a),
        Command::Convert(a) => solve::convert(&a),
        Command::Check(a) => check::run(&a),
        Command::Bench(a) => bench::run(&a),
        Command::Agree(a) => bench::agree(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
