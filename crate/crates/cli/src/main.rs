//! Batch front end for the tournament decomposition toolkit.
//!
//! Exit codes: 0 ok, 2 usage/input error, 3 infeasible (strict
//! preconditions or oracle budgets), 4 not-found (a search legitimately
//! exhausted), 5 verification failure (an internal bug).

mod commands;
mod format;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "tourpow", version, about = "Tournament path/cycle power decomposition")]
pub(crate) struct Cli {
    #[command(subcommand)]
    pub(crate) command: Command,
}

#[derive(Subcommand)]
pub(crate) enum Command {
    /// Generate a tournament file.
    Gen(GenArgs),
    /// Analyze a tournament: intransitivity, max transitive set, median stats.
    Analyze(AnalyzeArgs),
    /// Run a pipeline task and write a certificate.
    Run(RunArgs),
    /// Verify a certificate against a tournament.
    Verify(VerifyArgs),
    /// Run a task over a range of seeds and aggregate.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum GenKind {
    Transitive,
    Random,
    Reversal,
    Blowup,
    Paley,
    NoTt,
}

#[derive(Args)]
pub(crate) struct GenArgs {
    /// Generator family.
    #[arg(long = "type", value_enum)]
    pub(crate) kind: GenKind,
    /// Vertex count (transitive, random, reversal).
    #[arg(long)]
    pub(crate) n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub(crate) seed: u64,
    /// Reversal probability for --type reversal.
    #[arg(long)]
    pub(crate) p: Option<f64>,
    /// Prime q = 3 (mod 4) for --type paley.
    #[arg(long)]
    pub(crate) q: Option<usize>,
    /// Forbidden transitive size for --type no-tt.
    #[arg(long)]
    pub(crate) k: Option<usize>,
    /// Blow-up shape, e.g. 3x7 for three blocks of seven vertices.
    #[arg(long)]
    pub(crate) blocks: Option<String>,
    /// Inner generator for blow-up blocks.
    #[arg(long, value_enum, default_value_t = InnerKind::Transitive)]
    pub(crate) inner: InnerKind,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub(crate) out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum InnerKind {
    Transitive,
    Random,
    Paley,
}

#[derive(Args)]
pub(crate) struct AnalyzeArgs {
    pub(crate) file: String,
    /// Exact-ordering oracle budget (largest n for the subset DP).
    #[arg(long, default_value_t = 18)]
    pub(crate) budget: usize,
    #[arg(long, default_value_t = 0)]
    pub(crate) seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum Task {
    PathPower,
    Partition,
    CyclePower,
    Absorber,
}

#[derive(Clone, Copy, ValueEnum)]
pub(crate) enum ModeArg {
    Strict,
    Opportunistic,
}

#[derive(Args)]
pub(crate) struct RunArgs {
    #[arg(value_enum)]
    pub(crate) task: Task,
    pub(crate) file: String,
    #[arg(long, default_value_t = 1)]
    pub(crate) k: usize,
    /// Intransitivity parameter as a rational like 1/9, or `auto`.
    #[arg(long, default_value = "auto")]
    pub(crate) eps: String,
    #[arg(long, default_value_t = 0)]
    pub(crate) seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Opportunistic)]
    pub(crate) mode: ModeArg,
    /// Interval block size m.
    #[arg(long)]
    pub(crate) m: Option<usize>,
    #[arg(long, default_value_t = 80)]
    pub(crate) stride: usize,
    #[arg(long, default_value_t = 20)]
    pub(crate) retries: usize,
    /// Exact-ordering oracle budget.
    #[arg(long, default_value_t = 18)]
    pub(crate) budget: usize,
    /// Target length for path-power search (defaults to n).
    #[arg(long)]
    pub(crate) target_len: Option<usize>,
    /// Certificate output file.
    #[arg(long)]
    pub(crate) out: Option<String>,
    /// Stats output file (stderr when omitted).
    #[arg(long)]
    pub(crate) stats: Option<String>,
}

#[derive(Args)]
pub(crate) struct VerifyArgs {
    pub(crate) file: String,
    pub(crate) certificate: String,
}

#[derive(Args)]
pub(crate) struct SweepArgs {
    /// Generator family to sweep over.
    #[arg(long = "type", value_enum)]
    pub(crate) kind: GenKind,
    #[arg(long)]
    pub(crate) n: usize,
    #[arg(long, default_value_t = 100)]
    pub(crate) seeds: u64,
    #[arg(long)]
    pub(crate) p: Option<f64>,
    /// Exact-ordering oracle budget.
    #[arg(long, default_value_t = 18)]
    pub(crate) budget: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Analyze(args) => commands::analyze(args),
        Command::Run(args) => commands::run(args),
        Command::Verify(args) => commands::verify(args),
        Command::Sweep(args) => commands::sweep(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
