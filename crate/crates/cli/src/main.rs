mod bench;
mod commands;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qq_core::Strategy;

use crate::failure::Failure;

/// Noisy Clifford circuit simulation on qudits.
///
/// Exit codes: 0 success, 1 runtime error, 2 invalid circuit or arguments,
/// 3 unsupported backend/dimension combination.
#[derive(Parser, Debug)]
#[command(name = "qq", version)]
struct Cli {
    /// Master seed; every shot derives its own stream from it.
    #[arg(long, global = true, env = "QQ_SEED", default_value_t = 0)]
    seed: u64,

    /// Worker threads for shot loops (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one shot and print the tableau before and after measurement.
    Run(RunArgs),
    /// Sample many shots of the measurement outcomes.
    Sample(SampleArgs),
    /// Estimate the survival probability of a gate-plus-noise circuit.
    Fidelity(FidelityArgs),
    /// Time frame propagation and noise pushing on random circuits.
    Bench(bench::BenchArgs),
    /// Print the circuit as ASCII art.
    Draw(InputArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Circuit file ("-" reads stdin).
    #[arg(long, short, required_unless_present = "circuit", conflicts_with = "circuit")]
    pub input: Option<PathBuf>,

    /// Inline circuit text; ';' separates lines.
    #[arg(long)]
    pub circuit: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Tableau,
    Dense,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyArg {
    Direct,
    Frames,
    Push,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Direct => Strategy::Direct,
            StrategyArg::Frames => Strategy::Frames,
            StrategyArg::Push => Strategy::Push,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Push,
    Frames,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum, default_value_t = Backend::Tableau)]
    pub backend: Backend,

    /// Outcomes for random measurements, used in order before the RNG.
    #[arg(long, value_delimiter = ',')]
    pub replay: Vec<u32>,

    /// Also print the tableau with the measured qudits removed.
    #[arg(long)]
    pub reduce: bool,

    /// Print the circuit before the tableaus.
    #[arg(long)]
    pub draw: bool,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 1000)]
    pub shots: u64,

    #[arg(long, value_enum, default_value_t = StrategyArg::Direct)]
    pub strategy: StrategyArg,

    #[arg(long, value_enum, default_value_t = Backend::Tableau)]
    pub backend: Backend,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct FidelityArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum, default_value_t = Method::Push)]
    pub method: Method,

    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 10_000)]
    pub shots: u64,

    /// Rescale every noise site to each p in `p0:p1:steps` (endpoints included).
    #[arg(long, value_parser = commands::parse_sweep)]
    pub sweep: Option<commands::Sweep>,

    /// `dense` computes the exact survival probability instead of sampling.
    #[arg(long, value_enum, default_value_t = Backend::Tableau)]
    pub backend: Backend,
}

fn execute(cli: Cli) -> Result<String, Failure> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build_global()
            .map_err(|e| Failure::runtime(e.to_string()))?;
    }
    match cli.command {
        Command::Run(a) => commands::run(&a, cli.seed),
        Command::Sample(a) => commands::sample(&a, cli.seed),
        Command::Fidelity(a) => commands::fidelity(&a, cli.seed),
        Command::Bench(a) => bench::bench(&a, cli.seed),
        Command::Draw(a) => Ok(commands::load(&a)?.render_ascii()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = execute(cli).and_then(|text| match &out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::runtime(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
