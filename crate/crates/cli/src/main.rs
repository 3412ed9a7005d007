//! `weylfan`: lattice points, normality, quadraticity and diagonal
//! splitting for Weyl-fan polytopes from the command line.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weylfan::numbers_game::{Mode, Strategy, DEFAULT_MAX_STEPS};
use weylfan::quadraticity::DEFAULT_FIBER_CAP;
use weylfan::verify::DEFAULT_SEED;
use weylfan::Family;

use commands::{GameArgs, QuadraticArgs};
use report::{usage, CliError, RunReport};

#[derive(Parser)]
#[command(name = "weylfan", version, about, arg_required_else_help = true)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock time in JSON reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SystemArgs {
    /// Dynkin type: A, B, C, D, E, F or G.
    #[arg(long = "type")]
    family: Family,
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan matrix, roots and Weyl group order.
    Info(SystemArgs),
    /// Lattice points of a polytope.
    Lambda {
        #[arg(long)]
        polytope: PathBuf,
        /// Dilate the polytope by this factor first.
        #[arg(long, default_value_t = 1)]
        dilate: i64,
        #[arg(long)]
        count_only: bool,
        /// Write the (dilated) polytope back out as a spec file.
        #[arg(long)]
        emit_spec: Option<PathBuf>,
    },
    /// Write a lattice point of P_1 + ... + P_m as a sum of lattice points.
    Decompose {
        #[arg(long, num_args = 1.., required = true)]
        polytopes: Vec<PathBuf>,
        /// Target point in weight coordinates, e.g. 0,1.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Play the numbers game.
    Game {
        #[command(flatten)]
        system: SystemArgs,
        /// Starting amplitudes, e.g. -1,0,-1.
        #[arg(long, allow_hyphen_values = true)]
        config: String,
        #[arg(long, value_enum, default_value_t = GameMode::Cutoff)]
        mode: GameMode,
        #[arg(long, value_enum, default_value_t = GameStrategy::MinIndex)]
        strategy: GameStrategy,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Property checks.
    #[command(subcommand)]
    Check(Check),
    /// Degree-two relations among lattice points of a polytope.
    Relations {
        #[arg(long)]
        polytope: PathBuf,
        /// Only relations along a spanning tree of each fiber.
        #[arg(long)]
        spanning_tree: bool,
    },
    /// Split verdicts for the standard list of root systems.
    DiagonalSplitTable {
        #[arg(long, default_value_t = 7)]
        q_max: i64,
    },
    /// Run the full acceptance suite.
    VerifyAll {
        #[arg(long)]
        seed: Option<u64>,
        /// Random polytopes per root system.
        #[arg(long, default_value_t = 25)]
        per_system: usize,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Every lattice point of the sum decomposes.
    Normality {
        #[arg(long, num_args = 1.., required = true)]
        polytopes: Vec<PathBuf>,
        /// Use each polytope this many times.
        #[arg(long, default_value_t = 1)]
        dilate: usize,
        /// Confirm each target by exhaustive search as well.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Fibers of the addition map are connected by root moves.
    Quadratic {
        #[arg(long, num_args = 1.., required = true)]
        polytopes: Vec<PathBuf>,
        /// Only the fiber over this sum.
        #[arg(long, allow_hyphen_values = true)]
        sum: Option<String>,
        /// Only moves between consecutive entries.
        #[arg(long)]
        adjacent_only: bool,
        /// Only winning sums and tuples of winning points.
        #[arg(long)]
        winning: bool,
        /// Skip fibers with more tuples than this.
        #[arg(long, default_value_t = DEFAULT_FIBER_CAP)]
        cap: usize,
    },
    /// Exhaustive diagonal-splitting search.
    DiagonalSplit {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        q: i64,
        /// List one interior point per residue class.
        #[arg(long)]
        witnesses: bool,
        /// Fail (exit 1) unless the polytopes split.
        #[arg(long)]
        assert: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GameMode {
    Cutoff,
    Plain,
    MinusOne,
}

#[derive(Clone, Copy, ValueEnum)]
enum GameStrategy {
    MinIndex,
    Random,
}

fn run(cli: &Cli) -> Result<report::Finished, CliError> {
    let json = cli.format == Format::Json;
    let need_seed = |seed: Option<u64>| -> Result<u64, CliError> {
        match seed {
            Some(s) => Ok(s),
            None if json => Err(usage("--seed is required for randomized commands with --format json")),
            None => Ok(DEFAULT_SEED),
        }
    };
    match &cli.command {
        Command::Info(s) => commands::info(s.family, s.rank),
        Command::Lambda {
            polytope,
            dilate,
            count_only,
            emit_spec,
        } => commands::lambda(polytope, *dilate, *count_only, emit_spec.as_deref()),
        Command::Decompose { polytopes, z } => commands::decompose(polytopes, z),
        Command::Game {
            system,
            config,
            mode,
            strategy,
            seed,
            max_steps,
        } => {
            let strategy = match strategy {
                GameStrategy::MinIndex => Strategy::MinIndex,
                GameStrategy::Random => Strategy::Random(need_seed(*seed)?),
            };
            commands::game(GameArgs {
                family: system.family,
                rank: system.rank,
                config,
                mode: match mode {
                    GameMode::Cutoff => Mode::Cutoff,
                    GameMode::Plain => Mode::Plain,
                    GameMode::MinusOne => Mode::FireOnlyMinusOne,
                },
                strategy,
                max_steps: *max_steps,
            })
        }
        Command::Check(Check::Normality {
            polytopes,
            dilate,
            exhaustive,
        }) => commands::check_normality_cmd(polytopes, *dilate, *exhaustive),
        Command::Check(Check::Quadratic {
            polytopes,
            sum,
            adjacent_only,
            winning,
            cap,
        }) => commands::check_quadratic(QuadraticArgs {
            paths: polytopes,
            sum: sum.as_deref(),
            adjacent_only: *adjacent_only,
            winning: *winning,
            cap: *cap,
        }),
        Command::Check(Check::DiagonalSplit {
            system,
            q,
            witnesses,
            assert,
        }) => commands::check_diagonal_split(system.family, system.rank, *q, *witnesses, *assert),
        Command::Relations {
            polytope,
            spanning_tree,
        } => commands::relations(polytope, *spanning_tree),
        Command::DiagonalSplitTable { q_max } => commands::diagonal_split_table(*q_max),
        Command::VerifyAll { seed, per_system } => commands::verify_all(need_seed(*seed)?, *per_system),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let done = match run(&cli) {
        Ok(d) => d,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let passed = done.passed;
    let out = match cli.format {
        Format::Text => done.text,
        Format::Json => {
            let seconds = cli.timing.then(|| start.elapsed().as_secs_f64());
            let report = RunReport::new(std::env::args().skip(1).collect(), done, seconds);
            serde_json::to_string_pretty(&report).expect("reports serialize")
        }
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
