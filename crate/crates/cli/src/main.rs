//! `ers`: solve positions with the partial-depth search, run sweeps, and
//! inspect move generation, evaluation and entropy.
//!
//! Exit status is 0 on success or a solved search, 2 when a search or mate
//! proof completes without a mate, and 1 on any error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use ers_core::board::notation::{descriptive_line, numbered, san_line};
use ers_core::board::{generate_legal_moves, perft, play, Position};
use ers_core::entropy::{EntropyModel, MoveCategory};
use ers_core::experiments::{
    emit_csv, emit_plot_series, run_sweep, write_csv, ExperimentConfig, PositionRegistry,
};
use ers_core::oracle::certify_mate;
use ers_core::search::{ers_search, evaluate, SchedulerKind, SearchParams, DEFAULT_MATE_SCORE};

#[derive(Parser)]
#[command(name = "ers", version, about = "Partial-depth alpha-beta search driven by move information gain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search a position and report whether a forced mate was found.
    Solve {
        /// Registry id, FEN or EPD.
        position: String,
        #[arg(long, default_value = "continuous")]
        scheduler: SchedulerKind,
        #[arg(long, default_value_t = 1.0)]
        divisor: f64,
        #[arg(long, default_value_t = 16.0)]
        budget: f64,
        #[arg(long, default_value_t = 6.0)]
        step: f64,
        /// Hard cap on plies from the root (default 3*ceil(budget/step)+8).
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Also print the principal variation in descriptive notation.
        #[arg(long)]
        descriptive: bool,
    },
    /// Run a sweep from a config file and write the results table.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for the four plot series.
        #[arg(long)]
        plots: Option<PathBuf>,
    },
    /// Count leaf nodes of the legal move tree.
    Perft {
        position: String,
        depth: u32,
        /// Print the count below each root move.
        #[arg(long)]
        divide: bool,
    },
    /// Static material evaluation for the side to move.
    Eval { position: String },
    /// Position entropy and the fractional ply of each move category.
    Entropy {
        position: String,
        /// Entropy model file of `key = value` lines.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Prove or refute a forced mate within a number of plies.
    Certify { position: String, plies: u32 },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn outcome(success: bool) -> ExitCode {
    if success {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

/// Registry ids resolve to their entry; a combination is certified first
/// when `certify` is set. Anything else is parsed as FEN, then EPD.
fn resolve(arg: &str, certify: bool) -> Result<Position> {
    let builtin = PositionRegistry::builtin();
    if let Some(entry) = builtin.get(arg.trim()) {
        if certify && entry.mate_plies.is_some() {
            let registry = PositionRegistry::certified()?;
            return Ok(registry.resolve(arg)?);
        }
        return Ok(entry.position().clone());
    }
    builtin
        .resolve(arg)
        .with_context(|| format!("cannot read position '{arg}'"))
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve {
            position,
            scheduler,
            divisor,
            budget,
            step,
            cap,
            node_limit,
            descriptive,
        } => {
            let p = resolve(&position, true)?;
            let mut params = SearchParams::new(scheduler, budget).with_step(step).with_divisor(divisor);
            params.hard_ply_cap = cap;
            params.node_limit = node_limit;
            let r = ers_search(&p, &params)?;
            let pv = &r.principal_variation;
            println!("value: {}", r.value);
            println!("solved: {}", r.solved);
            println!("pv: {}", numbered(&p, &san_line(&p, pv)));
            if descriptive {
                println!("pv_descriptive: {}", numbered(&p, &descriptive_line(&p, pv)));
            }
            println!("nodes: {}", r.stats.nodes);
            println!("cutoffs: {}", r.stats.cutoffs);
            println!("max_ply: {}", r.stats.max_ply_reached);
            println!("aborted: {}", r.stats.aborted);
            Ok(outcome(r.solved))
        }
        Command::Sweep { config, out, plots } => {
            let cfg = ExperimentConfig::load(&config)
                .with_context(|| format!("reading config {}", config.display()))?;
            let rows = run_sweep(&cfg)?;
            match &out {
                Some(path) => {
                    write_csv(&rows, path).with_context(|| format!("writing {}", path.display()))?;
                    println!("rows: {}", rows.len());
                    println!("solved: {}", rows.iter().filter(|r| r.solved).count());
                    println!("csv: {}", path.display());
                }
                None => emit_csv(&rows, &mut std::io::stdout().lock())?,
            }
            if let Some(dir) = plots {
                for path in emit_plot_series(&rows, &dir).with_context(|| format!("writing {}", dir.display()))? {
                    if out.is_some() {
                        println!("series: {}", path.display());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Perft { position, depth, divide } => {
            if depth > 8 {
                bail!("perft depth {depth} is too large (at most 8)");
            }
            let p = resolve(&position, false)?;
            if divide && depth > 0 {
                let mut total = 0;
                for m in generate_legal_moves(&p) {
                    let n = perft(&play(&p, &m), depth - 1);
                    println!("{}: {n}", m.uci());
                    total += n;
                }
                println!("perft: {total}");
            } else {
                println!("perft: {}", perft(&p, depth));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { position } => {
            let p = resolve(&position, false)?;
            println!("eval: {}", evaluate(&p, DEFAULT_MATE_SCORE));
            Ok(ExitCode::SUCCESS)
        }
        Command::Entropy { position, model } => {
            let p = resolve(&position, false)?;
            let model = match model {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    EntropyModel::from_config(&text).with_context(|| format!("parsing {}", path.display()))?
                }
                None => EntropyModel::default(),
            };
            println!("entropy_bits: {:.6}", model.position_entropy(&p));
            for c in MoveCategory::ALL {
                println!("fractional_ply.{}: {:.6}", c.name(), model.fractional_ply(c));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { position, plies } => {
            if plies > 15 {
                bail!("mate proofs are limited to 15 plies, got {plies}");
            }
            let p = resolve(&position, false)?;
            let mate = certify_mate(&p, plies);
            println!("mate_within_{plies}: {mate}");
            Ok(outcome(mate))
        }
    }
}
