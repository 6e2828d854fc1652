//! `phivar`: run the totient-variance experiments from the command line.
//!
//! Exit status: 0 success, 1 I/O failure, 2 bad arguments or config,
//! 3 an embedded check failed, 4 a resource bound was exceeded.

mod commands;
mod config;
mod golden;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::{AssumptionArgs, CharsumArgs, FfVarianceArgs, IntLemmasArgs, IntVarianceArgs, Outcome, RhArgs};
use config::ConfigCommand;
use output::{write_output, Emit};

/// An embedded check failed.
#[derive(Debug)]
pub struct AssertionFailed(pub String);

impl fmt::Display for AssertionFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for AssertionFailed {}

/// Unusable configuration.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Parser)]
#[command(name = "phivar", version, about = "Variance of φ(n)/n in short intervals, over Z and F_q[T]")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "PHIVAR_WORKERS", default_value_t = 0)]
    workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Csv)]
    emit: Emit,
    /// Output file (stdout if omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Running variance estimates of R_0(x;H) at geometric checkpoints.
    IntVariance(IntVarianceArgs),
    /// Exact identities behind the integer constants.
    IntLemmas(IntLemmasArgs),
    /// Joint residue frequencies of ⌊x^δ⌋ mod m and x mod n.
    AssumptionTest(AssumptionArgs),
    /// Var(N_β) over F_q[T], by enumeration and by the character formula.
    FfVariance(FfVarianceArgs),
    /// Direct character sums against their L-function expressions.
    FfCharsumCheck(CharsumArgs),
    /// |α_j| = √q for the L-functions of even characters mod T^m.
    FfRhCheck(RhArgs),
    /// Record or verify the regression goldens.
    Golden {
        #[arg(long)]
        path: PathBuf,
        /// Overwrite an existing golden file.
        #[arg(long)]
        update: bool,
        #[arg(long, hide = true, default_value_t = 0.0)]
        perturb_formula: f64,
    },
    /// Run an experiment described by a TOML file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn dispatch(cmd: &ConfigCommand) -> Result<Outcome> {
    match cmd {
        ConfigCommand::IntVariance(a) => commands::int_variance(a),
        ConfigCommand::IntLemmas(a) => commands::int_lemmas(a),
        ConfigCommand::AssumptionTest(a) => commands::assumption_test(a),
        ConfigCommand::FfVariance(a) => commands::ff_variance(a),
        ConfigCommand::FfCharsumCheck(a) => commands::ff_charsum_check(a),
        ConfigCommand::FfRhCheck(a) => commands::ff_rh_check(a),
    }
}

fn emit_outcome(outcome: Outcome, emit: Emit, out: Option<&std::path::Path>) -> Result<()> {
    write_output(out, &outcome.table.render(emit))?;
    if outcome.failures.is_empty() {
        Ok(())
    } else {
        Err(AssertionFailed(outcome.failures.join("\n")).into())
    }
}

fn run(cli: Cli) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build_global()
        .context("starting the worker pool")?;
    let cmd = match cli.command {
        Command::IntVariance(a) => ConfigCommand::IntVariance(a),
        Command::IntLemmas(a) => ConfigCommand::IntLemmas(a),
        Command::AssumptionTest(a) => ConfigCommand::AssumptionTest(a),
        Command::FfVariance(a) => ConfigCommand::FfVariance(a),
        Command::FfCharsumCheck(a) => ConfigCommand::FfCharsumCheck(a),
        Command::FfRhCheck(a) => ConfigCommand::FfRhCheck(a),
        Command::Golden {
            path,
            update,
            perturb_formula,
        } => {
            let msg = match golden::run(&path, update, perturb_formula)? {
                golden::GoldenAction::Created => "created",
                golden::GoldenAction::Updated => "updated",
                golden::GoldenAction::Verified => "verified",
            };
            eprintln!("goldens {msg}: {}", path.display());
            return Ok(());
        }
        Command::Run { config } => {
            let cfg = config::load(&config)?;
            let out = cfg.out.or(cli.out);
            return emit_outcome(dispatch(&cfg.command)?, cfg.emit, out.as_deref());
        }
    };
    emit_outcome(dispatch(&cmd)?, cli.emit, cli.out.as_deref())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<AssertionFailed>() {
            return 3;
        }
        if cause.is::<ConfigError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<phivar_core::Error>() {
            return match e {
                phivar_core::Error::BoundExceeded { .. } => 4,
                _ => 2,
            };
        }
        if cause.is::<std::io::Error>() {
            return 1;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
