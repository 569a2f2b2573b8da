//! Command-line front end: single steps, trajectories, fixed-point reports,
//! basin portraits and subfamily analysis for the two-sex quadratic
//! operator family.
//!
//! Exit status: 0 on success, 2 on usage errors (bad flags or out-of-range
//! arguments), 1 on internal consistency failures.

mod commands;
mod output;
mod records;

use std::panic::AssertUnwindSafe;
use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};

use vqso_core::{DomainError, IterationError, ParamSet, State2};

use output::{Format, Sink};

#[derive(Debug, Parser)]
#[command(
    name = "vqso",
    version,
    about = "Dynamics of four-parameter quadratic stochastic operators of a two-sex population"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Heredity parameter a, in [0, 1]
    #[arg(long)]
    a: f64,
    /// Heredity parameter b, in [0, 1]
    #[arg(long)]
    b: f64,
    /// Heredity parameter alpha, in [0, 1]
    #[arg(long)]
    alpha: f64,
    /// Heredity parameter beta, in [0, 1]
    #[arg(long)]
    beta: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<ParamSet> {
        Ok(ParamSet::new(self.a, self.b, self.alpha, self.beta)?)
    }
}

#[derive(Debug, Args)]
struct InitialArgs {
    /// Initial frequency of female type 1, in [0, 1]
    #[arg(long)]
    x0: f64,
    /// Initial frequency of male type 1, in [0, 1]
    #[arg(long)]
    y0: f64,
}

impl InitialArgs {
    fn build(&self) -> Result<State2> {
        Ok(State2::new(self.x0, self.y0)?)
    }
}

#[derive(Debug, Args)]
struct IterArgs {
    /// Iteration budget
    #[arg(long, default_value_t = 1_000_000)]
    max_iter: u64,
    /// Sup-norm step tolerance for convergence detection
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Machine output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the operator once and print the image point
    Step {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        initial: InitialArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Iterate from an initial point, streaming one record per iterate
    Trajectory {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        initial: InitialArgs,
        #[command(flatten)]
        iter: IterArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enumerate the fixed-point locus with verified witnesses and corner
    /// stability reports
    FixedPoints {
        /// Heredity parameter a, in [0, 1]
        #[arg(long, required_unless_present = "paper_table")]
        a: Option<f64>,
        /// Heredity parameter b, in [0, 1]
        #[arg(long, required_unless_present = "paper_table")]
        b: Option<f64>,
        /// Heredity parameter alpha, in [0, 1]
        #[arg(long, required_unless_present = "paper_table")]
        alpha: Option<f64>,
        /// Heredity parameter beta, in [0, 1]
        #[arg(long, required_unless_present = "paper_table")]
        beta: Option<f64>,
        /// Print the published reference table with recomputed values and
        /// discrepancy columns (human view, ignores --format)
        #[arg(long)]
        paper_table: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Iterate from every point of a uniform grid and record the basins
    Portrait {
        #[command(flatten)]
        params: ParamArgs,
        /// Grid points along x (endpoints included)
        #[arg(long)]
        nx: u32,
        /// Grid points along y (endpoints included)
        #[arg(long)]
        ny: u32,
        #[command(flatten)]
        iter: IterArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Detect the parameter subfamily and verify its closed-form theory
    Subfamily {
        #[command(flatten)]
        params: ParamArgs,
        /// Optional initial x for a pointwise closed-form limit
        #[arg(long, requires = "y0")]
        x0: Option<f64>,
        /// Optional initial y for a pointwise closed-form limit
        #[arg(long, requires = "x0")]
        y0: Option<f64>,
        /// Seed for the verification sweeps
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random trajectories in the regularity sweep
        #[arg(long, default_value_t = 1_000)]
        draws: u64,
        #[command(flatten)]
        iter: IterArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn validate_iter(iter: &IterArgs) -> Result<()> {
    if iter.max_iter < 1 {
        return Err(IterationError::InvalidMaxIter.into());
    }
    if iter.tol <= 0.0 || !iter.tol.is_finite() {
        return Err(IterationError::InvalidTol(iter.tol).into());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Step {
            params,
            initial,
            out,
        } => {
            let p = params.build()?;
            let s0 = initial.build()?;
            let mut sink = Sink::open(out.output.as_deref())?;
            commands::cmd_step(&p, s0, out.format, &mut sink)?;
            sink.finish()
        }
        Command::Trajectory {
            params,
            initial,
            iter,
            out,
        } => {
            let p = params.build()?;
            let s0 = initial.build()?;
            validate_iter(&iter)?;
            let mut sink = Sink::open(out.output.as_deref())?;
            commands::cmd_trajectory(
                &p,
                s0,
                iter.max_iter,
                iter.tol,
                out.format.unwrap_or(Format::Jsonl),
                &mut sink,
            )?;
            sink.finish()
        }
        Command::FixedPoints {
            a,
            b,
            alpha,
            beta,
            paper_table,
            out,
        } => {
            let mut sink = Sink::open(out.output.as_deref())?;
            if paper_table {
                commands::cmd_paper_table(&mut sink)?;
            } else {
                // clap guarantees presence when --paper-table is absent
                let p = ParamSet::new(
                    a.expect("required"),
                    b.expect("required"),
                    alpha.expect("required"),
                    beta.expect("required"),
                )?;
                commands::cmd_fixed_points(&p, out.format.unwrap_or(Format::Jsonl), &mut sink)?;
            }
            sink.finish()
        }
        Command::Portrait {
            params,
            nx,
            ny,
            iter,
            out,
        } => {
            let p = params.build()?;
            if nx < 2 || ny < 2 {
                return Err(anyhow!(Usage(format!(
                    "grid must be at least 2x2, got {nx}x{ny}"
                ))));
            }
            validate_iter(&iter)?;
            let mut sink = Sink::open(out.output.as_deref())?;
            commands::cmd_portrait(
                &p,
                nx,
                ny,
                iter.max_iter,
                iter.tol,
                out.format.unwrap_or(Format::Jsonl),
                &mut sink,
            )?;
            sink.finish()
        }
        Command::Subfamily {
            params,
            x0,
            y0,
            seed,
            draws,
            iter,
            out,
        } => {
            let p = params.build()?;
            let s0 = match (x0, y0) {
                (Some(x), Some(y)) => Some(State2::new(x, y)?),
                _ => None,
            };
            validate_iter(&iter)?;
            let mut sink = Sink::open(out.output.as_deref())?;
            commands::cmd_subfamily(
                &p,
                s0,
                seed,
                draws,
                iter.max_iter,
                iter.tol,
                out.format.unwrap_or(Format::Jsonl),
                &mut sink,
            )?;
            sink.finish()
        }
    }
}

/// A user-input problem that is not caught by clap's parser.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    if err.is::<Usage>() || err.is::<DomainError>() || err.is::<IterationError>() {
        2
    } else {
        1
    }
}

fn main() {
    let cli = Cli::parse(); // clap exits 2 on parse errors

    // Internal consistency failures (e.g. a closure violation in the map)
    // surface as panics; catch them so the process exits 1, not 101.
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let outcome = std::panic::catch_unwind(AssertUnwindSafe(|| run(cli)));
    std::panic::set_hook(default_hook);

    let code = match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(err)) => {
            eprintln!("error: {err:#}");
            exit_code_for(&err)
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            eprintln!("internal consistency failure: {message}");
            1
        }
    };
    std::process::exit(code);
}
