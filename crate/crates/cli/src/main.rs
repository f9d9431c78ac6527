//! qforge: reproducible quantum-simulation experiments from the command line.
//!
//! Commands: `run`, `trotter`, `spectrum`, `surface trials|threshold|bound|verify`,
//! `compile`. Every command accepts `--seed`, `--out`, `--workers`, and
//! `--config`; outputs are CSV (or plain reports) prefixed with a `#` header
//! echoing version, command line, effective configuration, and seed.
//!
//! Exit codes: 0 success, 1 usage/parse error, 2 precondition violation,
//! 3 soft "not found / no crossing" outcomes.

mod commands;
mod config;
mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
    pub fn precondition(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
    pub fn soft(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

impl From<qforge_core::Error> for CliError {
    fn from(e: qforge_core::Error) -> Self {
        use qforge_core::Error as E;
        match e {
            E::Parse { .. } => CliError::usage(e.to_string()),
            E::NoCrossing => CliError::soft(e.to_string()),
            _ => CliError::precondition(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::precondition(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "qforge", version, about = "Quantum simulation toolkit CLI")]
pub struct Cli {
    /// Base RNG seed; all randomness derives from it deterministically.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output file; stdout when omitted. Files are written atomically.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Monte Carlo worker threads (never affects results, only speed).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// TOML config file supplying defaults for any command parameter.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Execute a circuit file from |0…0⟩ and histogram measured outcomes.
    Run {
        /// Circuit in the text format (H/T/X/Z/S/CNOT/SWAP/RD lines).
        #[arg(long)]
        circuit: PathBuf,
        /// Register width; inferred from the file when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        shots: Option<usize>,
        /// Also report the majority-vote outcome.
        #[arg(long)]
        majority: bool,
    },
    /// Trotter error/gate-count report for a Hamiltonian file.
    Trotter {
        #[arg(long)]
        hamiltonian: PathBuf,
        /// Total evolution time.
        #[arg(long)]
        t: Option<f64>,
        /// Comma-separated step counts, one CSV row each.
        #[arg(long)]
        steps: Option<String>,
        /// Derive the step count from a target error instead (C = 1).
        #[arg(long)]
        target_error: Option<f64>,
    },
    /// Eigenvalue spectroscopy via QFT phase estimation.
    Spectrum {
        #[arg(long)]
        hamiltonian: PathBuf,
        /// Initial data state: a basis bitstring like "010", or "plus".
        #[arg(long)]
        state: Option<String>,
        /// Time-register bits.
        #[arg(long)]
        m: Option<usize>,
        /// Time unit T, or "auto" for pi/(2 sum |c_a|).
        #[arg(long)]
        t_unit: Option<String>,
        #[arg(long)]
        shots: Option<usize>,
        /// "exact" (dense oracle) or "trotter".
        #[arg(long)]
        mode: Option<String>,
        /// Trotter steps per time unit (trotter mode).
        #[arg(long)]
        trotter_steps: Option<usize>,
    },
    /// Surface-code Monte Carlo experiments.
    Surface {
        #[command(subcommand)]
        sub: SurfaceCommand,
    },
    /// Brute-force {H, T} compilation of a single-qubit target.
    Compile {
        /// Named gate (H, T, S, X, Z), rz=/rx=/ry=<angle>, or 8 floats
        /// "re,im,re,im,..." row-major.
        #[arg(long)]
        target: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        max_depth: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum SurfaceCommand {
    /// Logical error rate per (d, eps) grid point.
    Trials {
        /// Comma-separated code distances.
        #[arg(long)]
        d: Option<String>,
        /// Comma-separated physical error rates.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Threshold location from curve crossings.
    Threshold {
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Analytic union bound per (d, eps) grid point.
    Bound {
        #[arg(long)]
        d: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Quantum error-correction condition check (d = 3).
    Verify {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        max_weight: Option<usize>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version output is a success, not a usage error.
            if e.use_stderr() {
                eprintln!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    if let Some(workers) = cli.workers {
        if workers < 1 {
            eprintln!("error: --workers must be >= 1");
            std::process::exit(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
    match commands::dispatch(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
