mod commands;
mod config;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

use commands::{CliError, ErrorKind};

/// Frequency-coded BB84 toolkit: fiber design, basis inspection, exact
/// attack analysis, Monte Carlo sessions and parameter sweeps.
#[derive(Parser)]
#[command(name = "fqkd", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive κ, λ_FT and the per-process phase mismatch from a fiber config.
    Fiber {
        /// Fiber description (JSON).
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the ψ and φ bases with exact amplitudes and their overlap table.
    Bases {
        /// Alphabet size: 2 or 4.
        #[arg(long)]
        dim: usize,
    },
    /// Exact sifted error rate of an intercept-resend attack.
    Attack {
        /// Alphabet size: 2 or 4.
        #[arg(long)]
        dim: usize,
        /// none | intercept-resend-psi | intercept-resend-random-basis.
        #[arg(long)]
        strategy: String,
        /// all | phi-only.
        #[arg(long, default_value = "all")]
        condition: String,
    },
    /// Run a Monte Carlo session and report counts, QBER and its interval.
    Run(commands::RunArgs),
    /// Run one session per value of a swept parameter.
    Sweep(commands::SweepArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fiber { config } => commands::cmd_fiber(&config),
        Command::Bases { dim } => commands::cmd_bases(dim),
        Command::Attack {
            dim,
            strategy,
            condition,
        } => commands::cmd_attack(dim, &strategy, &condition),
        Command::Run(args) => commands::cmd_run(&args),
        Command::Sweep(args) => commands::cmd_sweep(&args),
    };
    match result {
        Ok(payload) => println!("{payload}"),
        Err(CliError { kind, message }) => {
            eprintln!("error: {message}");
            std::process::exit(match kind {
                ErrorKind::Domain => 1,
                ErrorKind::Io => 2,
            });
        }
    }
}
