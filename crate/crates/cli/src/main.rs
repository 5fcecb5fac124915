use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use timetrap::Execution;
use timetrap_cli::commands;
use timetrap_cli::format::Format;
use timetrap_cli::{CliError, Options, Outcome};

/// Pair production in piecewise-constant fields: trap design, evolution
/// traces, momentum sweeps and invariant checks.
#[derive(Parser)]
#[command(name = "timetrap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the result table here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed for the randomized verification suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write an SVG probability plot here
    #[arg(long, global = true)]
    plot: Option<PathBuf>,

    /// Evaluate batches on the current thread only
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Solve the trap tuning conditions and verify the result
    Design,
    /// Per-boundary Fock probabilities and amplitudes
    Evolve,
    /// Detuning scan over a momentum grid
    Sweep,
    /// Run the seeded invariant suites
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        config: cli.config,
        output: cli.output,
        format: cli.format,
        seed: cli.seed,
        plot: cli.plot,
        exec: if cli.sequential { Execution::Sequential } else { Execution::default() },
    };
    let result: Result<Outcome, CliError> = match cli.command {
        Command::Design => commands::design(&opts),
        Command::Evolve => commands::evolve(&opts),
        Command::Sweep => commands::sweep(&opts),
        Command::Verify => commands::verify(&opts),
    };
    match result {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.stdout);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
