use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lie_atiyah::cli::{exit_code, parse_problem, run_problem, RunOptions};
use lie_atiyah::selftest::{run_selftest, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "lie-atiyah",
    version,
    about = "Exact Atiyah classes, extensions and matched pairs of Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// One JSON object per report line
    #[arg(long)]
    json: bool,
    /// Human-readable reports (default)
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a problem file
    Run {
        file: PathBuf,
        /// Exit with status 1 when a task reports an obstruction
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        format: Format,
    },
    /// Run the built-in property suite
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        format: Format,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            file,
            strict,
            seed,
            format,
        } => {
            let src = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let problem = match parse_problem(&src) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let reports = run_problem(&problem, &RunOptions { strict, seed });
            for r in &reports {
                if format.json {
                    println!("{}", r.to_json());
                } else {
                    print!("{}", r.to_text());
                }
            }
            ExitCode::from(exit_code(&reports, strict) as u8)
        }
        Command::Selftest { seed, format } => {
            let report = run_selftest(seed);
            if format.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
