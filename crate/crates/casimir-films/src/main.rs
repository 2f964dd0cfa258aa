//! Thin CLI over [`casimir_films::scenario`].
//!
//! Exit codes: 0 on success, 1 for configuration or usage problems, 2 when a
//! sweep ran but every row failed numerically.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use casimir_films::scenario::{self, RunOptions};

#[derive(Parser)]
#[command(
    name = "casimir-films",
    about = "Casimir pressure between thin metallic films: local vs nonlocal response",
    version,
    arg_required_else_help = true
)]
struct Cli {
    /// List bundled scenarios and exit.
    #[arg(long, exclusive = true)]
    list: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario and write its CSV artifact.
    Run {
        /// Bundled scenario name (see --list) or path to a scenario TOML file.
        config: String,

        /// Write the CSV here instead of the scenario's output_path.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,

        /// Override both relative tolerances (Matsubara and quadrature).
        #[arg(long, value_name = "REL")]
        tol: Option<f64>,

        /// Worker threads for row evaluation; defaults to the
        /// CASIMIR_FILMS_THREADS environment variable, then to all cores.
        #[arg(long, value_name = "N")]
        threads: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit(2); keep 2 reserved for numerical failure
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    if cli.list {
        return list();
    }
    match cli.command {
        Some(Command::Run { config, out, tol, threads }) => run(&config, out, tol, threads),
        None => {
            eprintln!("nothing to do; try 'casimir-films run <config>' or 'casimir-films --list'");
            ExitCode::from(1)
        }
    }
}

fn list() -> ExitCode {
    for b in scenario::BUNDLED {
        let description = scenario::parse_config(b.text)
            .map(|c| c.description)
            .unwrap_or_else(|_| "<unparseable>".into());
        println!("{:<16} {description}", b.name);
    }
    ExitCode::SUCCESS
}

fn run(
    config_arg: &str,
    out: Option<PathBuf>,
    tol: Option<f64>,
    threads: Option<usize>,
) -> ExitCode {
    if let Err(message) = configure_threads(threads) {
        eprintln!("error: {message}");
        return ExitCode::from(1);
    }

    let config = match scenario::load_argument(config_arg) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };

    let options = RunOptions { output_override: out, tolerance_override: tol };
    match scenario::run_scenario(&config, &options) {
        Ok(summary) => {
            println!(
                "wrote {} ({} rows, {} failed)",
                summary.output_path.display(),
                summary.rows_total,
                summary.rows_failed
            );
            if summary.rows_failed == summary.rows_total {
                eprintln!("error: every row failed; see the error column of the CSV");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// `--threads` beats `CASIMIR_FILMS_THREADS` beats rayon's default.
fn configure_threads(flag: Option<usize>) -> Result<(), String> {
    let count = match flag {
        Some(n) => Some(n),
        None => match std::env::var("CASIMIR_FILMS_THREADS") {
            Ok(raw) => Some(
                raw.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("CASIMIR_FILMS_THREADS must be an integer, got '{raw}'"))?,
            ),
            Err(std::env::VarError::NotPresent) => None,
            Err(e) => return Err(e.to_string()),
        },
    };
    match count {
        Some(0) => Err("thread count must be >= 1".into()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string()),
        None => Ok(()),
    }
}
