use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gmcusp::cases::CaseKind;
use gmcusp::io::{parse_config_with_overrides, run, run_checks};
use gmcusp::GasModel;

#[derive(Parser)]
#[command(
    name = "gmcusp",
    version,
    about = "2D finite-volume Euler solver with K-CUSP-X and GM-K-CUSP-X fluxes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the case described by a configuration file.
    Solve {
        config: PathBuf,
        /// `key=value`, applied after the file; may be repeated.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// List the built-in test cases.
    Cases,
    /// Run the quick invariant checks.
    Check,
}

fn solve(config: &PathBuf, overrides: &[String]) -> Result<bool, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(config).map_err(|e| format!("{}: {e}", config.display()))?;
    let config = parse_config_with_overrides(&text, overrides)?;
    log::info!("output directory {}", config.effective_output_dir().display());
    let summary = run(&config)?;
    println!("{}", summary.describe());
    for f in &summary.files {
        println!("wrote {}", f.display());
    }
    Ok(summary.success)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Solve { config, overrides } => match solve(&config, &overrides) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(2),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Command::Cases => {
            for kind in CaseKind::ALL {
                println!("{:<16}{}", kind.name(), kind.description());
            }
            ExitCode::SUCCESS
        }
        Command::Check => {
            let results = run_checks(GasModel::default());
            for r in &results {
                println!("{} {:<36}{}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
            }
            if results.iter().all(|r| r.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
