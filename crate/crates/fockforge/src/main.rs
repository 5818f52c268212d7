use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fockforge::config::{parse_config, Overrides};
use fockforge::experiments::{run_experiment, to_csv, to_json};
use fockforge::verify::run_all;

#[derive(Parser)]
#[command(
    name = "fockforge",
    about = "Truncated bosonic Fock-space experiments and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment over its parameter grid.
    Run {
        /// Experiment name: gaussian-norm, cocycle, unitarity, intertwine,
        /// divergence or weyl-kernel.
        #[arg(long)]
        experiment: Option<String>,
        /// Flat key=value config file; flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Number of modes (1..=8).
        #[arg(long)]
        modes: Option<usize>,
        /// Degree cap (0..=64); config files may give a comma grid.
        #[arg(long)]
        cap: Option<usize>,
        /// RNG seed for randomized grids.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format: csv or json.
        #[arg(long)]
        format: Option<String>,
    },
    /// Run the full acceptance suite and print a pass/fail table.
    Verify,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            experiment,
            config,
            modes,
            cap,
            seed,
            out,
            format,
        } => {
            let overrides = Overrides {
                experiment,
                modes,
                cap,
                seed,
                output: out,
                format,
            };
            let cfg = match parse_config(config.as_deref(), &overrides) {
                Ok(cfg) => cfg,
                Err(err) => {
                    eprintln!("config error: {err}");
                    return ExitCode::from(2);
                }
            };
            let rows = match run_experiment(&cfg) {
                Ok(rows) => rows,
                Err(err) => {
                    eprintln!("config error: {err}");
                    return ExitCode::from(2);
                }
            };
            let rendered = match cfg.format {
                fockforge::config::OutputFormat::Csv => to_csv(&rows),
                fockforge::config::OutputFormat::Json => to_json(&rows),
            };
            match &cfg.output {
                Some(path) => {
                    if let Err(err) = std::fs::write(path, rendered) {
                        eprintln!("failed to write {}: {err}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{rendered}"),
            }
            let failures = rows.iter().filter(|r| !r.pass).count();
            if failures > 0 {
                eprintln!("{failures} of {} rows exceeded tolerance", rows.len());
                return ExitCode::from(1);
            }
            if cfg.experiment == fockforge::config::ExperimentName::Divergence {
                eprintln!("status: diverges (partial norms strictly increasing)");
            }
            ExitCode::SUCCESS
        }
        Command::Verify => {
            let reports = run_all();
            for report in &reports {
                println!("{}", report.render());
            }
            let failures = reports.iter().filter(|r| !r.pass).count();
            if failures > 0 {
                eprintln!("{failures} of {} criteria failed", reports.len());
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
    }
}
