use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use spinlab::analysis::SectorChoice;
use spinlab::cli::{fit_scaling_csv, parse_scan, run, zones_for, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "spinlab", version, about = "Entanglement of LMG eigenstates in the symmetric subspace")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Parity sector: positive, negative or both.
    #[arg(long, global = true)]
    sector: Option<SectorChoice>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Classify (gamma_x, gamma_y, h) into its classical zone.
    Zones {
        #[arg(long, allow_hyphen_values = true)]
        gx: f64,
        #[arg(long, allow_hyphen_values = true)]
        gy: f64,
        #[arg(long, allow_hyphen_values = true)]
        h: f64,
    },
    /// Fixed-intercept fits of a scaling.csv, printed as JSON.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        intercept: f64,
        /// Intercept scan as min:max:step.
        #[arg(long)]
        scan: Option<String>,
    },
}

/// Prints to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if cli.threads.is_some() {
                cfg.threads = cli.threads;
            }
            if let Some(sector) = cli.sector {
                cfg.sector = sector;
            }
            let manifest = run(&cfg)?;
            let listing: Vec<String> = manifest
                .files
                .iter()
                .map(|f| format!("{}  {}", f.sha256, cfg.output_dir.join(&f.path).display()))
                .collect();
            emit(&listing.join("\n"))?;
        }
        Command::Zones { gx, gy, h } => {
            let report = zones_for(gx, gy, h)?;
            emit(&serde_json::to_string_pretty(&report)?)?;
        }
        Command::Fit {
            input,
            intercept,
            scan,
        } => {
            let scan = scan.as_deref().map(parse_scan).transpose()?;
            let fits = fit_scaling_csv(&input, intercept, scan)
                .with_context(|| format!("fitting {}", input.display()))?;
            emit(&serde_json::to_string_pretty(&fits)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be positive");
        return ExitCode::from(2);
    }
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .chain()
                .find_map(|e| e.downcast_ref::<CliError>())
                .map_or(1, CliError::exit_code);
            ExitCode::from(code)
        }
    }
}
