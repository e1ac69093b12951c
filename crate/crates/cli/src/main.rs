use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qarch_cli::commands::{self, Format};
use qarch_cli::config::Config;
use qarch_cli::{checks, CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "qarch", version, about = "Compare single- and double-device quantum network node architectures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form average fidelities for every sweep point.
    Analyze(Common),
    /// Discrete-event simulation estimates with error bars.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Overrides the master seed from the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Pre- and post-move entanglement fidelities of the move circuits.
    Circuit(Common),
    /// Runs the formula-equivalence and property checks.
    Selftest,
}

fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze(c) => {
            let rows = commands::analyze(&Config::load(&c.config)?)?;
            commands::write_rows(&rows, c.format.unwrap_or(Format::Csv), output(c.out.as_deref())?)
        }
        Command::Simulate { common: c, seed } => {
            let mut cfg = Config::load(&c.config)?;
            if let Some(seed) = seed {
                cfg.sim.seed = seed;
            }
            let rows = commands::simulate(&cfg)?;
            commands::write_rows(&rows, c.format.unwrap_or(Format::Csv), output(c.out.as_deref())?)
        }
        Command::Circuit(c) => {
            let report = commands::circuit(&Config::load(&c.config)?)?;
            let out = output(c.out.as_deref())?;
            match c.format.unwrap_or(Format::Json) {
                Format::Json => commands::write_json(&report, out),
                Format::Csv => commands::write_rows(&report.sweep, Format::Csv, out),
            }
        }
        Command::Selftest => {
            let results = checks::selftest();
            for check in &results {
                println!("{check}");
            }
            match results.iter().filter(|c| !c.passed).count() {
                0 => Ok(()),
                n => Err(CliError::SelfTest(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qarch: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
