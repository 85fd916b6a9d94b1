use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cvnet_cli::config::{load_config, read_json, validate_file, OutputFormat, OutputSpec};
use cvnet_cli::device::{run_device, DeviceConfig};
use cvnet_cli::format::{write_rows, CsvRecord};
use cvnet_cli::presets::run_preset;
use cvnet_cli::{run_sweep, CliError, Preset};
use serde::Serialize;

/// Continuous-variable teleportation network simulator.
#[derive(Parser)]
#[command(name = "cvnet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the parameter sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Write the CSV curve family of a figure preset
    /// (fig3, fig4, fig5a, fig5b, figB, fig6).
    Preset {
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a config without running it; prints a JSON report.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Graphene conductivity, dispersion and permittivity per frequency.
    DeviceCalc {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep { config } => sweep(&config),
        Command::Preset { name, out } => preset(&name, &out),
        Command::Validate { config } => return validate(&config),
        Command::DeviceCalc { config } => device_calc(&config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            report(&err);
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn report(err: &CliError) {
    match err {
        CliError::Config(c) => {
            let body = serde_json::json!({ "errors": c.issues });
            eprintln!("{body}");
        }
        other => eprintln!("error: {other}"),
    }
}

fn sweep(path: &Path) -> Result<(), CliError> {
    let cfg = load_config(path)?;
    let rows = run_sweep(&cfg)?;
    emit(&rows, cfg.outputs.as_ref())
}

fn preset(name: &str, out: &Path) -> Result<(), CliError> {
    let preset: Preset = name.parse()?;
    for path in run_preset(preset, out)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn validate(path: &Path) -> ExitCode {
    let report = validate_file(path);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{text}");
    if report.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn device_calc(path: &Path) -> Result<(), CliError> {
    let cfg: DeviceConfig = read_json(path)?;
    let (rows, warnings) = run_device(&cfg)?;
    for w in &warnings {
        eprintln!(
            "warning: interband logarithm may cross its branch cut at omega = {} (row {})",
            w.omega, w.index
        );
    }
    emit(&rows, cfg.outputs.as_ref())
}

/// Writes to the configured file, or CSV on stdout when none is given.
fn emit<R: CsvRecord + Serialize>(
    rows: &[R],
    outputs: Option<&OutputSpec>,
) -> Result<(), CliError> {
    let written = match outputs {
        None => write_rows(rows, OutputFormat::Csv, BufWriter::new(io::stdout().lock())),
        Some(spec) => {
            let io_err =
                |e: io::Error| CliError::Io(format!("cannot write {}: {e}", spec.path.display()));
            let file = File::create(&spec.path).map_err(io_err)?;
            let mut out = BufWriter::new(file);
            write_rows(rows, spec.format, &mut out)
                .and_then(|()| out.flush())
                .map_err(io_err)?;
            Ok(())
        }
    };
    written.map_err(|e| CliError::Io(format!("cannot write output: {e}")))
}
