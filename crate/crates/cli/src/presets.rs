//! Figure presets: fixed curve families written as CSV files.

use std::fmt;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cvnet_core::{Channel, ElementParams, MicrowaveNoise, NetworkSpec, Tolerances};

use crate::config::{
    ConfigError, Issue, OutputFormat, OutputSpec, RunConfig, SweepSpec, SweepValues, SweepVariable,
};
use crate::error::CliError;
use crate::format::{fmt_g, write_csv};
use crate::sweep::run_sweep;

/// Nonclassicality depth used throughout the presets.
pub const WORKING_DEPTH: f64 = 0.497;

pub const LOSSY_CHANNEL: Channel = Channel {
    alpha: 0.005,
    distance: 0.1,
    eta0: 0.99,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// E_N vs N, lossless and lossy, for two depths.
    Fig3,
    /// F vs N, same families as `Fig3`.
    Fig4,
    /// F vs N for several distances.
    Fig5a,
    /// F vs distance for N = 3, 4, 5.
    Fig5b,
    /// Stability margins across g3.
    FigB,
    /// η⁻ vs depth for N = 3, 4, 5.
    Fig6,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5a,
        Preset::Fig5b,
        Preset::FigB,
        Preset::Fig6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5a => "fig5a",
            Preset::Fig5b => "fig5b",
            Preset::FigB => "figB",
            Preset::Fig6 => "fig6",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
                Issue::new(
                    "preset",
                    format!("unknown preset {s:?}; expected one of {}", names.join(", ")),
                )
                .into()
            })
    }
}

fn network(n: usize, depth: f64, channel: Channel) -> NetworkSpec {
    NetworkSpec {
        n_elements: n,
        element: ElementParams::baseline(),
        noise: MicrowaveNoise::pure(depth),
        channel,
    }
}

fn run(
    file: String,
    network: NetworkSpec,
    variable: SweepVariable,
    values: SweepValues,
) -> RunConfig {
    RunConfig {
        network,
        sweep: SweepSpec { variable, values },
        outputs: Some(OutputSpec {
            path: file.into(),
            format: OutputFormat::Csv,
        }),
        tolerances: Tolerances::default(),
    }
}

fn modes_2_to_10() -> SweepValues {
    SweepValues::grid(2.0, 10.0, 9)
}

/// The sweeps making up a preset; output paths are bare file names.
pub fn preset_runs(preset: Preset) -> Vec<RunConfig> {
    let name = preset.name();
    match preset {
        Preset::Fig3 | Preset::Fig4 => {
            let mut runs = Vec::new();
            for (panel, channel) in [("lossless", Channel::LOSSLESS), ("lossy", LOSSY_CHANNEL)] {
                for depth in [0.0, WORKING_DEPTH] {
                    runs.push(run(
                        format!("{name}_{panel}_D{}.csv", fmt_g(depth)),
                        network(2, depth, channel),
                        SweepVariable::NModes,
                        modes_2_to_10(),
                    ));
                }
            }
            runs
        }
        Preset::Fig5a => [0.0, 0.1, 1.0, 10.0]
            .into_iter()
            .map(|l| {
                run(
                    format!("{name}_l{}.csv", fmt_g(l)),
                    network(
                        2,
                        WORKING_DEPTH,
                        Channel {
                            distance: l,
                            ..LOSSY_CHANNEL
                        },
                    ),
                    SweepVariable::NModes,
                    modes_2_to_10(),
                )
            })
            .collect(),
        Preset::Fig5b => [3, 4, 5]
            .into_iter()
            .map(|n| {
                run(
                    format!("{name}_N{n}.csv"),
                    network(n, WORKING_DEPTH, LOSSY_CHANNEL),
                    SweepVariable::Distance,
                    SweepValues::grid(0.0, 25.0, 251),
                )
            })
            .collect(),
        Preset::FigB => vec![run(
            format!("{name}.csv"),
            network(2, WORKING_DEPTH, LOSSY_CHANNEL),
            SweepVariable::G3,
            SweepValues::grid(0.10, 0.25, 1501),
        )],
        Preset::Fig6 => [3, 4, 5]
            .into_iter()
            .map(|n| {
                run(
                    format!("{name}_N{n}.csv"),
                    network(n, 0.0, Channel::LOSSLESS),
                    SweepVariable::Depth,
                    SweepValues::grid(0.0, WORKING_DEPTH, 498),
                )
            })
            .collect(),
    }
}

/// Runs every sweep of `preset` and writes one CSV per curve into `out_dir`.
pub fn run_preset(preset: Preset, out_dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;
    let mut written = Vec::new();
    for cfg in preset_runs(preset) {
        let rows = run_sweep(&cfg)?;
        let file = cfg.outputs.expect("presets name their output").path;
        let path = out_dir.join(file);
        let io_err =
            |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
        let out = File::create(&path).map_err(io_err)?;
        write_csv(&rows, BufWriter::new(out)).map_err(io_err)?;
        written.push(path);
    }
    Ok(written)
}
