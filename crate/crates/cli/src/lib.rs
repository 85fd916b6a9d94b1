//! Command-line front end for the cvnet teleportation network simulator:
//! JSON configuration, parameter sweeps, figure presets and CSV/JSON output.

// Range checks are written as `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod device;
pub mod error;
pub mod format;
pub mod presets;
pub mod sweep;

pub use config::{OutputFormat, OutputSpec, RunConfig, SweepSpec, SweepValues, SweepVariable};
pub use error::CliError;
pub use presets::Preset;
pub use sweep::{run_sweep, ResultRow};
