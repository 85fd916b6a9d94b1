//! JSON run configuration.
//!
//! Rates and couplings are in units of ω_m, distances in km and the channel
//! attenuation `alpha` in dB/km.

use std::fmt;
use std::path::{Path, PathBuf};

use cvnet_core::qelement::{is_stable, stability_margins};
use cvnet_core::{NetworkSpec, StabilityMargins, Tolerances};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub network: NetworkSpec,
    pub sweep: SweepSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<OutputSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    NModes,
    Distance,
    Depth,
    G3,
}

impl SweepVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::NModes => "n_modes",
            SweepVariable::Distance => "distance",
            SweepVariable::Depth => "depth",
            SweepVariable::G3 => "g3",
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Either an explicit list or an inclusive linear grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepValues {
    List(Vec<f64>),
    Grid { start: f64, stop: f64, count: usize },
}

impl SweepValues {
    pub fn grid(start: f64, stop: f64, count: usize) -> Self {
        SweepValues::Grid { start, stop, count }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        match self {
            SweepValues::List(v) => v.clone(),
            SweepValues::Grid { start, stop, count } => match count {
                0 => Vec::new(),
                1 => vec![*start],
                n => (0..*n)
                    .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: SweepValues,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub format: OutputFormat,
}

/// One validation finding, addressed by its JSON key path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl Issue {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid configuration: {}", .issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ConfigError {
    pub issues: Vec<Issue>,
}

impl From<Issue> for ConfigError {
    fn from(issue: Issue) -> Self {
        Self {
            issues: vec![issue],
        }
    }
}

/// Deserializes a JSON document, reporting failures with their key path.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|err| {
        let mut path = err.path().to_string();
        let message = err.inner().to_string();
        if let Some(field) = message
            .strip_prefix("missing field `")
            .and_then(|rest| rest.split('`').next())
        {
            path = if path == "." {
                field.to_string()
            } else {
                format!("{path}.{field}")
            };
        }
        Issue::new(path, message).into()
    })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Issue::new("<file>", format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text)
}

/// Parses and range-checks a run configuration.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = read_json(path)?;
    let issues = range_issues(&cfg);
    if issues.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigError { issues })
    }
}

pub fn range_issues(cfg: &RunConfig) -> Vec<Issue> {
    let mut issues = Vec::new();
    let net = &cfg.network;
    if net.n_elements < 2 {
        issues.push(Issue::new("network.n_elements", "must be at least 2"));
    }
    let e = &net.element;
    for (name, v) in [
        ("gamma_m", e.gamma_m),
        ("gamma_2", e.gamma_2),
        ("gamma_3", e.gamma_3),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            issues.push(Issue::new(
                format!("network.element.{name}"),
                format!("must be positive, got {v}"),
            ));
        }
    }
    for (name, v) in [("g2", e.g2), ("g3", e.g3)] {
        if !(v >= 0.0) || !v.is_finite() {
            issues.push(Issue::new(
                format!("network.element.{name}"),
                format!("must be finite and non-negative, got {v}"),
            ));
        }
    }
    let noise = &net.noise;
    if !(noise.purity > 0.0 && noise.purity <= 1.0) {
        issues.push(Issue::new(
            "network.noise.purity",
            format!("must lie in (0, 1], got {}", noise.purity),
        ));
    }
    if !(noise.depth >= 0.0 && noise.depth < 0.5) {
        issues.push(Issue::new(
            "network.noise.depth",
            format!(
                "nonclassicality depth must lie in [0, 0.5), got {}",
                noise.depth
            ),
        ));
    }
    if !noise.phase.is_finite() {
        issues.push(Issue::new("network.noise.phase", "must be finite"));
    }
    let ch = &net.channel;
    if !(ch.alpha >= 0.0) || !ch.alpha.is_finite() {
        issues.push(Issue::new(
            "network.channel.alpha",
            format!("must be >= 0, got {}", ch.alpha),
        ));
    }
    if !(ch.distance >= 0.0) || !ch.distance.is_finite() {
        issues.push(Issue::new(
            "network.channel.distance",
            format!("must be >= 0, got {}", ch.distance),
        ));
    }
    if !(ch.eta0 > 0.0 && ch.eta0 <= 1.0) {
        issues.push(Issue::new(
            "network.channel.eta0",
            format!("must lie in (0, 1], got {}", ch.eta0),
        ));
    }

    match &cfg.sweep.values {
        SweepValues::List(v) if v.is_empty() => {
            issues.push(Issue::new("sweep.values", "list must not be empty"));
        }
        SweepValues::Grid { count: 0, .. } => {
            issues.push(Issue::new("sweep.values.count", "must be at least 1"));
        }
        SweepValues::Grid { start, stop, .. } if !start.is_finite() || !stop.is_finite() => {
            issues.push(Issue::new("sweep.values", "grid bounds must be finite"));
        }
        _ => {}
    }
    for (k, v) in cfg.sweep.values.to_vec().into_iter().enumerate() {
        let path = format!("sweep.values[{k}]");
        let bad = match cfg.sweep.variable {
            _ if !v.is_finite() => Some("must be finite".to_string()),
            SweepVariable::NModes if v.fract() != 0.0 || v < 2.0 => {
                Some(format!("mode count must be an integer >= 2, got {v}"))
            }
            SweepVariable::Distance if v < 0.0 => Some(format!("distance must be >= 0, got {v}")),
            SweepVariable::Depth if !(0.0..0.5).contains(&v) => Some(format!(
                "nonclassicality depth must lie in [0, 0.5), got {v}"
            )),
            SweepVariable::G3 if v < 0.0 => Some(format!("g3 must be >= 0, got {v}")),
            _ => None,
        };
        if let Some(message) = bad {
            issues.push(Issue::new(path, message));
        }
    }
    issues
}

/// Outcome of `cvnet validate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub errors: Vec<Issue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilitySummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilitySummary {
    pub stable: bool,
    pub margins: StabilityMargins,
    /// Sweep values at which the element is unstable.
    pub unstable_sweep_values: Vec<f64>,
}

pub fn validate_file(path: &Path) -> ValidationReport {
    match load_config(path) {
        Err(e) => ValidationReport {
            valid: false,
            errors: e.issues,
            stability: None,
        },
        Ok(cfg) => match stability_summary(&cfg) {
            Ok(summary) => ValidationReport {
                valid: true,
                errors: Vec::new(),
                stability: Some(summary),
            },
            Err(issue) => ValidationReport {
                valid: false,
                errors: vec![issue],
                stability: None,
            },
        },
    }
}

fn stability_summary(cfg: &RunConfig) -> Result<StabilitySummary, Issue> {
    let element = cfg.network.element;
    let stable = is_stable(&element).map_err(|e| Issue::new("network.element", e.to_string()))?;
    let mut unstable = Vec::new();
    if cfg.sweep.variable == SweepVariable::G3 {
        for v in cfg.sweep.values.to_vec() {
            let p = cvnet_core::ElementParams { g3: v, ..element };
            if !is_stable(&p).map_err(|e| Issue::new("sweep.values", e.to_string()))? {
                unstable.push(v);
            }
        }
    }
    Ok(StabilitySummary {
        stable,
        margins: stability_margins(&element),
        unstable_sweep_values: unstable,
    })
}
