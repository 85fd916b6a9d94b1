//! Graphene waveguide calculator behind `cvnet device-calc`.
//!
//! Frequencies are angular, in rad/s; device inputs are SI.

use cvnet_core::gplasmon::{conductivity_sweep, device_report, BranchWarning, GrapheneDevice};
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, Issue, OutputSpec, SweepValues};
use crate::error::CliError;
use crate::format::{fmt_g, CsvRecord};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceConfig {
    pub device: GrapheneDevice,
    pub omega: SweepValues,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<OutputSpec>,
}

impl DeviceConfig {
    pub fn check(&self) -> Result<(), ConfigError> {
        let mut issues = Vec::new();
        if let Err(e) = self.device.validate() {
            issues.push(Issue::new("device", e.to_string()));
        }
        let omegas = self.omega.to_vec();
        if omegas.is_empty() {
            issues.push(Issue::new("omega", "at least one frequency is required"));
        }
        for (k, w) in omegas.iter().enumerate() {
            if !(*w > 0.0) || !w.is_finite() {
                issues.push(Issue::new(
                    format!("omega[{k}]"),
                    format!("must be positive and finite, got {w}"),
                ));
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ConfigError { issues })
        }
    }
}

/// Zeroth- and first-order device quantities at one frequency.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviceRow {
    pub omega: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub sigma1_re: f64,
    pub sigma1_im: f64,
    pub sigma2_re: f64,
    pub sigma2_im: f64,
    pub beta1_re: f64,
    pub beta1_im: f64,
    pub beta2_re: f64,
    pub beta2_im: f64,
    pub eps1_re: f64,
    pub eps1_im: f64,
    pub eps2_re: f64,
    pub eps2_im: f64,
    /// Set where the interband logarithm may have crossed its branch cut.
    pub branch_warning: bool,
}

impl CsvRecord for DeviceRow {
    fn header() -> &'static [&'static str] {
        &[
            "omega",
            "mu1",
            "mu2",
            "sigma1_re",
            "sigma1_im",
            "sigma2_re",
            "sigma2_im",
            "beta1_re",
            "beta1_im",
            "beta2_re",
            "beta2_im",
            "eps1_re",
            "eps1_im",
            "eps2_re",
            "eps2_im",
            "branch_warning",
        ]
    }

    fn fields(&self) -> Vec<String> {
        let mut f: Vec<String> = [
            self.omega,
            self.mu1,
            self.mu2,
            self.sigma1_re,
            self.sigma1_im,
            self.sigma2_re,
            self.sigma2_im,
            self.beta1_re,
            self.beta1_im,
            self.beta2_re,
            self.beta2_im,
            self.eps1_re,
            self.eps1_im,
            self.eps2_re,
            self.eps2_im,
        ]
        .into_iter()
        .map(fmt_g)
        .collect();
        f.push(self.branch_warning.to_string());
        f
    }
}

pub fn run_device(cfg: &DeviceConfig) -> Result<(Vec<DeviceRow>, Vec<BranchWarning>), CliError> {
    cfg.check()?;
    let omegas = cfg.omega.to_vec();
    let fail = |value: f64| {
        move |source| CliError::Compute {
            variable: "omega",
            value,
            source,
        }
    };
    let (_, warnings) = conductivity_sweep(&cfg.device, &omegas).map_err(fail(omegas[0]))?;
    let rows = omegas
        .iter()
        .enumerate()
        .map(|(k, &w)| {
            let r = device_report(&cfg.device, w).map_err(fail(w))?;
            Ok(DeviceRow {
                omega: w,
                mu1: r.mu.zeroth.re,
                mu2: r.mu.first.re,
                sigma1_re: r.sigma.zeroth.re,
                sigma1_im: r.sigma.zeroth.im,
                sigma2_re: r.sigma.first.re,
                sigma2_im: r.sigma.first.im,
                beta1_re: r.beta.zeroth.re,
                beta1_im: r.beta.zeroth.im,
                beta2_re: r.beta.first.re,
                beta2_im: r.beta.first.im,
                eps1_re: r.eps.zeroth.re,
                eps1_im: r.eps.zeroth.im,
                eps2_re: r.eps.first.re,
                eps2_im: r.eps.first.im,
                branch_warning: warnings.iter().any(|b| b.index == k),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok((rows, warnings))
}
