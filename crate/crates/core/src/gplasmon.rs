//! Graphene device physics in SI units: voltage-perturbed chemical
//! potential, surface conductivity, SPP dispersion and effective permittivity.
//!
//! Every perturbed quantity is returned as a zeroth-order value plus the
//! coefficient of `ν e^{-iω_m t}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 values.
pub mod constants {
    /// Reduced Planck constant, J·s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Elementary charge, C.
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    /// Boltzmann constant, J/K.
    pub const BOLTZMANN: f64 = 1.380_649e-23;
    /// Speed of light in vacuum, m/s.
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Impedance of free space, Ω.
    pub const FREE_SPACE_IMPEDANCE: f64 = 376.730_313_668;
}

use constants::{BOLTZMANN as KB, ELEMENTARY_CHARGE as QE, FREE_SPACE_IMPEDANCE as Z0, HBAR};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrapheneDevice {
    /// Intrinsic electron density, m⁻².
    pub n0: f64,
    /// Capacitance per unit area, F/m².
    pub capacitance: f64,
    /// Electrode area, m².
    pub area: f64,
    /// Temperature, K.
    pub temperature: f64,
    /// Relaxation time, s.
    pub tau: f64,
    /// Fermi velocity, m/s.
    pub fermi_velocity: f64,
}

impl GrapheneDevice {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("n0", self.n0),
            ("capacitance", self.capacitance),
            ("area", self.area),
            ("temperature", self.temperature),
            ("tau", self.tau),
            ("fermi_velocity", self.fermi_velocity),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Scattering rate Γ = 1/τ, s⁻¹.
    pub fn gamma(&self) -> f64 {
        1.0 / self.tau
    }
}

/// Zeroth-order value and first-order perturbation coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerturbedScalar {
    pub zeroth: Complex64,
    pub first: Complex64,
}

/// Unperturbed chemical potential and its first-order response, in joules.
pub fn chemical_potential(dev: &GrapheneDevice) -> PerturbedScalar {
    let root = (PI * dev.n0).sqrt();
    PerturbedScalar {
        zeroth: (HBAR * dev.fermi_velocity * root).into(),
        first: (HBAR * dev.fermi_velocity * dev.capacitance / (QE * root)).into(),
    }
}

/// Surface conductivity and diagnostic of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conductivity {
    pub sigma: PerturbedScalar,
    /// Argument of the interband logarithm.
    pub log_argument: Complex64,
}

/// Zeroth- and first-order surface conductivity (siemens) at angular
/// frequency `omega` (rad/s).
pub fn surface_conductivity(dev: &GrapheneDevice, omega: f64) -> Result<Conductivity> {
    dev.validate()?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!(
            "omega must be positive, got {omega}"
        )));
    }
    let mu = chemical_potential(dev);
    let (mu1, mu2) = (mu.zeroth.re, mu.first.re);
    let kt = KB * dev.temperature;
    let i = Complex64::i();
    let w = Complex64::new(omega, 2.0 * PI * dev.gamma());
    let e2 = QE * QE;

    let log_argument = (4.0 * PI * mu1 - HBAR * w) / (4.0 * PI * mu1 + HBAR * w);
    let interband = i * e2 / (4.0 * PI * HBAR) * log_argument.ln();
    let thermal = mu1 / kt + 2.0 * (-mu1 / kt).exp().ln_1p();
    let intraband = i * 2.0 * e2 * kt / (HBAR * HBAR * w) * thermal;

    let resonant =
        i * e2 / (PI * HBAR) * (w * HBAR) / (4.0 * mu1 * mu1 - w * w * HBAR * HBAR) * mu2;
    let tanh_term = i * e2 * kt / (PI * HBAR * HBAR * w) * (mu1 / (2.0 * kt)).tanh() * (mu2 / kt);

    Ok(Conductivity {
        sigma: PerturbedScalar {
            zeroth: interband + intraband,
            first: resonant + tanh_term,
        },
        log_argument,
    })
}

/// Flags raised while sweeping the conductivity over frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchWarning {
    /// Index of the first sweep point past the crossing.
    pub index: usize,
    pub omega: f64,
}

/// Evaluates [`surface_conductivity`] on every frequency and reports where
/// the interband log argument crosses the negative real axis between
/// consecutive points.
pub fn conductivity_sweep(
    dev: &GrapheneDevice,
    omegas: &[f64],
) -> Result<(Vec<Conductivity>, Vec<BranchWarning>)> {
    let values = omegas
        .iter()
        .map(|&w| surface_conductivity(dev, w))
        .collect::<Result<Vec<_>>>()?;
    let warnings = values
        .windows(2)
        .enumerate()
        .filter_map(|(k, pair)| {
            let (a, b) = (pair[0].log_argument, pair[1].log_argument);
            let crosses = a.re < 0.0 && b.re < 0.0 && (a.im.signum() != b.im.signum());
            crosses.then_some(BranchWarning {
                index: k + 1,
                omega: omegas[k + 1],
            })
        })
        .collect();
    Ok((values, warnings))
}

/// SPP propagation constant `β = (ω/c)√(1 - 4/(Z₀σ)²)` on the decaying branch.
pub fn spp_dispersion(sigma1: Complex64, omega: f64) -> Result<Complex64> {
    if sigma1.norm() == 0.0 {
        return Err(Error::ZeroConductivity);
    }
    let k = omega / constants::SPEED_OF_LIGHT;
    let zs = sigma1 * Z0;
    let beta = (1.0 - 4.0 / (zs * zs)).sqrt() * k;
    Ok(if beta.im < 0.0 { -beta } else { beta })
}

/// First-order change of the propagation constant.
pub fn perturbed_dispersion(
    beta1: Complex64,
    sigma1: Complex64,
    sigma2: Complex64,
) -> Result<Complex64> {
    let half = sigma1 * Z0 / 2.0;
    let denominator = sigma1 * (1.0 - half * half);
    if denominator.norm() <= 1e-30 {
        return Err(Error::NearSingularDenominator(denominator.norm()));
    }
    Ok(beta1 * sigma2 / denominator)
}

/// Effective permittivity `(β₁/k)²` and its perturbation `2β₁β₂/k²`.
pub fn effective_permittivity(
    beta1: Complex64,
    beta2: Complex64,
    k: f64,
) -> Result<PerturbedScalar> {
    if !(k > 0.0) {
        return Err(Error::NonPositiveInput(k));
    }
    Ok(PerturbedScalar {
        zeroth: (beta1 / k) * (beta1 / k),
        first: 2.0 * beta1 * beta2 / (k * k),
    })
}

/// All device quantities at one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeviceReport {
    pub omega: f64,
    pub mu: PerturbedScalar,
    pub sigma: PerturbedScalar,
    pub beta: PerturbedScalar,
    pub eps: PerturbedScalar,
}

pub fn device_report(dev: &GrapheneDevice, omega: f64) -> Result<DeviceReport> {
    let mu = chemical_potential(dev);
    let sigma = surface_conductivity(dev, omega)?.sigma;
    let beta1 = spp_dispersion(sigma.zeroth, omega)?;
    let beta2 = perturbed_dispersion(beta1, sigma.zeroth, sigma.first)?;
    let eps = effective_permittivity(beta1, beta2, omega / constants::SPEED_OF_LIGHT)?;
    Ok(DeviceReport {
        omega,
        mu,
        sigma,
        beta: PerturbedScalar {
            zeroth: beta1,
            first: beta2,
        },
        eps,
    })
}
