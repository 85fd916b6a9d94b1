//! One graphene-loaded capacitor: two optical SPP modes (`a₂`, `a₃`) coupled
//! to a driven microwave mode `b`.
//!
//! All rates and couplings are dimensionless, in units of the microwave
//! frequency ω_m. Complex-basis matrices act on `(a₂, a₂†, a₃, a₃†, b, b†)`.

use nalgebra::{Matrix2, Matrix6, SMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;
use crate::sympgauss::CovMatrix;

/// Complex matrix over the basis `(a₂, a₂†, a₃, a₃†, b, b†)`.
pub type BasisMatrix = Matrix6<Complex64>;

pub const A2: usize = 0;
pub const A2_DAG: usize = 1;
pub const A3: usize = 2;
pub const A3_DAG: usize = 3;
pub const B: usize = 4;
pub const B_DAG: usize = 5;

const SCHUR_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementParams {
    pub gamma_m: f64,
    pub gamma_2: f64,
    pub gamma_3: f64,
    /// Effective beam-splitter coupling between `a₂` and `b`.
    pub g2: f64,
    /// Effective down-conversion coupling between `a₃` and `b`.
    pub g3: f64,
}

impl ElementParams {
    pub fn new(gamma_m: f64, gamma_2: f64, gamma_3: f64, g2: f64, g3: f64) -> Result<Self> {
        let p = Self {
            gamma_m,
            gamma_2,
            gamma_3,
            g2,
            g3,
        };
        p.validate()?;
        Ok(p)
    }

    /// Operating point used by the figure presets: γ_m = 0.001,
    /// γ₂ = γ₃ = 0.02, 𝒢₂ = 0.2, 𝒢₃ = 0.14.
    pub fn baseline() -> Self {
        Self {
            gamma_m: 0.001,
            gamma_2: 0.02,
            gamma_3: 0.02,
            g2: 0.2,
            g3: 0.14,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("gamma_m", self.gamma_m),
            ("gamma_2", self.gamma_2),
            ("gamma_3", self.gamma_3),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Domain(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        for (name, value) in [("g2", self.g2), ("g3", self.g3)] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::Domain(format!(
                    "{name} must be finite and non-negative, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Multiplies every rate and coupling by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            gamma_m: self.gamma_m * factor,
            gamma_2: self.gamma_2 * factor,
            gamma_3: self.gamma_3 * factor,
            g2: self.g2 * factor,
            g3: self.g3 * factor,
        }
    }
}

/// Single-mode Gaussian microwave drive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MicrowaveNoise {
    /// In (0, 1].
    pub purity: f64,
    /// Nonclassicality depth, in [0, 0.5).
    pub depth: f64,
    #[serde(default)]
    pub phase: f64,
}

impl MicrowaveNoise {
    pub fn new(purity: f64, depth: f64, phase: f64) -> Result<Self> {
        let n = Self {
            purity,
            depth,
            phase,
        };
        n.validate()?;
        Ok(n)
    }

    pub fn pure(depth: f64) -> Self {
        Self {
            purity: 1.0,
            depth,
            phase: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.purity > 0.0 && self.purity <= 1.0) {
            return Err(Error::Domain(format!(
                "purity must lie in (0, 1], got {}",
                self.purity
            )));
        }
        if !(self.depth >= 0.0 && self.depth < 0.5) {
            return Err(Error::Domain(format!(
                "nonclassicality depth must lie in [0, 0.5), got {}",
                self.depth
            )));
        }
        if !self.phase.is_finite() {
            return Err(Error::Domain("phase must be finite".into()));
        }
        Ok(())
    }
}

/// Second moments `⟨b_in b_in⟩ = m` and `⟨b_in† b_in⟩ = n` of the drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseMoments {
    pub m: Complex64,
    pub n: f64,
}

impl NoiseMoments {
    pub fn is_physical(&self) -> bool {
        self.m.norm_sqr() <= self.n * (self.n + 1.0) + 1e-9
    }
}

pub fn noise_moments(noise: &MicrowaveNoise) -> Result<NoiseMoments> {
    noise.validate()?;
    let squeeze = 1.0 - 2.0 * noise.depth;
    let base = 1.0 / (4.0 * noise.purity * noise.purity * squeeze);
    let m = base - squeeze / 4.0;
    let n = base + squeeze / 4.0;
    Ok(NoiseMoments {
        m: Complex64::from_polar(m, noise.phase),
        n,
    })
}

pub fn drift_matrix(p: &ElementParams) -> BasisMatrix {
    let i = Complex64::i();
    let mut a = BasisMatrix::zeros();
    a[(A2, A2)] = (-p.gamma_2).into();
    a[(A2_DAG, A2_DAG)] = (-p.gamma_2).into();
    a[(A3, A3)] = (-p.gamma_3).into();
    a[(A3_DAG, A3_DAG)] = (-p.gamma_3).into();
    a[(B, B)] = (-p.gamma_m).into();
    a[(B_DAG, B_DAG)] = (-p.gamma_m).into();

    a[(A2, B)] = -i * p.g2;
    a[(A2_DAG, B_DAG)] = i * p.g2;
    a[(A3, B_DAG)] = -i * p.g3;
    a[(A3_DAG, B)] = i * p.g3;
    a[(B, A2)] = -i * p.g2;
    a[(B, A3_DAG)] = -i * p.g3;
    a[(B_DAG, A2_DAG)] = i * p.g2;
    a[(B_DAG, A3)] = i * p.g3;
    a
}

/// Routh-Hurwitz margins; the element is stable when all three are positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityMargins {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StabilityMargins {
    pub fn min(&self) -> f64 {
        self.s1.min(self.s2).min(self.s3)
    }
}

pub fn stability_margins(p: &ElementParams) -> StabilityMargins {
    let (gm, g2, g3) = (p.gamma_m, p.gamma_2, p.gamma_3);
    let (c2, c3) = (p.g2 * p.g2, p.g3 * p.g3);
    StabilityMargins {
        s1: gm + g2 + g3,
        s2: gm + c2 / g2 - c3 / g3,
        s3: g2 + g3 + c2 / (gm + g3) - c3 / (gm + g2),
    }
}

/// Largest real part among the eigenvalues of the drift matrix.
pub fn max_drift_real_part(p: &ElementParams) -> Result<f64> {
    let schur =
        Schur::try_new(drift_matrix(p), f64::EPSILON, SCHUR_MAX_ITER).ok_or(Error::EigenFailure)?;
    let eig = schur.eigenvalues().ok_or(Error::EigenFailure)?;
    Ok(eig.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
}

/// Stability by both Routh-Hurwitz margins and a direct eigensolve; the two
/// must agree.
pub fn is_stable(p: &ElementParams) -> Result<bool> {
    let margin = stability_margins(p).min();
    let max_re = max_drift_real_part(p)?;
    let by_margins = margin > 0.0;
    let by_eigen = max_re < 0.0;
    if by_margins != by_eigen {
        return Err(Error::CriteriaDisagreement { margin, max_re });
    }
    Ok(by_margins)
}

fn coupling_diagonals(p: &ElementParams) -> ([f64; 6], [f64; 6]) {
    let k2 = (2.0 * p.gamma_2).sqrt();
    let k3 = (2.0 * p.gamma_3).sqrt();
    let km = (2.0 * p.gamma_m).sqrt();
    ([k2, k2, k3, k3, km, km], [k2, k2, k3, k3, 1.0, 1.0])
}

/// Input-output transfer matrix `T(ω) = F (-𝒜 - iω)⁻¹ ν - I`.
pub fn transfer_matrix(p: &ElementParams, omega: f64) -> Result<BasisMatrix> {
    let (nu, f) = coupling_diagonals(p);
    let resolvent = (-drift_matrix(p) - BasisMatrix::identity() * Complex64::new(0.0, omega))
        .try_inverse()
        .ok_or(Error::SingularResolvent(omega))?;
    if resolvent.iter().any(|z| !z.is_finite()) {
        return Err(Error::SingularResolvent(omega));
    }
    Ok(BasisMatrix::from_fn(|r, c| f[r] * resolvent[(r, c)] * nu[c]) - BasisMatrix::identity())
}

/// Input correlation matrix `⟨u_in,r u_in,c⟩` over the basis.
pub fn diffusion_matrix(nm: &NoiseMoments) -> BasisMatrix {
    let mut d = BasisMatrix::zeros();
    d[(A2, A2_DAG)] = 1.0.into();
    d[(A3, A3_DAG)] = 1.0.into();
    d[(B, B)] = nm.m;
    d[(B, B_DAG)] = (nm.n + 1.0).into();
    d[(B_DAG, B)] = nm.n.into();
    d[(B_DAG, B_DAG)] = nm.m.conj();
    d
}

/// Map `(a, a†) → (x, y)` applied blockwise to all three modes.
fn quadrature_map() -> BasisMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let w = [
        [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(0.0, -s), Complex64::new(0.0, s)],
    ];
    let mut q = BasisMatrix::zeros();
    for blk in 0..3 {
        for r in 0..2 {
            for c in 0..2 {
                q[(2 * blk + r, 2 * blk + c)] = w[r][c];
            }
        }
    }
    q
}

/// Complex quadrature-basis spectral matrix `Q T(ω) 𝒩 Tᵀ(-ω) Qᵀ`.
fn quadrature_spectrum(p: &ElementParams, nm: &NoiseMoments, omega: f64) -> Result<BasisMatrix> {
    let t_plus = transfer_matrix(p, omega)?;
    let t_minus = transfer_matrix(p, -omega)?;
    let q = quadrature_map();
    Ok(q * t_plus * diffusion_matrix(nm) * t_minus.transpose() * q.transpose())
}

/// Real symmetric 4×4 optical block (modes out₂ = Alice, out₃ = Bob) of a
/// quadrature spectral matrix, after checking the per-mode commutators.
fn optical_block(s: &BasisMatrix) -> Result<CovMatrix> {
    for mode in 0..2 {
        let o = 2 * mode;
        let imag = Matrix2::new(
            s[(o, o)].im,
            s[(o, o + 1)].im,
            s[(o + 1, o)].im,
            s[(o + 1, o + 1)].im,
        );
        let dev = (imag - Matrix2::new(0.0, 0.5, -0.5, 0.0)).amax();
        let scale = s[(o, o)].re.abs().max(s[(o + 1, o + 1)].re.abs()).max(1.0);
        if dev > 1e-9 * scale {
            return Err(Error::CommutatorMismatch(dev));
        }
    }
    let block: SMatrix<f64, 4, 4> = SMatrix::from_fn(|r, c| s[(r, c)].re);
    let sym = (block + block.transpose()) * 0.5;
    let data = nalgebra::DMatrix::from_fn(4, 4, |r, c| sym[(r, c)]);
    Ok(CovMatrix::from_symmetric_unchecked(data))
}

/// Output covariance of the (Alice, Bob) pair from the spectral density at `omega`.
pub fn output_spectral_cm(
    p: &ElementParams,
    noise: &MicrowaveNoise,
    omega: f64,
) -> Result<CovMatrix> {
    p.validate()?;
    let nm = noise_moments(noise)?;
    optical_block(&quadrature_spectrum(p, &nm, omega)?)
}

/// Stationary zero-bandwidth output covariance matrix of one element.
///
/// Refuses unstable parameters: the stationary state does not exist there.
pub fn output_pair_cm(p: &ElementParams, noise: &MicrowaveNoise) -> Result<CovMatrix> {
    p.validate()?;
    if !is_stable(p)? {
        let m = stability_margins(p);
        return Err(Error::Unstable {
            s1: m.s1,
            s2: m.s2,
            s3: m.s3,
        });
    }
    output_spectral_cm(p, noise, 0.0)
}

/// Flat-window average of the spectral covariance over `[-bandwidth, bandwidth]`.
pub fn output_band_cm(
    p: &ElementParams,
    noise: &MicrowaveNoise,
    bandwidth: f64,
    rel_tol: f64,
) -> Result<CovMatrix> {
    if !(bandwidth > 0.0) || !bandwidth.is_finite() {
        return Err(Error::Domain(format!(
            "bandwidth must be positive, got {bandwidth}"
        )));
    }
    if !is_stable(p)? {
        let m = stability_margins(p);
        return Err(Error::Unstable {
            s1: m.s1,
            s2: m.s2,
            s3: m.s3,
        });
    }
    let nm = noise_moments(noise)?;
    let integrand = |w: f64| -> Result<SMatrix<f64, 4, 4>> {
        let s = quadrature_spectrum(p, &nm, w)?;
        Ok(SMatrix::from_fn(|r, c| s[(r, c)].re))
    };
    let total = adaptive_simpson(integrand, -bandwidth, bandwidth, rel_tol)?;
    let avg = total / (2.0 * bandwidth);
    let sym = (avg + avg.transpose()) * 0.5;
    Ok(CovMatrix::from_symmetric_unchecked(
        nalgebra::DMatrix::from_fn(4, 4, |r, c| sym[(r, c)]),
    ))
}
