use nalgebra::{DMatrix, SymmetricEigen, SVD};

use super::{Bipartition, CovMatrix, SymplecticForm};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

const SVD_MAX_ITER: usize = 10_000;

/// Outcome of the uncertainty-relation check `V + iΩ/2 ⪰ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalityReport {
    pub physical: bool,
    /// Minimum eigenvalue of the Hermitian matrix `V + iΩ/2`.
    pub margin: f64,
}

pub fn is_physical(v: &CovMatrix) -> PhysicalityReport {
    is_physical_with(v, &Tolerances::default())
}

pub fn is_physical_with(v: &CovMatrix, tol: &Tolerances) -> PhysicalityReport {
    // Real 2d × 2d embedding of the Hermitian matrix V + iK, K = Ω/2:
    // [[V, -K], [K, V]] has the spectrum of V + iK with every eigenvalue doubled.
    let d = v.dim();
    let k = SymplecticForm::new(v.n_modes()).matrix() * 0.5;
    let mut h = DMatrix::zeros(2 * d, 2 * d);
    h.view_mut((0, 0), (d, d)).copy_from(v.matrix());
    h.view_mut((d, d), (d, d)).copy_from(v.matrix());
    h.view_mut((0, d), (d, d)).copy_from(&(-&k));
    h.view_mut((d, 0), (d, d)).copy_from(&k);
    let margin = SymmetricEigen::new(h).eigenvalues.min();
    PhysicalityReport {
        physical: margin >= -tol.physicality,
        margin,
    }
}

/// Symplectic eigenvalues `ν₁ ≤ … ≤ νₙ`, the moduli of the `±iν` eigenvalue
/// pairs of `ΩV`.
///
/// Computed as the singular values of the antisymmetric `V^{1/2} Ω V^{1/2}`,
/// which come in equal pairs `(ν, ν)`.
pub fn symplectic_spectrum(v: &CovMatrix) -> Result<Vec<f64>> {
    symplectic_spectrum_with(v, &Tolerances::default())
}

pub fn symplectic_spectrum_with(v: &CovMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    let eig = SymmetricEigen::new(v.matrix().clone());
    let min_eig = eig.eigenvalues.min();
    if !(min_eig > tol.positive_definite) {
        return Err(Error::NonPositiveDefinite(min_eig));
    }
    let sqrt_v = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
        * eig.eigenvectors.transpose();
    let a = &sqrt_v * SymplecticForm::new(v.n_modes()).matrix() * &sqrt_v;
    let svd =
        SVD::try_new(a, false, false, f64::EPSILON, SVD_MAX_ITER).ok_or(Error::EigenFailure)?;
    let mut moduli: Vec<f64> = svd.singular_values.iter().copied().collect();
    moduli.sort_by(f64::total_cmp);

    // Singular values carry absolute error ~ ε‖A‖, so pairs are compared on
    // the scale of the largest one.
    let scale = moduli.last().copied().unwrap_or(0.0);
    let mut spectrum = Vec::with_capacity(v.n_modes());
    for pair in moduli.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        if (a - b).abs() > tol.pairing * scale {
            return Err(Error::PairingFailure(a, b));
        }
        spectrum.push(0.5 * (a + b));
    }
    Ok(spectrum)
}

/// Flips the sign of the `y` quadrature of each listed mode.
pub fn partial_transpose(v: &CovMatrix, modes: &[usize]) -> Result<CovMatrix> {
    for &m in modes {
        v.check_mode(m)?;
    }
    let mut sign = vec![1.0; v.dim()];
    for &m in modes {
        sign[2 * m + 1] = -1.0;
    }
    let data = DMatrix::from_fn(v.dim(), v.dim(), |r, c| sign[r] * sign[c] * v.get(r, c));
    Ok(CovMatrix::from_symmetric_unchecked(data))
}

/// Smallest symplectic eigenvalue of `V` partially transposed on `part.side_a()`.
pub fn min_symplectic_eig_pt(v: &CovMatrix, part: &Bipartition) -> Result<f64> {
    min_symplectic_eig_pt_with(v, part, &Tolerances::default())
}

pub fn min_symplectic_eig_pt_with(
    v: &CovMatrix,
    part: &Bipartition,
    tol: &Tolerances,
) -> Result<f64> {
    if part.n_modes() != v.n_modes() {
        return Err(Error::InvalidBipartition(format!(
            "bipartition covers {} modes, state has {}",
            part.n_modes(),
            v.n_modes()
        )));
    }
    let side: Vec<usize> = part.side_a().iter().copied().collect();
    let pt = partial_transpose(v, &side)?;
    let spectrum = symplectic_spectrum_with(&pt, tol)?;
    Ok(spectrum[0])
}

/// `E_N = max(0, -ln 2η⁻)`.
pub fn log_negativity(v: &CovMatrix, part: &Bipartition) -> Result<f64> {
    let eta = min_symplectic_eig_pt(v, part)?;
    Ok((-(2.0 * eta).ln()).max(0.0))
}

/// Optimal coherent-state teleportation fidelity `1 / (1 + 2η⁻)`.
pub fn fidelity_from_eig(eta_minus: f64) -> Result<f64> {
    if !(eta_minus > 0.0) || !eta_minus.is_finite() {
        return Err(Error::NonPositiveInput(eta_minus));
    }
    Ok(1.0 / (1.0 + 2.0 * eta_minus))
}
