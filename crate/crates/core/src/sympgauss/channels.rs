use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{CovMatrix, SymplecticForm};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrature {
    X,
    Y,
}

impl Quadrature {
    fn offset(self) -> usize {
        match self {
            Quadrature::X => 0,
            Quadrature::Y => 1,
        }
    }
}

/// Effective transmissivity `η₀·exp(-α l / 10)` of a free-space link.
///
/// `alpha` is the attenuation in dB/km and `distance` the length in km.
pub fn channel_transmissivity(eta0: f64, alpha: f64, distance: f64) -> Result<f64> {
    if !(eta0 > 0.0 && eta0 <= 1.0) {
        return Err(Error::Domain(format!(
            "eta0 must lie in (0, 1], got {eta0}"
        )));
    }
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be >= 0, got {alpha}")));
    }
    if !(distance >= 0.0) || !distance.is_finite() {
        return Err(Error::Domain(format!(
            "distance must be >= 0, got {distance}"
        )));
    }
    Ok(eta0 * (-alpha * distance / 10.0).exp())
}

/// Pure-loss channel on every mode: `ηV + (1-η)/2 · I`.
pub fn lossy_channel(v: &CovMatrix, eta: f64) -> Result<CovMatrix> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Domain(format!(
            "transmissivity must lie in [0, 1], got {eta}"
        )));
    }
    let d = v.dim();
    let data = v.matrix() * eta + DMatrix::identity(d, d) * (0.5 * (1.0 - eta));
    Ok(CovMatrix::from_symmetric_unchecked(data))
}

/// Applies `S V Sᵀ` after confirming `S Ω Sᵀ = Ω`.
pub fn symplectic_transform(
    v: &CovMatrix,
    s: &DMatrix<f64>,
    tol: &Tolerances,
) -> Result<CovMatrix> {
    if s.shape() != (v.dim(), v.dim()) {
        return Err(Error::BadShape {
            rows: s.nrows(),
            cols: s.ncols(),
        });
    }
    let omega = SymplecticForm::new(v.n_modes()).matrix();
    let dev = (s * &omega * s.transpose() - &omega).amax();
    if dev > tol.symplectic * s.amax().powi(2).max(1.0) {
        return Err(Error::NotSymplectic(dev));
    }
    let out = s * v.matrix() * s.transpose();
    Ok(CovMatrix::from_symmetric_unchecked(
        (&out + out.transpose()) * 0.5,
    ))
}

/// Applies the orthogonal mode mixing `o` (rows = outputs) to the listed
/// modes, rotating `x` and `y` quadratures identically.
pub fn passive_transform(v: &CovMatrix, modes: &[usize], o: &DMatrix<f64>) -> Result<CovMatrix> {
    if o.shape() != (modes.len(), modes.len()) {
        return Err(Error::BadShape {
            rows: o.nrows(),
            cols: o.ncols(),
        });
    }
    for &m in modes {
        v.check_mode(m)?;
    }
    let mut s = DMatrix::identity(v.dim(), v.dim());
    for &m in modes {
        s[(2 * m, 2 * m)] = 0.0;
        s[(2 * m + 1, 2 * m + 1)] = 0.0;
    }
    for (a, &ma) in modes.iter().enumerate() {
        for (b, &mb) in modes.iter().enumerate() {
            s[(2 * ma, 2 * mb)] = o[(a, b)];
            s[(2 * ma + 1, 2 * mb + 1)] = o[(a, b)];
        }
    }
    symplectic_transform(v, &s, &Tolerances::default())
}

/// Beam splitter with transmittance `t` between modes `i` and `j`.
pub fn beamsplitter(v: &CovMatrix, i: usize, j: usize, t: f64) -> Result<CovMatrix> {
    v.check_mode(i)?;
    v.check_mode(j)?;
    if i == j {
        return Err(Error::Domain(
            "beam splitter needs two distinct modes".into(),
        ));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!(
            "transmittance must lie in [0, 1], got {t}"
        )));
    }
    let (c, s) = (t.sqrt(), (1.0 - t).sqrt());
    let o = DMatrix::from_row_slice(2, 2, &[c, s, -s, c]);
    passive_transform(v, &[i, j], &o)
}

/// Submatrix on the listed modes, in the given order.
pub fn reduced_cm(v: &CovMatrix, modes: &[usize]) -> Result<CovMatrix> {
    for (k, &m) in modes.iter().enumerate() {
        v.check_mode(m)?;
        if modes[..k].contains(&m) {
            return Err(Error::Domain(format!("mode {m} listed twice")));
        }
    }
    let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
    let data = DMatrix::from_fn(idx.len(), idx.len(), |r, c| v.get(idx[r], idx[c]));
    Ok(CovMatrix::from_symmetric_unchecked(data))
}

/// Conditional state of the remaining modes after homodyning one quadrature
/// of `mode`. The measured mode is removed.
pub fn homodyne_condition(v: &CovMatrix, mode: usize, quadrature: Quadrature) -> Result<CovMatrix> {
    homodyne_condition_with(v, mode, quadrature, &Tolerances::default())
}

pub fn homodyne_condition_with(
    v: &CovMatrix,
    mode: usize,
    quadrature: Quadrature,
    tol: &Tolerances,
) -> Result<CovMatrix> {
    v.check_mode(mode)?;
    if v.n_modes() < 2 {
        return Err(Error::Domain(
            "homodyne conditioning needs at least two modes".into(),
        ));
    }
    let k = 2 * mode + quadrature.offset();
    let var = v.get(k, k);
    if var < tol.pseudoinverse {
        return Err(Error::SingularMeasurement(var));
    }
    let kept: Vec<usize> = (0..v.dim()).filter(|&r| r / 2 != mode).collect();
    let corr = DVector::from_fn(kept.len(), |r, _| v.get(kept[r], k));
    let data = DMatrix::from_fn(kept.len(), kept.len(), |r, c| {
        v.get(kept[r], kept[c]) - corr[r] * corr[c] / var
    });
    Ok(CovMatrix::from_symmetric_unchecked(data))
}
