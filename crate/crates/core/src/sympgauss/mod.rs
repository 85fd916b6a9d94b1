//! Covariance-matrix algebra for zero-mean Gaussian states.
//!
//! Quadratures are ordered `(x₁, y₁, x₂, y₂, …)` and the vacuum has variance
//! `1/2` per quadrature (ħ = 1). Mode indices are zero-based throughout.

mod channels;
mod spectrum;

pub use channels::{
    beamsplitter, channel_transmissivity, homodyne_condition, homodyne_condition_with,
    lossy_channel, passive_transform, reduced_cm, symplectic_transform, Quadrature,
};
pub use spectrum::{
    fidelity_from_eig, is_physical, is_physical_with, log_negativity, min_symplectic_eig_pt,
    min_symplectic_eig_pt_with, partial_transpose, symplectic_spectrum, symplectic_spectrum_with,
    PhysicalityReport,
};

use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Real symmetric `2n × 2n` covariance matrix.
#[derive(Debug, Clone)]
pub struct CovMatrix {
    data: DMatrix<f64>,
    validated: bool,
}

/// Compares entries only; whether physicality was checked is not part of the value.
impl PartialEq for CovMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl CovMatrix {
    /// Builds a covariance matrix, rejecting non-square, odd-sized or
    /// asymmetric input. The stored matrix is exactly symmetrized.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        Self::new_with(data, &Tolerances::default())
    }

    pub fn new_with(data: DMatrix<f64>, tol: &Tolerances) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::BadShape { rows, cols });
        }
        let scale = data.amax().max(1.0);
        let asym = (&data - data.transpose()).amax();
        if !asym.is_finite() || asym > tol.symmetry * scale {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self::from_symmetric_unchecked(
            (&data + data.transpose()) * 0.5,
        ))
    }

    /// Wraps a matrix already known to be symmetric (internal fast path).
    pub(crate) fn from_symmetric_unchecked(data: DMatrix<f64>) -> Self {
        Self {
            data,
            validated: false,
        }
    }

    pub fn from_row_slice(dim: usize, values: &[f64]) -> Result<Self> {
        if values.len() != dim * dim {
            return Err(Error::BadShape {
                rows: dim,
                cols: values.len() / dim.max(1),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, values))
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self::from_symmetric_unchecked(DMatrix::identity(2 * n_modes, 2 * n_modes) * 0.5)
    }

    /// Thermal state with `nbar` mean excitations in every mode.
    pub fn thermal(n_modes: usize, nbar: f64) -> Self {
        Self::from_symmetric_unchecked(DMatrix::identity(2 * n_modes, 2 * n_modes) * (nbar + 0.5))
    }

    /// Two-mode squeezed vacuum with squeezing parameter `r`.
    pub fn two_mode_squeezed(r: f64) -> Self {
        let c = (2.0 * r).cosh() / 2.0;
        let s = (2.0 * r).sinh() / 2.0;
        let mut m = DMatrix::identity(4, 4) * c;
        m[(0, 2)] = s;
        m[(2, 0)] = s;
        m[(1, 3)] = -s;
        m[(3, 1)] = -s;
        Self::from_symmetric_unchecked(m)
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &CovMatrix) -> CovMatrix {
        let (a, b) = (self.dim(), other.dim());
        let mut m = DMatrix::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a)).copy_from(&self.data);
        m.view_mut((a, a), (b, b)).copy_from(&other.data);
        Self::from_symmetric_unchecked(m)
    }

    /// Runs the uncertainty-relation check and records that it passed.
    pub fn validated(self) -> Result<Self> {
        self.validated_with(&Tolerances::default())
    }

    pub fn validated_with(mut self, tol: &Tolerances) -> Result<Self> {
        let report = is_physical_with(&self, tol);
        if !report.physical {
            return Err(Error::NotPhysical(report.margin));
        }
        self.validated = true;
        Ok(self)
    }

    /// Whether [`CovMatrix::validated`] has confirmed physicality.
    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn n_modes(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[(row, col)]
    }

    /// 2×2 block between modes `i` and `j`.
    pub fn block(&self, i: usize, j: usize) -> nalgebra::Matrix2<f64> {
        self.data.fixed_view::<2, 2>(2 * i, 2 * j).into_owned()
    }

    pub fn max_abs_diff(&self, other: &CovMatrix) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        (&self.data - &other.data).amax()
    }

    pub(crate) fn check_mode(&self, index: usize) -> Result<()> {
        if index >= self.n_modes() {
            return Err(Error::IndexOutOfRange {
                index,
                n_modes: self.n_modes(),
            });
        }
        Ok(())
    }
}

/// The symplectic form `Ω = ⊕ [[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        Self { n_modes }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let dim = 2 * self.n_modes;
        let mut m = DMatrix::zeros(dim, dim);
        for k in 0..self.n_modes {
            m[(2 * k, 2 * k + 1)] = 1.0;
            m[(2 * k + 1, 2 * k)] = -1.0;
        }
        m
    }
}

/// Split of the modes into two non-empty complementary sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side_a: BTreeSet<usize>,
    side_b: BTreeSet<usize>,
}

impl Bipartition {
    pub fn new(n_modes: usize, side_a: impl IntoIterator<Item = usize>) -> Result<Self> {
        let side_a: BTreeSet<usize> = side_a.into_iter().collect();
        if let Some(&bad) = side_a.iter().find(|&&k| k >= n_modes) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                n_modes,
            });
        }
        let side_b: BTreeSet<usize> = (0..n_modes).filter(|k| !side_a.contains(k)).collect();
        if side_a.is_empty() || side_b.is_empty() {
            return Err(Error::InvalidBipartition(format!(
                "both sides must be non-empty (|A|={}, |B|={})",
                side_a.len(),
                side_b.len()
            )));
        }
        Ok(Self { side_a, side_b })
    }

    /// Mode `k` against all the others.
    pub fn one_vs_rest(n_modes: usize, k: usize) -> Result<Self> {
        Self::new(n_modes, [k])
    }

    pub fn side_a(&self) -> &BTreeSet<usize> {
        &self.side_a
    }

    pub fn side_b(&self) -> &BTreeSet<usize> {
        &self.side_b
    }

    pub fn n_modes(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }
}
