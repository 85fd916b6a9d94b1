use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by the Gaussian-state routines.
///
/// Every field has a default; configuration files may override any subset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative asymmetry accepted when constructing a covariance matrix.
    pub symmetry: f64,
    /// Lowest admissible eigenvalue of `V + iΩ/2`.
    pub physicality: f64,
    /// Relative mismatch allowed between paired moduli of `eig(ΩV)`.
    pub pairing: f64,
    /// Smallest eigenvalue for a matrix to count as positive definite.
    pub positive_definite: f64,
    /// Variance threshold of the rank-1 pseudoinverse in homodyne conditioning.
    pub pseudoinverse: f64,
    /// Deviation allowed in `S Ω Sᵀ = Ω`.
    pub symplectic: f64,
    /// Condition-number ceiling for the Alice block inverse.
    pub max_condition: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            symmetry: 1e-12,
            physicality: 1e-10,
            pairing: 1e-8,
            positive_definite: 1e-12,
            pseudoinverse: 1e-12,
            symplectic: 1e-12,
            max_condition: 1e12,
        }
    }
}
