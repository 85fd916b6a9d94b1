use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}; expected a square matrix of even dimension")]
    BadShape { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("covariance matrix violates the uncertainty relation (min eigenvalue {0:e})")]
    NotPhysical(f64),

    #[error("matrix is not positive definite (min eigenvalue {0:e})")]
    NonPositiveDefinite(f64),

    #[error("eigenvalues of the symplectic product do not pair up (moduli {0:e} vs {1:e})")]
    PairingFailure(f64, f64),

    #[error("eigenvalue iteration did not converge")]
    EigenFailure,

    #[error("mode index {index} out of range for {n_modes} modes")]
    IndexOutOfRange { index: usize, n_modes: usize },

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("{0}")]
    Domain(String),

    #[error("input must be positive, got {0}")]
    NonPositiveInput(f64),

    #[error("measured quadrature variance {0:e} is below the conditioning threshold")]
    SingularMeasurement(f64),

    #[error("transformation is not symplectic (deviation {0:e})")]
    NotSymplectic(f64),

    #[error("element is not stable (S1={s1}, S2={s2}, S3={s3})")]
    Unstable { s1: f64, s2: f64, s3: f64 },

    #[error("Routh-Hurwitz margins ({margin:e}) and drift eigenvalues (max re {max_re:e}) disagree on stability")]
    CriteriaDisagreement { margin: f64, max_re: f64 },

    #[error("resolvent is singular at omega = {0}")]
    SingularResolvent(f64),

    #[error("local commutator block deviates from i/2 by {0:e}")]
    CommutatorMismatch(f64),

    #[error("Alice covariance block is singular (condition number {0:e})")]
    SingularAliceBlock(f64),

    #[error("surface conductivity is zero")]
    ZeroConductivity,

    #[error("dispersion denominator {0:e} is too close to zero (SPP cutoff)")]
    NearSingularDenominator(f64),

    #[error("quadrature did not converge to the requested tolerance")]
    QuadratureFailure,
}

pub type Result<T> = std::result::Result<T, Error>;
