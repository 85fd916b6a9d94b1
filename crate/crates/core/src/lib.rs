//! Simulation core for continuous-variable teleportation networks built from
//! graphene-plasmonic waveguide elements.
//!
//! - [`sympgauss`]: covariance-matrix algebra, entanglement and fidelity.
//! - [`qelement`]: stationary output state of a single element.
//! - [`telenet`]: multipartite Bell conditioning, channel loss and network metrics.
//! - [`gplasmon`]: graphene conductivity and SPP dispersion calculator.

// Range checks are written as `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gplasmon;
pub mod qelement;
mod quadrature;
pub mod sympgauss;
pub mod telenet;
pub mod tolerances;

pub use error::{Error, Result};
pub use qelement::{ElementParams, MicrowaveNoise, NoiseMoments, StabilityMargins};
pub use sympgauss::{Bipartition, CovMatrix, Quadrature, SymplecticForm};
pub use telenet::{Channel, ConditionalBlocks, NetworkOutcome, NetworkSpec};
pub use tolerances::Tolerances;
