//! Fixtures shared by the benchmarks.

use cvnet_core::{Channel, CovMatrix, ElementParams, MicrowaveNoise, NetworkSpec};

pub const DEPTH: f64 = 0.497;

pub const CHANNEL: Channel = Channel {
    alpha: 0.005,
    distance: 0.1,
    eta0: 0.99,
};

pub fn network(n_elements: usize) -> NetworkSpec {
    NetworkSpec {
        n_elements,
        element: ElementParams::baseline(),
        noise: MicrowaveNoise::pure(DEPTH),
        channel: CHANNEL,
    }
}

pub fn pair_cm() -> CovMatrix {
    cvnet_core::qelement::output_pair_cm(&ElementParams::baseline(), &MicrowaveNoise::pure(DEPTH))
        .expect("baseline element is stable")
}
