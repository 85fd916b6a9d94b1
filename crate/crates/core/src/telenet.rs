//! Star network of identical elements: Alice outputs are combined on a
//! beam-splitter cascade and homodyned, leaving the Bob outputs in a fully
//! symmetric N-partite entangled state that is then sent through lossy links.
//!
//! In a joint covariance matrix Alice modes come first (`0..n`), Bob modes
//! after (`n..2n`).

use nalgebra::{DMatrix, Matrix2, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qelement::{output_pair_cm, ElementParams, MicrowaveNoise};
use crate::sympgauss::{
    channel_transmissivity, fidelity_from_eig, homodyne_condition_with, log_negativity,
    lossy_channel, min_symplectic_eig_pt_with, passive_transform, reduced_cm, Bipartition,
    CovMatrix, Quadrature,
};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Channel {
    /// Attenuation in dB/km.
    pub alpha: f64,
    /// Hub-to-Bob distance in km, shared by all Bob modes.
    pub distance: f64,
    /// Lumped detection and coupling efficiency, in (0, 1].
    pub eta0: f64,
}

impl Channel {
    pub const LOSSLESS: Channel = Channel {
        alpha: 0.0,
        distance: 0.0,
        eta0: 1.0,
    };

    pub fn transmissivity(&self) -> Result<f64> {
        channel_transmissivity(self.eta0, self.alpha, self.distance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    pub n_elements: usize,
    pub element: ElementParams,
    pub noise: MicrowaveNoise,
    pub channel: Channel,
}

impl NetworkSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_elements < 2 {
            return Err(Error::Domain(format!(
                "a network needs at least two elements, got {}",
                self.n_elements
            )));
        }
        self.element.validate()?;
        self.noise.validate()?;
        self.channel.transmissivity()?;
        Ok(())
    }
}

/// Conditional Bob blocks: `v_diag` on every diagonal 2×2 block, `v_off` on
/// every off-diagonal one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalBlocks {
    pub v_diag: Matrix2<f64>,
    pub v_off: Matrix2<f64>,
}

/// Joint Alice/Bob covariance for independent elements with the given pair
/// states (Alice = mode 0 of each pair, Bob = mode 1).
pub fn joint_cm_from_pairs(pairs: &[CovMatrix]) -> Result<CovMatrix> {
    let n = pairs.len();
    if n < 2 {
        return Err(Error::Domain(format!(
            "need at least two elements, got {n}"
        )));
    }
    let mut m = DMatrix::zeros(4 * n, 4 * n);
    for (j, pair) in pairs.iter().enumerate() {
        if pair.n_modes() != 2 {
            return Err(Error::BadShape {
                rows: pair.dim(),
                cols: pair.dim(),
            });
        }
        let (alice, bob) = (j, n + j);
        for (a, ma) in [(0, alice), (1, bob)] {
            for (b, mb) in [(0, alice), (1, bob)] {
                m.fixed_view_mut::<2, 2>(2 * ma, 2 * mb)
                    .copy_from(&pair.block(a, b));
            }
        }
    }
    Ok(CovMatrix::from_symmetric_unchecked(m))
}

pub fn joint_cm(pair: &CovMatrix, n: usize) -> Result<CovMatrix> {
    joint_cm_from_pairs(&vec![pair.clone(); n])
}

/// Orthogonal mixing of the beam-splitter cascade: row 0 is the symmetric
/// combination, row k the k-th normalized difference mode.
pub fn bs_cascade_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(Error::Domain(format!("cascade needs n >= 2, got {n}")));
    }
    let mut o = DMatrix::zeros(n, n);
    let first = 1.0 / (n as f64).sqrt();
    for c in 0..n {
        o[(0, c)] = first;
    }
    for k in 2..=n {
        let norm = 1.0 / ((k * (k - 1)) as f64).sqrt();
        for c in 0..k - 1 {
            o[(k - 1, c)] = norm;
        }
        o[(k - 1, k - 1)] = -((k - 1) as f64) * norm;
    }
    Ok(o)
}

/// Closed-form conditional blocks for `n` identical elements after the
/// multipartite Bell measurement (y on the symmetric output, x on the rest).
pub fn bell_condition_closed_form(pair: &CovMatrix, n: usize) -> Result<ConditionalBlocks> {
    bell_condition_closed_form_with(pair, n, &Tolerances::default())
}

pub fn bell_condition_closed_form_with(
    pair: &CovMatrix,
    n: usize,
    tol: &Tolerances,
) -> Result<ConditionalBlocks> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    if pair.n_modes() != 2 {
        return Err(Error::BadShape {
            rows: pair.dim(),
            cols: pair.dim(),
        });
    }
    let v_alice = pair.block(0, 0);
    let v_bob = pair.block(1, 1);
    let corr = pair.block(0, 1);

    let eig = SymmetricEigen::new(v_alice).eigenvalues;
    let (lo, hi) = (eig.min(), eig.max());
    let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(cond < tol.max_condition) {
        return Err(Error::SingularAliceBlock(cond));
    }
    let inv = v_alice
        .try_inverse()
        .ok_or(Error::SingularAliceBlock(cond))?;

    let z1 = Matrix2::new(1.0, 0.0, 0.0, 0.0);
    let z2 = Matrix2::new(0.0, 0.0, 0.0, 1.0);
    let x_term = corr.transpose() * z1 * inv * z1 * corr;
    let y_term = corr.transpose() * z2 * inv * z2 * corr;
    let nf = n as f64;
    let v_diag = v_bob - x_term * ((nf - 1.0) / nf) - y_term / nf;
    let v_off = x_term / nf - y_term / nf;
    Ok(ConditionalBlocks {
        v_diag: (v_diag + v_diag.transpose()) * 0.5,
        v_off,
    })
}

pub fn assemble_bob_cm(blocks: &ConditionalBlocks, n: usize) -> CovMatrix {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let blk = match i.cmp(&j) {
                std::cmp::Ordering::Equal => blocks.v_diag,
                std::cmp::Ordering::Less => blocks.v_off,
                std::cmp::Ordering::Greater => blocks.v_off.transpose(),
            };
            m.fixed_view_mut::<2, 2>(2 * i, 2 * j).copy_from(&blk);
        }
    }
    CovMatrix::from_symmetric_unchecked(m)
}

/// Bell measurement by explicit beam-splitter mixing and sequential homodyne
/// conditioning. Works for heterogeneous elements.
pub fn bell_condition_oracle(joint: &CovMatrix, n: usize) -> Result<CovMatrix> {
    bell_condition_oracle_with(joint, n, &Tolerances::default())
}

pub fn bell_condition_oracle_with(
    joint: &CovMatrix,
    n: usize,
    tol: &Tolerances,
) -> Result<CovMatrix> {
    if joint.n_modes() != 2 * n {
        return Err(Error::BadShape {
            rows: joint.dim(),
            cols: joint.dim(),
        });
    }
    let alice: Vec<usize> = (0..n).collect();
    let mut v = passive_transform(joint, &alice, &bs_cascade_matrix(n)?)?;
    // Highest index first, so the remaining Alice indices stay put.
    for k in (1..n).rev() {
        v = homodyne_condition_with(&v, k, Quadrature::X, tol)?;
    }
    homodyne_condition_with(&v, 0, Quadrature::Y, tol)
}

/// Sends every Bob mode through the network's lossy channel.
pub fn apply_network_loss(v: &CovMatrix, spec: &NetworkSpec) -> Result<CovMatrix> {
    lossy_channel(v, spec.channel.transmissivity()?)
}

/// Logarithmic negativity between modes `i` and `j` of `v`.
pub fn pair_entanglement(v: &CovMatrix, i: usize, j: usize) -> Result<f64> {
    if i == j {
        return Err(Error::Domain(
            "pair entanglement needs two distinct modes".into(),
        ));
    }
    let pair = reduced_cm(v, &[i, j])?;
    log_negativity(&pair, &Bipartition::new(2, [0])?)
}

/// Smallest PT symplectic eigenvalue for mode 0 against all other modes.
pub fn one_vs_rest_eta_minus(v: &CovMatrix) -> Result<f64> {
    one_vs_rest_eta_minus_with(v, &Tolerances::default())
}

pub fn one_vs_rest_eta_minus_with(v: &CovMatrix, tol: &Tolerances) -> Result<f64> {
    if v.n_modes() < 2 {
        return Err(Error::Domain("need at least two modes".into()));
    }
    min_symplectic_eig_pt_with(v, &Bipartition::one_vs_rest(v.n_modes(), 0)?, tol)
}

pub fn one_vs_rest_fidelity(v: &CovMatrix) -> Result<f64> {
    fidelity_from_eig(one_vs_rest_eta_minus(v)?)
}

/// Figures of merit for one network configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NetworkOutcome {
    pub eta: f64,
    pub eta_minus: f64,
    pub e_n: f64,
    pub fidelity: f64,
}

/// Element CM, Bell conditioning, channel loss, then the figures of merit.
/// Each intermediate state is checked for physicality.
pub fn evaluate_network(spec: &NetworkSpec, tol: &Tolerances) -> Result<NetworkOutcome> {
    let (_, outcome) = evaluate_network_states(spec, tol)?;
    Ok(outcome)
}

/// As [`evaluate_network`], also returning the lossy Bob covariance matrix.
pub fn evaluate_network_states(
    spec: &NetworkSpec,
    tol: &Tolerances,
) -> Result<(CovMatrix, NetworkOutcome)> {
    spec.validate()?;
    let n = spec.n_elements;
    let pair = output_pair_cm(&spec.element, &spec.noise)?.validated_with(tol)?;
    let blocks = bell_condition_closed_form_with(&pair, n, tol)?;
    let bob = assemble_bob_cm(&blocks, n).validated_with(tol)?;
    let eta = spec.channel.transmissivity()?;
    let lossy = lossy_channel(&bob, eta)?.validated_with(tol)?;
    let eta_minus = one_vs_rest_eta_minus_with(&lossy, tol)?;
    let outcome = NetworkOutcome {
        eta,
        eta_minus,
        e_n: pair_entanglement(&lossy, 0, 1)?,
        fidelity: fidelity_from_eig(eta_minus)?,
    };
    Ok((lossy, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn baseline_pair(depth: f64) -> CovMatrix {
        output_pair_cm(&ElementParams::baseline(), &MicrowaveNoise::pure(depth)).unwrap()
    }

    #[test]
    fn joint_examples() {
        let j = joint_cm(&CovMatrix::vacuum(2), 3).unwrap();
        assert_eq!(j, CovMatrix::vacuum(6));

        let pair = baseline_pair(0.497);
        let j = joint_cm(&pair, 4).unwrap();
        for e in 0..4 {
            assert_eq!(reduced_cm(&j, &[e, 4 + e]).unwrap(), pair);
        }
        // Cross-element blocks vanish.
        assert_eq!(j.block(0, 1), Matrix2::zeros());
        assert_eq!(j.block(0, 5), Matrix2::zeros());
        assert_eq!(j.block(4, 5), Matrix2::zeros());
    }

    #[test]
    fn cascade_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let o = bs_cascade_matrix(2).unwrap();
        assert_relative_eq!(
            o,
            DMatrix::from_row_slice(2, 2, &[s, s, s, -s]),
            epsilon = 1e-15
        );
        let o = bs_cascade_matrix(5).unwrap();
        assert!((&o * o.transpose() - DMatrix::<f64>::identity(5, 5)).amax() < 1e-12);
        for c in 0..5 {
            assert_relative_eq!(o[(0, c)], 1.0 / 5f64.sqrt(), epsilon = 1e-15);
        }
        assert!(bs_cascade_matrix(1).is_err());
    }

    #[test]
    fn uncorrelated_pairs_unchanged() {
        let mut m = DMatrix::identity(4, 4) * 0.9;
        m[(0, 1)] = 0.2;
        m[(1, 0)] = 0.2;
        m[(2, 2)] = 1.4;
        let pair = CovMatrix::new(m).unwrap();
        let blocks = bell_condition_closed_form(&pair, 3).unwrap();
        assert_eq!(blocks.v_diag, pair.block(1, 1));
        assert_eq!(blocks.v_off, Matrix2::zeros());

        let bob = bell_condition_oracle(&joint_cm(&pair, 3).unwrap(), 3).unwrap();
        let expected = assemble_bob_cm(&blocks, 3);
        assert!(bob.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn closed_form_matches_oracle_at_two() {
        let pair = baseline_pair(0.497);
        let closed = assemble_bob_cm(&bell_condition_closed_form(&pair, 2).unwrap(), 2);
        let oracle = bell_condition_oracle(&joint_cm(&pair, 2).unwrap(), 2).unwrap();
        assert!(closed.max_abs_diff(&oracle) < 1e-10);
    }

    #[test]
    fn large_n_limit() {
        let pair = baseline_pair(0.3);
        let inv = pair.block(0, 0).try_inverse().unwrap();
        let c = pair.block(0, 1);
        let z1 = Matrix2::new(1.0, 0.0, 0.0, 0.0);
        let limit = pair.block(1, 1) - c.transpose() * z1 * inv * z1 * c;
        let blocks = bell_condition_closed_form(&pair, 1_000_000).unwrap();
        assert!((blocks.v_diag - limit).amax() < 1e-4 * limit.amax());
    }

    #[test]
    fn singular_alice_block() {
        let mut m = DMatrix::identity(4, 4);
        m[(0, 0)] = 1e-14;
        let pair = CovMatrix::new(m).unwrap();
        assert!(matches!(
            bell_condition_closed_form(&pair, 3),
            Err(Error::SingularAliceBlock(_))
        ));
    }

    #[test]
    fn assembled_state_symmetric_under_permutation() {
        let blocks = bell_condition_closed_form(&baseline_pair(0.497), 4).unwrap();
        let v = assemble_bob_cm(&blocks, 4);
        let permuted = reduced_cm(&v, &[2, 0, 3, 1]).unwrap();
        assert!(permuted.max_abs_diff(&v) < 1e-15);
        let product = assemble_bob_cm(
            &ConditionalBlocks {
                v_diag: Matrix2::identity(),
                v_off: Matrix2::zeros(),
            },
            3,
        );
        assert_eq!(product, CovMatrix::thermal(3, 0.5));
    }

    #[test]
    fn loss_examples() {
        let spec = NetworkSpec {
            n_elements: 3,
            element: ElementParams::baseline(),
            noise: MicrowaveNoise::pure(0.497),
            channel: Channel {
                alpha: 0.0,
                distance: 0.0,
                eta0: 1.0,
            },
        };
        let v = assemble_bob_cm(
            &bell_condition_closed_form(&baseline_pair(0.497), 3).unwrap(),
            3,
        );
        assert!(apply_network_loss(&v, &spec).unwrap().max_abs_diff(&v) < 1e-15);
        let lossy = NetworkSpec {
            channel: Channel {
                alpha: 0.005,
                distance: 0.1,
                eta0: 0.99,
            },
            ..spec
        };
        assert_relative_eq!(
            lossy.channel.transmissivity().unwrap(),
            0.989_950_501_237_479_3,
            max_relative = 1e-12
        );
        let vac = CovMatrix::vacuum(3);
        assert!(apply_network_loss(&vac, &lossy).unwrap().max_abs_diff(&vac) < 1e-15);
    }

    #[test]
    fn vacuum_measures() {
        let vac = CovMatrix::vacuum(3);
        assert_eq!(pair_entanglement(&vac, 0, 2).unwrap(), 0.0);
        assert_relative_eq!(one_vs_rest_fidelity(&vac).unwrap(), 0.5, epsilon = 1e-12);
        assert!(pair_entanglement(&vac, 1, 1).is_err());
    }

    #[test]
    fn pairwise_symmetry_and_two_mode_fidelity() {
        let v = assemble_bob_cm(
            &bell_condition_closed_form(&baseline_pair(0.497), 4).unwrap(),
            4,
        );
        let e01 = pair_entanglement(&v, 0, 1).unwrap();
        for (i, j) in [(0, 2), (1, 3), (2, 3), (3, 0)] {
            assert!((pair_entanglement(&v, i, j).unwrap() - e01).abs() < 1e-12);
        }
        let v2 = assemble_bob_cm(
            &bell_condition_closed_form(&baseline_pair(0.497), 2).unwrap(),
            2,
        );
        let pt = min_symplectic_eig_pt_with(
            &v2,
            &Bipartition::new(2, [1]).unwrap(),
            &Tolerances::default(),
        )
        .unwrap();
        assert_relative_eq!(
            one_vs_rest_fidelity(&v2).unwrap(),
            1.0 / (1.0 + 2.0 * pt),
            max_relative = 1e-10
        );
    }

    #[test]
    fn spec_validation() {
        let mut spec = NetworkSpec {
            n_elements: 1,
            element: ElementParams::baseline(),
            noise: MicrowaveNoise::pure(0.1),
            channel: Channel::LOSSLESS,
        };
        assert!(spec.validate().is_err());
        spec.n_elements = 2;
        assert!(spec.validate().is_ok());
        spec.channel.eta0 = 0.0;
        assert!(spec.validate().is_err());
    }
}
