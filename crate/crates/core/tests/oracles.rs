//! Independent cross-checks: each expected value here is computed by a route
//! that does not share code with the routine under test.

mod common;

use approx::assert_relative_eq;
use cvnet_core::gplasmon::{
    self, constants, effective_permittivity, perturbed_dispersion, spp_dispersion,
    surface_conductivity, GrapheneDevice,
};
use cvnet_core::qelement::output_pair_cm;
use cvnet_core::sympgauss::{homodyne_condition, min_symplectic_eig_pt, partial_transpose};
use cvnet_core::telenet::{
    assemble_bob_cm, bell_condition_closed_form, bell_condition_oracle, bs_cascade_matrix, joint_cm,
};
use cvnet_core::{Bipartition, CovMatrix, ElementParams, MicrowaveNoise, Quadrature};
use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Conditional second moments of (x₂, y₂) given x₁ = 0, by integrating the
/// Wigner function over y₁ on a grid.
#[test]
fn homodyne_matches_wigner_marginal() {
    let r = 0.6f64;
    let v = CovMatrix::two_mode_squeezed(r);
    let inv: Matrix4<f64> = Matrix4::from_fn(|i, j| v.get(i, j)).try_inverse().unwrap();

    let (pts, half) = (161usize, 8.0f64);
    let h = 2.0 * half / (pts - 1) as f64;
    let grid: Vec<f64> = (0..pts).map(|k| -half + k as f64 * h).collect();
    let (mut z, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &y1 in &grid {
        for &x2 in &grid {
            for &y2 in &grid {
                let u = [0.0, y1, x2, y2];
                let mut q = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        q += u[i] * inv[(i, j)] * u[j];
                    }
                }
                let w = (-0.5 * q).exp();
                z += w;
                sxx += w * x2 * x2;
                syy += w * y2 * y2;
                sxy += w * x2 * y2;
            }
        }
    }
    let out = homodyne_condition(&v, 0, Quadrature::X).unwrap();
    assert_relative_eq!(out.get(0, 0), sxx / z, max_relative = 1e-8);
    assert_relative_eq!(out.get(1, 1), syy / z, max_relative = 1e-8);
    assert!((sxy / z).abs() < 1e-10);
    assert_relative_eq!(
        out.get(0, 0),
        1.0 / (2.0 * (2.0 * r).cosh()),
        max_relative = 1e-12
    );
}

/// Smallest PT symplectic eigenvalue of a two-mode squeezed state against the
/// closed form `e^{-2r}/2`, across squeezing values.
#[test]
fn two_mode_squeezed_pt_eigenvalue() {
    let part = Bipartition::new(2, [1]).unwrap();
    for r in [0.1, 0.5, 1.0, 1.7] {
        let eta = min_symplectic_eig_pt(&CovMatrix::two_mode_squeezed(r), &part).unwrap();
        assert_relative_eq!(eta, (-2.0 * r).exp() / 2.0, max_relative = 1e-9);
    }
}

/// Conditioning on all measured quadratures at once with a single Schur
/// complement, as opposed to sequential rank-1 updates.
fn joint_schur_oracle(joint: &CovMatrix, n: usize) -> DMatrix<f64> {
    let o = bs_cascade_matrix(n).unwrap();
    let dim = 4 * n;
    let mut s = DMatrix::<f64>::identity(dim, dim);
    for a in 0..n {
        for b in 0..n {
            s[(2 * a, 2 * b)] = o[(a, b)];
            s[(2 * a + 1, 2 * b + 1)] = o[(a, b)];
        }
    }
    let v = &s * joint.matrix() * s.transpose();
    let measured: Vec<usize> = std::iter::once(1).chain((1..n).map(|k| 2 * k)).collect();
    let kept: Vec<usize> = (2 * n..4 * n).collect();
    let vmm = DMatrix::from_fn(measured.len(), measured.len(), |r, c| {
        v[(measured[r], measured[c])]
    });
    let vkm = DMatrix::from_fn(kept.len(), measured.len(), |r, c| v[(kept[r], measured[c])]);
    let vkk = DMatrix::from_fn(kept.len(), kept.len(), |r, c| v[(kept[r], kept[c])]);
    vkk - &vkm * vmm.try_inverse().unwrap() * vkm.transpose()
}

#[test]
fn closed_form_matches_both_oracles() {
    for depth in [0.0, 0.497] {
        let pair =
            output_pair_cm(&ElementParams::baseline(), &MicrowaveNoise::pure(depth)).unwrap();
        for n in 2..=6 {
            let closed = assemble_bob_cm(&bell_condition_closed_form(&pair, n).unwrap(), n);
            let joint = joint_cm(&pair, n).unwrap();
            let sequential = bell_condition_oracle(&joint, n).unwrap();
            let schur = joint_schur_oracle(&joint, n);
            assert!(
                closed.max_abs_diff(&sequential) < 1e-10,
                "n={n} depth={depth}"
            );
            assert!(
                (closed.matrix() - schur).amax() < 1e-10,
                "n={n} depth={depth}"
            );
        }
    }
}

#[test]
fn oracle_measurement_order_irrelevant() {
    let pair = output_pair_cm(&ElementParams::baseline(), &MicrowaveNoise::pure(0.497)).unwrap();
    let n = 4;
    let joint = joint_cm(&pair, n).unwrap();
    let reference = bell_condition_oracle(&joint, n).unwrap();

    let alice: Vec<usize> = (0..n).collect();
    let mixed =
        cvnet_core::sympgauss::passive_transform(&joint, &alice, &bs_cascade_matrix(n).unwrap())
            .unwrap();
    // y on the symmetric port first, then x on the difference ports low to high.
    let mut v = homodyne_condition(&mixed, 0, Quadrature::Y).unwrap();
    for _ in 1..n {
        v = homodyne_condition(&v, 0, Quadrature::X).unwrap();
    }
    assert!(v.max_abs_diff(&reference) < 1e-10);
}

#[test]
fn partial_transpose_flips_only_cross_terms() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
    let (v, _) = common::random_state(&mut rng, 3);
    let pt = partial_transpose(&v, &[1]).unwrap();
    for r in 0..6 {
        for c in 0..6 {
            let flips = (r == 3) ^ (c == 3);
            let expected = if flips { -v.get(r, c) } else { v.get(r, c) };
            assert_eq!(pt.get(r, c), expected);
        }
    }
}

fn reference_device() -> GrapheneDevice {
    GrapheneDevice {
        n0: 1e17,
        capacitance: 1e-4,
        area: 1e-10,
        temperature: 3.0,
        tau: 1e-12,
        fermi_velocity: 1e6,
    }
}

fn assert_complex_rel(got: Complex64, want: Complex64, tol: f64) {
    assert!(
        (got - want).norm() <= tol * want.norm(),
        "got {got}, want {want}"
    );
}

/// Reference values evaluated at 40 significant digits with mpmath.
#[test]
fn graphene_golden_values() {
    let dev = reference_device();
    let omega = 2.0 * PI * 193e12;
    let mu = gplasmon::chemical_potential(&dev);
    assert_relative_eq!(mu.zeroth.re, 5.910_865_771_345_803e-20, max_relative = 1e-9);
    assert_relative_eq!(mu.first.re, 1.1743318252166864e-22, max_relative = 1e-9);

    let sigma = surface_conductivity(&dev, omega).unwrap().sigma;
    assert_complex_rel(
        sigma.zeroth,
        Complex64::new(1.2014665391617935e-6, 2.1827247086231454e-4),
        1e-9,
    );
    assert_complex_rel(
        sigma.first,
        Complex64::new(-3.179528324652357e-8, -4.158062523327992e-7),
        1e-9,
    );

    let b1 = spp_dispersion(sigma.zeroth, omega).unwrap();
    assert_complex_rel(
        b1,
        Complex64::new(98_462_431.151_634_8, 541065.3472577207),
        1e-9,
    );
    let b2 = perturbed_dispersion(b1, sigma.zeroth, sigma.first).unwrap();
    assert_complex_rel(
        b2,
        Complex64::new(-187399.52045716413, 12254.615556134316),
        1e-9,
    );

    let eps = effective_permittivity(b1, b2, omega / constants::SPEED_OF_LIGHT).unwrap();
    assert_complex_rel(
        eps.zeroth,
        Complex64::new(592.509_129_332_798_5, 6.512_043_933_441_906),
        1e-9,
    );
    assert_complex_rel(
        eps.first,
        Complex64::new(-2.256_275_408_043_712, 0.13509749503318043),
        1e-9,
    );
}

/// Interband plateau: as T, Γ → 0 and ħω above the log-term threshold
/// (4πμ), the log argument approaches the negative real axis from below and
/// Re σ → e²/4ħ.
#[test]
fn interband_plateau() {
    let dev = GrapheneDevice {
        temperature: 1e-3,
        tau: 1e-6,
        ..reference_device()
    };
    let mu1 = gplasmon::chemical_potential(&dev).zeroth.re;
    let omega = 2.0 * 4.0 * PI * mu1 / constants::HBAR;
    let sigma = surface_conductivity(&dev, omega).unwrap().sigma.zeroth;
    let plateau = constants::ELEMENTARY_CHARGE.powi(2) / (4.0 * constants::HBAR);
    assert_relative_eq!(sigma.re, plateau, max_relative = 1e-6);
}

#[test]
fn branch_crossing_is_flagged() {
    let dev = GrapheneDevice {
        temperature: 1e-3,
        tau: 1e-6,
        ..reference_device()
    };
    let mu1 = gplasmon::chemical_potential(&dev).zeroth.re;
    let threshold = 4.0 * PI * mu1 / constants::HBAR;
    let omegas: Vec<f64> = (1..=20).map(|k| threshold * 0.1 * k as f64).collect();
    let (values, warnings) = gplasmon::conductivity_sweep(&dev, &omegas).unwrap();
    assert_eq!(values.len(), 20);
    // Γ > 0 keeps the argument strictly below the axis: no crossing.
    assert!(warnings.is_empty());
}
