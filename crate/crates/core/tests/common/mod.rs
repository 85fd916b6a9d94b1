#![allow(dead_code)]

use cvnet_core::CovMatrix;
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn beamsplitter_symplectic(n: usize, i: usize, j: usize, theta: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * n, 2 * n);
    let (c, sn) = (theta.cos(), theta.sin());
    for q in 0..2 {
        let (a, b) = (2 * i + q, 2 * j + q);
        s[(a, a)] = c;
        s[(a, b)] = sn;
        s[(b, a)] = -sn;
        s[(b, b)] = c;
    }
    s
}

pub fn squeezer_symplectic(n: usize, k: usize, r: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * n, 2 * n);
    s[(2 * k, 2 * k)] = (-r).exp();
    s[(2 * k + 1, 2 * k + 1)] = r.exp();
    s
}

pub fn rotation_symplectic(n: usize, k: usize, phi: f64) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * n, 2 * n);
    let (c, sn) = (phi.cos(), phi.sin());
    s[(2 * k, 2 * k)] = c;
    s[(2 * k, 2 * k + 1)] = sn;
    s[(2 * k + 1, 2 * k)] = -sn;
    s[(2 * k + 1, 2 * k + 1)] = c;
    s
}

/// Random product of rotations, squeezers and beam splitters on `n` modes.
pub fn random_symplectic(rng: &mut ChaCha8Rng, n: usize, layers: usize) -> DMatrix<f64> {
    let mut s = DMatrix::identity(2 * n, 2 * n);
    for _ in 0..layers {
        for k in 0..n {
            s = rotation_symplectic(n, k, rng.random_range(0.0..6.3)) * s;
            s = squeezer_symplectic(n, k, rng.random_range(-0.8..0.8)) * s;
        }
        if n > 1 {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            s = beamsplitter_symplectic(n, i, j, rng.random_range(0.0..1.6)) * s;
        }
    }
    s
}

/// Random physical state `S diag(ν) Sᵀ` with symplectic eigenvalues `ν ≥ 1/2`.
pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> (CovMatrix, Vec<f64>) {
    let nus: Vec<f64> = (0..n).map(|_| 0.5 + rng.random_range(0.0..2.0)).collect();
    let mut d = DMatrix::zeros(2 * n, 2 * n);
    for (k, &nu) in nus.iter().enumerate() {
        d[(2 * k, 2 * k)] = nu;
        d[(2 * k + 1, 2 * k + 1)] = nu;
    }
    let s = random_symplectic(rng, n, 3);
    let v = &s * d * s.transpose();
    let v = (&v + v.transpose()) * 0.5;
    (CovMatrix::new(v).unwrap(), nus)
}

pub fn pure_state(rng: &mut ChaCha8Rng, n: usize) -> CovMatrix {
    let s = random_symplectic(rng, n, 3);
    let v = &s * s.transpose() * 0.5;
    CovMatrix::new((&v + v.transpose()) * 0.5).unwrap()
}
