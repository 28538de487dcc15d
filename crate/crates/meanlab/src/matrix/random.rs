//! Seeded random matrix generation.
//!
//! Suites draw random instances through [`crate::rng::trial_rng`], so every
//! matrix generated here is a pure function of (seed, trial index). Positive
//! definite matrices are built from a prescribed spectrum conjugated by a
//! random orthogonal basis, which keeps the conditioning of every instance
//! under the caller's control.

use super::{GeneralMatrix, PsdMatrix};
use crate::error::{Error, Result};
use crate::rng::TrialRng;
use rand::RngExt;

/// One standard normal draw via Box-Muller.
fn gaussian(rng: &mut TrialRng) -> f64 {
    loop {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        if u1 > 0.0 {
            return (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        }
    }
}

/// A square matrix of independent standard normal entries.
pub fn random_general(n: usize, rng: &mut TrialRng) -> GeneralMatrix {
    GeneralMatrix::from_fn(n, |_, _| gaussian(rng))
}

/// A Haar-like random orthogonal matrix: Gaussian columns orthonormalized by
/// modified Gram-Schmidt, redrawing any column that degenerates.
pub fn random_orthogonal(n: usize, rng: &mut TrialRng) -> GeneralMatrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut col: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        for prev in &cols {
            let dot: f64 = col.iter().zip(prev).map(|(a, b)| a * b).sum();
            for (c, p) in col.iter_mut().zip(prev) {
                *c -= dot * p;
            }
        }
        let norm: f64 = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        for c in &mut col {
            *c /= norm;
        }
        cols.push(col);
    }
    GeneralMatrix::from_fn(n, |i, j| cols[j][i])
}

/// A random positive semidefinite matrix with eigenvalues drawn uniformly
/// from `[lo, hi]` (use `lo > 0` for positive definite instances) and a
/// random orthogonal eigenbasis.
pub fn random_psd(n: usize, lo: f64, hi: f64, rng: &mut TrialRng) -> Result<PsdMatrix> {
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi < lo {
        return Err(Error::ParamOutOfRange {
            name: "eigenvalue range",
            value: lo,
            lo: 0.0,
            hi,
        });
    }
    let mut eigenvalues: Vec<f64> = (0..n)
        .map(|_| if hi > lo { rng.random_range(lo..hi) } else { lo })
        .collect();
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    let basis = random_orthogonal(n, rng);
    PsdMatrix::from_decomposition(eigenvalues, basis)
}
