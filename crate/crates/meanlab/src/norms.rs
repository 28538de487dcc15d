//! Singular-value profiles and unitarily invariant norms of mean maps.
//!
//! Orderings between mean maps in every unitarily invariant norm are
//! equivalent to Ky Fan dominance: each prefix sum of the singular values of
//! one map bounded by the matching prefix sum of the other. This module
//! computes singular profiles, evaluates the classical norms drawn from
//! them, and packages the two map-level comparisons the laboratory checks:
//! a four-term Hilbert-Schmidt chain and a geometric/arithmetic squeeze in
//! the Ky Fan order.

use serde::{Deserialize, Serialize};

use crate::chains::ChainReport;
use crate::error::{Error, Result};
use crate::matrix::{GeneralMatrix, PsdMatrix, SymMatrix};
use crate::means::{geometric_map, hadamard_map, logarithmic_map};
use crate::scalar::MeanKind;

/// Singular values in nonincreasing order together with their prefix sums
/// (the Ky Fan norms).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularProfile {
    pub values: Vec<f64>,
    pub partial_sums: Vec<f64>,
}

/// Singular values of `X` through the spectrum of `X^T X`; tiny negative
/// eigenvalues from rounding are clamped before the square root.
pub fn singular_values(x: &GeneralMatrix) -> Result<SingularProfile> {
    let n = x.n();
    let gram = SymMatrix::from_fn(n, |i, j| {
        (0..n).map(|k| x.get(k, i) * x.get(k, j)).sum()
    });
    let (eigs, _) = gram.eigen()?;
    let values: Vec<f64> = eigs.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let mut partial_sums = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    for &v in &values {
        acc += v;
        partial_sums.push(acc);
    }
    Ok(SingularProfile {
        values,
        partial_sums,
    })
}

/// A unitarily invariant norm, identified by its singular-value formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NormKind {
    /// Sum of the `k` largest singular values; `1 <= k <= n`.
    KyFan(usize),
    /// `(sum sigma_i^p)^(1/p)` for `p >= 1`.
    Schatten(f64),
    Frobenius,
    /// Largest singular value.
    Operator,
    /// Sum of all singular values.
    Trace,
}

impl NormKind {
    fn validate(self, n: usize) -> Result<()> {
        match self {
            NormKind::KyFan(k) => {
                if k < 1 || k > n {
                    return Err(Error::ParamOutOfRange {
                        name: "ky-fan order k",
                        value: k as f64,
                        lo: 1.0,
                        hi: n as f64,
                    });
                }
            }
            NormKind::Schatten(p) => {
                if !(p >= 1.0 && p.is_finite()) {
                    return Err(Error::ParamOutOfRange {
                        name: "schatten exponent p",
                        value: p,
                        lo: 1.0,
                        hi: f64::INFINITY,
                    });
                }
            }
            NormKind::Frobenius | NormKind::Operator | NormKind::Trace => {}
        }
        Ok(())
    }
}

/// Evaluates a unitarily invariant norm of `X` through its singular profile.
pub fn norm(kind: NormKind, x: &GeneralMatrix) -> Result<f64> {
    kind.validate(x.n())?;
    let profile = singular_values(x)?;
    let top = profile.values.first().copied().unwrap_or(0.0);
    Ok(match kind {
        NormKind::KyFan(k) => profile.partial_sums[k - 1],
        NormKind::Schatten(p) => {
            if top == 0.0 {
                0.0
            } else {
                // Factor out the largest value so sigma^p never overflows.
                let sum: f64 = profile.values.iter().map(|&s| (s / top).powf(p)).sum();
                top * sum.powf(1.0 / p)
            }
        }
        NormKind::Frobenius => profile
            .values
            .iter()
            .map(|&s| s * s)
            .sum::<f64>()
            .sqrt(),
        NormKind::Operator => top,
        NormKind::Trace => profile.partial_sums.last().copied().unwrap_or(0.0),
    })
}

/// Prefix-sum margins of one Ky Fan dominance comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    /// `(sum_k sigma(Z) - sum_k sigma(Y)) / max(1, sum_k sigma(Z))` for each
    /// prefix length `k`; all nonnegative up to tolerance iff `Y` is
    /// dominated by `Z`.
    pub margins: Vec<f64>,
    pub holds: bool,
}

/// Checks `Y <= Z` in the Ky Fan order: every prefix sum of the singular
/// values of `Y` at most the matching prefix sum for `Z`, up to `tol`
/// relative to the dominating sum.
pub fn ky_fan_dominance(y: &GeneralMatrix, z: &GeneralMatrix, tol: f64) -> Result<DominanceReport> {
    if y.n() != z.n() {
        return Err(Error::DimensionMismatch {
            left: y.n(),
            right: z.n(),
        });
    }
    let py = singular_values(y)?;
    let pz = singular_values(z)?;
    let margins: Vec<f64> = py
        .partial_sums
        .iter()
        .zip(&pz.partial_sums)
        .map(|(&sy, &sz)| (sz - sy) / sz.abs().max(1.0))
        .collect();
    let holds = margins.iter().all(|&m| m >= -tol);
    Ok(DominanceReport { margins, holds })
}

/// Absolute tolerance for norm-level chain comparisons on normalized inputs.
pub const DEFAULT_NORM_TOL: f64 = 1e-9;

/// Scales `(S, T)` by the larger spectral norm and `X` to unit Frobenius
/// norm, so chain values and tolerances are comparable across inputs. Zero
/// inputs pass through unscaled; every comparison then holds trivially.
fn normalized_inputs(
    s: &PsdMatrix,
    t: &PsdMatrix,
    x: &GeneralMatrix,
) -> Result<(PsdMatrix, PsdMatrix, GeneralMatrix)> {
    let tau = s.spectral_norm().max(t.spectral_norm());
    let scale_matrix = |m: &PsdMatrix, factor: f64| {
        let eigenvalues = m
            .eigenvalues()
            .iter()
            .map(|&l| l.max(0.0) * factor)
            .collect();
        PsdMatrix::from_decomposition(eigenvalues, m.basis().clone())
    };
    let (s_n, t_n) = if tau > 0.0 {
        (scale_matrix(s, 1.0 / tau)?, scale_matrix(t, 1.0 / tau)?)
    } else {
        (s.clone(), t.clone())
    };
    let fx = x.frobenius_norm();
    let x_n = if fx > 0.0 { x.scale(1.0 / fx) } else { x.clone() };
    Ok((s_n, t_n, x_n))
}

/// Verifies the four-term Hilbert-Schmidt chain of mean maps:
///
/// ```text
/// ||S^{1/2} X T^{1/2}||_F <= ||bridge-2/3 map X||_F
///     <= ||logarithmic map X||_F <= ||heron-2/3 map X||_F
/// ```
///
/// The outer two maps use their Hadamard forms, the geometric map its
/// explicit product form, and the logarithmic map its quadrature form, so
/// the chain also exercises agreement between the three constructions.
pub fn hs_chain_check(
    s: &PsdMatrix,
    t: &PsdMatrix,
    x: &GeneralMatrix,
    nodes: usize,
    tolerance: f64,
) -> Result<ChainReport> {
    let (s_n, t_n, x_n) = normalized_inputs(s, t, x)?;
    let values = vec![
        geometric_map(&s_n, &t_n, &x_n)?.frobenius_norm(),
        hadamard_map(MeanKind::Bridge(2.0 / 3.0), &s_n, &t_n, &x_n)?.frobenius_norm(),
        logarithmic_map(&s_n, &t_n, &x_n, nodes)?.frobenius_norm(),
        hadamard_map(MeanKind::Heron(2.0 / 3.0), &s_n, &t_n, &x_n)?.frobenius_norm(),
    ];
    let labels = [
        "geometric map",
        "bridge 2/3 map",
        "logarithmic map",
        "heron 2/3 map",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    Ok(ChainReport::from_values(labels, values, tolerance))
}

/// Two-sided Ky Fan comparison of [`ky_fan_squeeze_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqueezeReport {
    /// Geometric map dominated by the bridge map.
    pub lower: DominanceReport,
    /// Bridge map dominated by the arithmetic map.
    pub upper: DominanceReport,
    pub holds: bool,
}

/// Checks the squeeze `geometric map <= bridge-r map <= arithmetic map` in
/// the Ky Fan order for `r` in [0, 1], which carries the same ordering to
/// every unitarily invariant norm.
pub fn ky_fan_squeeze_check(
    r: f64,
    s: &PsdMatrix,
    t: &PsdMatrix,
    x: &GeneralMatrix,
    tol: f64,
) -> Result<SqueezeReport> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::ParamOutOfRange {
            name: "bridge exponent r",
            value: r,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let (s_n, t_n, x_n) = normalized_inputs(s, t, x)?;
    let geo = hadamard_map(MeanKind::Geometric, &s_n, &t_n, &x_n)?;
    let bridge = hadamard_map(MeanKind::Bridge(r), &s_n, &t_n, &x_n)?;
    let ari = hadamard_map(MeanKind::Arithmetic, &s_n, &t_n, &x_n)?;
    let lower = ky_fan_dominance(&geo, &bridge, tol)?;
    let upper = ky_fan_dominance(&bridge, &ari, tol)?;
    let holds = lower.holds && upper.holds;
    Ok(SqueezeReport {
        lower,
        upper,
        holds,
    })
}
