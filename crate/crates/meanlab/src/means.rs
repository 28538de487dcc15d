//! Matrix extensions of the scalar mean families.
//!
//! Two constructions live here. Binary operator means combine a positive
//! pair `(S, T)` through the congruence `S^{1/2} f(S^{-1/2} T S^{-1/2})
//! S^{1/2}`, which realizes the weighted geometric, logarithmic, and power
//! means and supports the five-term ordering checked by
//! [`operator_chain_check`]. Mean maps act on a third matrix `X`: every mean
//! has a Hadamard-multiplier form on the eigenbases of `S` and `T`, and the
//! arithmetic, geometric, logarithmic, Heinz, and Heron maps additionally
//! have explicit product forms that the Hadamard form must reproduce.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{loewner_margin, GeneralMatrix, PsdMatrix, SymMatrix, DEFAULT_PSD_TOL};
use crate::quad::QuadRule;
use crate::scalar::MeanKind;

/// Relative Loewner tolerance for operator-order comparisons; rounding noise
/// in the eigensolver sits several orders below this.
pub const DEFAULT_OPERATOR_TOL: f64 = 1e-9;

fn check_pair_dims(s: &PsdMatrix, t: &PsdMatrix) -> Result<()> {
    if s.n() != t.n() {
        return Err(Error::DimensionMismatch {
            left: s.n(),
            right: t.n(),
        });
    }
    Ok(())
}

fn check_map_dims(s: &PsdMatrix, t: &PsdMatrix, x: &GeneralMatrix) -> Result<()> {
    check_pair_dims(s, t)?;
    if s.n() != x.n() {
        return Err(Error::DimensionMismatch {
            left: s.n(),
            right: x.n(),
        });
    }
    Ok(())
}

fn check_unit_interval(name: &'static str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::ParamOutOfRange {
            name,
            value: v,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(())
}

/// The congruence reduction of a positive pair: `Q = S^{1/2} U` and the
/// clamped spectrum of `W = S^{-1/2} T S^{-1/2} = U diag(lambda) U^T`.
///
/// Every operator mean below is `Q diag(f(lambda)) Q^T` for the matching
/// scalar profile `f`, so one reduction serves a whole chain of means.
struct Congruence {
    q: GeneralMatrix,
    lambdas: Vec<f64>,
}

impl Congruence {
    /// Requires `S` safely invertible; `T` may be singular.
    fn new(s: &PsdMatrix, t: &PsdMatrix) -> Result<Self> {
        check_pair_dims(s, t)?;
        let r = s.inv_sqrt()?.to_general();
        let w_raw = r.matmul(&t.base().to_general())?.matmul(&r)?;
        let w = PsdMatrix::from_sym(w_raw.sym_part(), DEFAULT_PSD_TOL)?;
        let q = s.sqrt().to_general().matmul(w.basis())?;
        let lambdas = w.eigenvalues().iter().map(|&l| l.max(0.0)).collect();
        Ok(Self { q, lambdas })
    }

    /// Assembles `Q diag(values) Q^T`.
    fn assemble(&self, values: &[f64]) -> SymMatrix {
        let n = self.q.n();
        SymMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.q.get(i, k) * values[k] * self.q.get(j, k))
                .sum()
        })
    }

    fn apply<F: FnMut(f64) -> Result<f64>>(&self, f: F) -> Result<SymMatrix> {
        let values: Vec<f64> = self
            .lambdas
            .iter()
            .copied()
            .map(f)
            .collect::<Result<Vec<_>>>()?;
        Ok(self.assemble(&values))
    }
}

/// Weighted arithmetic operator mean `(1 - v) S + v T`.
pub fn op_arithmetic(v: f64, s: &PsdMatrix, t: &PsdMatrix) -> Result<SymMatrix> {
    check_unit_interval("arithmetic weight v", v)?;
    check_pair_dims(s, t)?;
    s.base().scale(1.0 - v).add(&t.base().scale(v))
}

/// Weighted geometric operator mean
/// `S^{1/2} (S^{-1/2} T S^{-1/2})^v S^{1/2}` for `v` in [0, 1].
///
/// `S` must be safely invertible except at the endpoints, where the mean is
/// `S` or `T` outright; a singular `T` is fine for `v < 1`.
pub fn op_geometric(v: f64, s: &PsdMatrix, t: &PsdMatrix) -> Result<SymMatrix> {
    check_unit_interval("geometric weight v", v)?;
    check_pair_dims(s, t)?;
    if v == 0.0 {
        return Ok(s.base().clone());
    }
    if v == 1.0 {
        return Ok(t.base().clone());
    }
    Congruence::new(s, t)?.apply(|l| Ok(l.powf(v)))
}

/// Logarithmic operator mean: the integral of the weighted geometric mean
/// over the weight, evaluated with an `nodes`-point Gauss-Legendre rule
/// applied inside the shared congruence.
pub fn op_logarithmic(s: &PsdMatrix, t: &PsdMatrix, nodes: usize) -> Result<SymMatrix> {
    let rule = QuadRule::gauss_legendre(nodes)?;
    Congruence::new(s, t)?.apply(|l| Ok(rule.integrate(|v| l.powf(v))))
}

/// Power operator mean `S^{1/2} ((W^p + I)/2)^{1/p} S^{1/2}` with
/// `W = S^{-1/2} T S^{-1/2}`; the binomial mean applied to the spectrum.
///
/// `p = 0` is rejected; exponents inside the scalar limit window behave as
/// the geometric limit, matching the scalar binomial family.
pub fn op_power(p: f64, s: &PsdMatrix, t: &PsdMatrix) -> Result<SymMatrix> {
    if !p.is_finite() {
        return Err(Error::NonFinite {
            what: "power mean exponent p",
        });
    }
    if p == 0.0 {
        return Err(Error::PowerMeanZeroExponent);
    }
    Congruence::new(s, t)?.apply(|l| MeanKind::Binomial(p).eval_nonneg(l, 1.0))
}

/// Parameters of the five-term operator chain.
///
/// The chain bridges the geometric and arithmetic operator means through a
/// congruence product and a convex mix, with the logarithmic mean pinched in
/// between and capped by a power mean:
///
/// ```text
/// geometric <= G_{t/2} S^{-1} G_{1-t}' <= logarithmic <= s G + (1-s) A <= arithmetic
/// logarithmic <= power mean
/// ```
///
/// where `G_v` is the weighted geometric mean of `(S, T)`, `G_v'` the one of
/// `(S, arithmetic)`, and the stated parameter windows are exactly where the
/// orderings hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorChainParams {
    /// Split `t` of the bridging product; admissible on [2/3, 1].
    pub split: f64,
    /// Weight `s` of the geometric term in the convex mix; admissible on
    /// [0, 2/3].
    pub mix: f64,
    /// Exponent `p` of the capping power mean; admissible at or above 1/3.
    pub power: f64,
}

impl Default for OperatorChainParams {
    /// The extreme admissible corner, where every inequality is sharpest.
    fn default() -> Self {
        Self {
            split: 2.0 / 3.0,
            mix: 2.0 / 3.0,
            power: 1.0 / 3.0,
        }
    }
}

impl OperatorChainParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.split >= 2.0 / 3.0 && self.split <= 1.0) {
            return Err(Error::ParamOutOfRange {
                name: "chain split t",
                value: self.split,
                lo: 2.0 / 3.0,
                hi: 1.0,
            });
        }
        if !(self.mix >= 0.0 && self.mix <= 2.0 / 3.0) {
            return Err(Error::ParamOutOfRange {
                name: "chain mix weight s",
                value: self.mix,
                lo: 0.0,
                hi: 2.0 / 3.0,
            });
        }
        if !(self.power >= 1.0 / 3.0 && self.power.is_finite()) {
            return Err(Error::ParamOutOfRange {
                name: "chain power exponent p",
                value: self.power,
                lo: 1.0 / 3.0,
                hi: f64::INFINITY,
            });
        }
        Ok(())
    }
}

/// One Loewner comparison inside an operator chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorComparison {
    pub label: String,
    /// Normalized smallest eigenvalue of (rhs - lhs); nonnegative up to
    /// rounding when the ordering holds.
    pub margin: f64,
    pub holds: bool,
}

/// Outcome of [`operator_chain_check`] on one matrix pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorChainVerdict {
    pub comparisons: Vec<OperatorComparison>,
    /// Largest entry of `|M - M^T|` in the bridging product before
    /// symmetrization, as a diagnostic of how far the literal product is
    /// from the symmetric mean it represents.
    pub middle_asymmetry: f64,
    pub all_hold: bool,
}

/// Re-wraps a positive multiple of a decomposed matrix without re-solving
/// the eigenproblem.
fn scale_psd(m: &PsdMatrix, factor: f64) -> Result<PsdMatrix> {
    let eigenvalues = m
        .eigenvalues()
        .iter()
        .map(|&l| l.max(0.0) * factor)
        .collect();
    PsdMatrix::from_decomposition(eigenvalues, m.basis().clone())
}

/// Verifies the five-term operator chain on one pair.
///
/// Both matrices are first scaled by the larger of the two spectral norms,
/// so `tol` acts on a normalized pair and margins are comparable across
/// inputs. The bridging product is symmetrized before comparison; its
/// pre-symmetrization asymmetry is reported in the verdict.
pub fn operator_chain_check(
    s: &PsdMatrix,
    t: &PsdMatrix,
    params: OperatorChainParams,
    nodes: usize,
    tol: f64,
) -> Result<OperatorChainVerdict> {
    params.validate()?;
    check_pair_dims(s, t)?;
    let tau = s.spectral_norm().max(t.spectral_norm());
    if tau <= 0.0 {
        return Err(Error::SingularMatrix {
            lambda_min: 0.0,
            lambda_max: 0.0,
        });
    }
    let s_n = scale_psd(s, 1.0 / tau)?;
    let t_n = scale_psd(t, 1.0 / tau)?;

    let congruence = Congruence::new(&s_n, &t_n)?;
    let rule = QuadRule::gauss_legendre(nodes)?;
    let geometric = congruence.apply(|l| Ok(l.sqrt()))?;
    let logarithmic = congruence.apply(|l| Ok(rule.integrate(|v| l.powf(v))))?;
    let power = congruence.apply(|l| MeanKind::Binomial(params.power).eval_nonneg(l, 1.0))?;

    let arithmetic = op_arithmetic(0.5, &s_n, &t_n)?;
    let arithmetic_psd = PsdMatrix::from_sym(arithmetic.clone(), DEFAULT_PSD_TOL)?;
    let mix = geometric
        .scale(params.mix)
        .add(&arithmetic.scale(1.0 - params.mix))?;

    // Literal bridging product G_{t/2}(S, T) S^{-1} G_{1-t}(S, A); symmetric
    // in exact arithmetic, so the symmetric part is compared and the raw
    // asymmetry reported.
    let left = op_geometric(params.split / 2.0, &s_n, &t_n)?.to_general();
    let right = op_geometric(1.0 - params.split, &s_n, &arithmetic_psd)?.to_general();
    let s_inv = s_n.power(-1.0)?.to_general();
    let product = left.matmul(&s_inv)?.matmul(&right)?;
    let middle_asymmetry = product.asymmetry();
    let middle = product.sym_part();

    let steps = [
        ("geometric <= bridged middle", &geometric, &middle),
        ("bridged middle <= logarithmic", &middle, &logarithmic),
        ("logarithmic <= convex mix", &logarithmic, &mix),
        ("convex mix <= arithmetic", &mix, &arithmetic),
        ("logarithmic <= power mean", &logarithmic, &power),
    ];
    let mut comparisons = Vec::with_capacity(steps.len());
    for (label, lhs, rhs) in steps {
        let margin = loewner_margin(lhs, rhs)?;
        comparisons.push(OperatorComparison {
            label: label.to_string(),
            margin,
            holds: margin >= -tol,
        });
    }
    let all_hold = comparisons.iter().all(|c| c.holds);
    Ok(OperatorChainVerdict {
        comparisons,
        middle_asymmetry,
        all_hold,
    })
}

/// Mean map in Hadamard-multiplier form: with `S = U diag(lambda) U^T` and
/// `T = V diag(mu) V^T`, the map sends `X` to
/// `U ([M(lambda_i, mu_j)] .* (U^T X V)) V^T`.
///
/// Zero eigenvalues take the mean's continuous extension to the boundary,
/// so singular inputs are fine for every family.
pub fn hadamard_map(
    kind: MeanKind,
    s: &PsdMatrix,
    t: &PsdMatrix,
    x: &GeneralMatrix,
) -> Result<GeneralMatrix> {
    kind.validate()?;
    check_map_dims(s, t, x)?;
    let n = x.n();
    let y = s.basis().transpose().matmul(x)?.matmul(t.basis())?;
    let mut z = GeneralMatrix::zeros(n);
    for i in 0..n {
        let lambda = s.eigenvalues()[i].max(0.0);
        for j in 0..n {
            let mu = t.eigenvalues()[j].max(0.0);
            z.set(i, j, kind.eval_nonneg(lambda, mu)? * y.get(i, j));
        }
    }
    s.basis().matmul(&z)?.matmul(&t.basis().transpose())
}

/// Arithmetic mean map `(S X + X T) / 2`.
pub fn arithmetic_map(s: &PsdMatrix, t: &PsdMatrix, x: &GeneralMatrix) -> Result<GeneralMatrix> {
    check_map_dims(s, t, x)?;
    let left = s.base().to_general().matmul(x)?;
    let right = x.matmul(&t.base().to_general())?;
    Ok(left.add(&right)?.scale(0.5))
}

/// Geometric mean map `S^{1/2} X T^{1/2}`.
pub fn geometric_map(s: &PsdMatrix, t: &PsdMatrix, x: &GeneralMatrix) -> Result<GeneralMatrix> {
    check_map_dims(s, t, x)?;
    s.sqrt().to_general().matmul(x)?.matmul(&t.sqrt().to_general())
}

/// Heinz mean map `(S^v X T^{1-v} + S^{1-v} X T^v) / 2` for `v` in [0, 1];
/// the endpoints coincide with the arithmetic map.
pub fn heinz_map(
    v: f64,
    s: &PsdMatrix,
    t: &PsdMatrix,
    x: &GeneralMatrix,
) -> Result<GeneralMatrix> {
    check_unit_interval("heinz weight v", v)?;
    if v == 0.0 || v == 1.0 {
        return arithmetic_map(s, t, x);
    }
    check_map_dims(s, t, x)?;
    let sv = s.power(v)?.to_general();
    let sc = s.power(1.0 - v)?.to_general();
    let tv = t.power(v)?.to_general();
    let tc = t.power(1.0 - v)?.to_general();
    let first = sv.matmul(x)?.matmul(&tc)?;
    let second = sc.matmul(x)?.matmul(&tv)?;
    Ok(first.add(&second)?.scale(0.5))
}

/// Heron mean map `w (S^{1/2} X T^{1/2}) + (1 - w) (S X + X T)/2`.
pub fn heron_map(
    w: f64,
    s: &PsdMatrix,
    t: &PsdMatrix,
    x: &GeneralMatrix,
) -> Result<GeneralMatrix> {
    check_unit_interval("heron weight", w)?;
    let geo = geometric_map(s, t, x)?;
    let ari = arithmetic_map(s, t, x)?;
    geo.scale(w).add(&ari.scale(1.0 - w))
}

/// Logarithmic mean map as the Gauss-Legendre discretization
/// `sum_k w_k S^{v_k} X T^{1 - v_k}`.
///
/// Each node contributes its own literal triple product, so the result is
/// the same matrix the definition prescribes, not a spectral shortcut; the
/// Hadamard form of the logarithmic mean must agree with it to quadrature
/// accuracy.
pub fn logarithmic_map(
    s: &PsdMatrix,
    t: &PsdMatrix,
    x: &GeneralMatrix,
    nodes: usize,
) -> Result<GeneralMatrix> {
    check_map_dims(s, t, x)?;
    let rule = QuadRule::gauss_legendre(nodes)?;
    let mut acc = GeneralMatrix::zeros(x.n());
    for (&v, &w) in rule.nodes().iter().zip(rule.weights()) {
        let left = s.power(v)?.to_general();
        let right = t.power(1.0 - v)?.to_general();
        let term = left.matmul(x)?.matmul(&right)?;
        acc = acc.add(&term.scale(w))?;
    }
    Ok(acc)
}
