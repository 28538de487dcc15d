//! Hyperbolic kernel catalog and Gram positivity experiments.
//!
//! Writing a pair of positive numbers as `(e^{2t}, 1)` turns each ratio of
//! means into an even function of `t`, and a norm or operator ordering
//! between two mean maps extends to every unitarily invariant norm exactly
//! when the associated kernel is positive definite: all Gram matrices
//! `[k(t_i - t_j)]` positive semidefinite. The catalog below collects the
//! kernels behind the laboratory's comparisons; [`gram`] assembles and
//! diagnoses sample Gram matrices, [`search_counterexample`] hunts for point
//! sets with a negative eigenvalue, and [`necessity_witnesses`] replays the
//! fixed point sets showing which scalar orderings refuse to lift.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::rng::{trial_rng, TrialRng};
use crate::scalar::{log_cosh, MeanKind, ScalarPair};
use rand::RngExt;

/// Parameter window treated as the limit of a vanishing exponent, matching
/// the scalar mean families.
const EXPONENT_LIMIT_CUTOFF: f64 = 1e-8;

/// Argument size beyond which `sinh` and `cosh` are handled in peeled log
/// form; below it the direct formulas cannot overflow.
const LARGE_ARGUMENT: f64 = 350.0;

/// Default relative tolerance on Gram eigenvalues: a matrix counts as
/// positive semidefinite when its smallest eigenvalue clears `-tol * trace`.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-8;

/// `log(sinh t)` for `t > 0` without overflow.
fn log_sinh(t: f64) -> f64 {
    t - std::f64::consts::LN_2 + (-(2.0 * t)).exp().ln_1p()
}

/// `log((1 - s) + s cosh t)` for `s` in [0, 1], stable for any `t`.
fn log_mix_cosh(s: f64, t: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    if s == 1.0 {
        return log_cosh(t);
    }
    let a = (1.0 - s).ln();
    let b = s.ln() + log_cosh(t);
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// An even kernel on the real line attached to a mean comparison.
///
/// Every family evaluates to 1 at large spectral ratio compression `t = 0`
/// except the shifted-sech pair, whose value there is `1/(1 + beta)`.
/// Parsing and display use the compact `family:key=value` spelling, e.g.
/// `"phi:r=0.6667"`, `"coshratio:a=1,b=2"`, `"ratio:L/heron:s=0.6"`.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelFamily {
    /// `t (cosh t)^{1-r} / sinh t`; the kernel of the logarithmic mean
    /// against the geometric-arithmetic bridge with exponent `r` in [0, 2].
    PhiR { r: f64 },
    /// `(cosh st)^{1/s} / ((1-s) + s cosh t)` for `s` in [0, 1]; binomial
    /// mean with exponent `s` against the Heron-type denominator mix.
    PsiS { s: f64 },
    /// The reciprocal of [`KernelFamily::PsiS`].
    XiS { s: f64 },
    /// `(t / sinh t) (cosh pt)^{1/p}`; logarithmic mean against the binomial
    /// mean with exponent `p`, any finite `p`, `p -> 0` as the limit.
    EtaP { p: f64 },
    /// `(1 / cosh t)^c` for `c >= 0`.
    SechPow { c: f64 },
    /// `cosh(at) / cosh(bt)`.
    CoshRatio { a: f64, b: f64 },
    /// `1 / (beta + cosh t)` for `beta > -1`.
    ShiftedSech { beta: f64 },
    /// `sinh t / (t (beta + cosh t))` for `beta > -1`.
    SinhSech { beta: f64 },
    /// `M1(e^{2t}, 1) / M2(e^{2t}, 1)` for two scalar mean kinds.
    RatioOfMeans { num: MeanKind, den: MeanKind },
}

fn require_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { what: name })
    }
}

fn require_range(name: &'static str, v: f64, lo: f64, hi: f64) -> Result<()> {
    if (lo..=hi).contains(&v) {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value: v,
            lo,
            hi,
        })
    }
}

impl KernelFamily {
    /// Checks the family parameters against their admissible ranges.
    pub fn validate(&self) -> Result<()> {
        match self {
            KernelFamily::PhiR { r } => require_range("kernel exponent r", *r, 0.0, 2.0),
            KernelFamily::PsiS { s } | KernelFamily::XiS { s } => {
                require_range("kernel weight s", *s, 0.0, 1.0)
            }
            KernelFamily::EtaP { p } => require_finite("kernel exponent p", *p),
            KernelFamily::SechPow { c } => {
                require_finite("sech power c", *c)?;
                if *c < 0.0 {
                    return Err(Error::ParamOutOfRange {
                        name: "sech power c",
                        value: *c,
                        lo: 0.0,
                        hi: f64::INFINITY,
                    });
                }
                Ok(())
            }
            KernelFamily::CoshRatio { a, b } => {
                require_finite("cosh ratio a", *a)?;
                require_finite("cosh ratio b", *b)
            }
            KernelFamily::ShiftedSech { beta } | KernelFamily::SinhSech { beta } => {
                require_finite("kernel shift beta", *beta)?;
                if *beta <= -1.0 {
                    return Err(Error::ParamOutOfRange {
                        name: "kernel shift beta",
                        value: *beta,
                        lo: -1.0,
                        hi: f64::INFINITY,
                    });
                }
                Ok(())
            }
            KernelFamily::RatioOfMeans { num, den } => {
                num.validate()?;
                den.validate()
            }
        }
    }

    /// The kernel's value at `t = 0`, where several defining formulas are
    /// removable singularities.
    pub fn limit_at_zero(&self) -> f64 {
        match self {
            KernelFamily::ShiftedSech { beta } | KernelFamily::SinhSech { beta } => {
                1.0 / (1.0 + beta)
            }
            _ => 1.0,
        }
    }

    /// Evaluates the kernel; even in `t` by construction.
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.validate()?;
        if !t.is_finite() {
            return Err(Error::NonFinite {
                what: "kernel argument t",
            });
        }
        let t = t.abs();
        if t == 0.0 {
            return Ok(self.limit_at_zero());
        }
        let value = match self {
            KernelFamily::PhiR { r } => {
                if t < LARGE_ARGUMENT {
                    t / t.sinh() * ((1.0 - r) * log_cosh(t)).exp()
                } else {
                    (t.ln() + (1.0 - r) * log_cosh(t) - log_sinh(t)).exp()
                }
            }
            KernelFamily::PsiS { s } => psi_log(*s, t).exp(),
            KernelFamily::XiS { s } => (-psi_log(*s, t)).exp(),
            KernelFamily::EtaP { p } => {
                let power = if p.abs() < EXPONENT_LIMIT_CUTOFF {
                    0.0
                } else {
                    log_cosh(p * t) / p
                };
                if t < LARGE_ARGUMENT {
                    t / t.sinh() * power.exp()
                } else {
                    (t.ln() - log_sinh(t) + power).exp()
                }
            }
            KernelFamily::SechPow { c } => (-c * log_cosh(t)).exp(),
            KernelFamily::CoshRatio { a, b } => (log_cosh(a * t) - log_cosh(b * t)).exp(),
            KernelFamily::ShiftedSech { beta } => 1.0 / (beta + t.cosh()),
            KernelFamily::SinhSech { beta } => {
                if t < LARGE_ARGUMENT {
                    t.sinh() / (t * (beta + t.cosh()))
                } else {
                    // beta and e^{-t} are both below relative 1e-150 here.
                    1.0 / t
                }
            }
            KernelFamily::RatioOfMeans { num, den } => {
                // By homogeneity M(e^{2t}, 1) = e^t M(e^t, e^{-t}), so the
                // ratio at the balanced pair avoids overflowing e^{2t}.
                let pair = ScalarPair::new(t.exp(), (-t).exp())?;
                num.eval(pair)? / den.eval(pair)?
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite {
                what: "kernel value",
            })
        }
    }
}

/// `log psi_s(t)`; the `s -> 0` window collapses the numerator to its limit
/// while the denominator keeps the exact weight.
fn psi_log(s: f64, t: f64) -> f64 {
    let numerator = if s < EXPONENT_LIMIT_CUTOFF {
        0.0
    } else {
        log_cosh(s * t) / s
    };
    numerator - log_mix_cosh(s, t)
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelFamily::PhiR { r } => write!(f, "phi:r={r}"),
            KernelFamily::PsiS { s } => write!(f, "psi:s={s}"),
            KernelFamily::XiS { s } => write!(f, "xi:s={s}"),
            KernelFamily::EtaP { p } => write!(f, "eta:p={p}"),
            KernelFamily::SechPow { c } => write!(f, "sechpow:c={c}"),
            KernelFamily::CoshRatio { a, b } => write!(f, "coshratio:a={a},b={b}"),
            KernelFamily::ShiftedSech { beta } => write!(f, "shiftedsech:beta={beta}"),
            KernelFamily::SinhSech { beta } => write!(f, "sinhsech:beta={beta}"),
            KernelFamily::RatioOfMeans { num, den } => write!(f, "ratio:{num}/{den}"),
        }
    }
}

fn parse_kv(spec: &str, part: &str, key: &str) -> Result<f64> {
    let value = part
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| {
            Error::Parse(format!(
                "kernel spec `{spec}` expects parameter `{key}=<value>`"
            ))
        })?;
    value
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("kernel spec `{spec}`: `{value}` is not a number")))
}

impl FromStr for KernelFamily {
    type Err = Error;

    /// Parses the textual form produced by `Display`.
    fn from_str(spec: &str) -> Result<Self> {
        let (head, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("malformed kernel spec `{spec}`")))?;
        let family = match head {
            "phi" => KernelFamily::PhiR {
                r: parse_kv(spec, rest, "r")?,
            },
            "psi" => KernelFamily::PsiS {
                s: parse_kv(spec, rest, "s")?,
            },
            "xi" => KernelFamily::XiS {
                s: parse_kv(spec, rest, "s")?,
            },
            "eta" => KernelFamily::EtaP {
                p: parse_kv(spec, rest, "p")?,
            },
            "sechpow" => KernelFamily::SechPow {
                c: parse_kv(spec, rest, "c")?,
            },
            "coshratio" => {
                let (first, second) = rest.split_once(',').ok_or_else(|| {
                    Error::Parse(format!("kernel spec `{spec}` expects `a=<value>,b=<value>`"))
                })?;
                KernelFamily::CoshRatio {
                    a: parse_kv(spec, first, "a")?,
                    b: parse_kv(spec, second, "b")?,
                }
            }
            "shiftedsech" => KernelFamily::ShiftedSech {
                beta: parse_kv(spec, rest, "beta")?,
            },
            "sinhsech" => KernelFamily::SinhSech {
                beta: parse_kv(spec, rest, "beta")?,
            },
            "ratio" => {
                let (num, den) = rest.split_once('/').ok_or_else(|| {
                    Error::Parse(format!(
                        "kernel spec `{spec}` expects `ratio:<mean>/<mean>`"
                    ))
                })?;
                KernelFamily::RatioOfMeans {
                    num: num.parse()?,
                    den: den.parse()?,
                }
            }
            _ => return Err(Error::Parse(format!("unknown kernel family `{spec}`"))),
        };
        family.validate()?;
        Ok(family)
    }
}

impl Serialize for KernelFamily {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KernelFamily {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Gram matrix of a kernel on a point set, with its spectral verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenReport {
    /// Display form of the kernel family.
    pub family: String,
    pub points: Vec<f64>,
    /// Row-major Gram entries `k(t_i - t_j)`.
    pub gram: Vec<Vec<f64>>,
    /// Nonincreasing eigenvalues.
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    /// The acceptance cutoff actually applied, `-tol * trace`.
    pub threshold: f64,
    pub psd: bool,
}

/// Assembles the Gram matrix `[k(t_i - t_j)]` and judges positive
/// semidefiniteness: the smallest eigenvalue must clear `-tol * trace`.
pub fn gram(family: &KernelFamily, points: &[f64], tol: f64) -> Result<EigenReport> {
    family.validate()?;
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::ParamOutOfRange {
            name: "gram tolerance",
            value: tol,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    if points.is_empty() {
        return Err(Error::Parse("empty kernel point set".into()));
    }
    for &p in points {
        require_finite("kernel evaluation point", p)?;
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(Error::DuplicatePoints { i, j });
            }
        }
    }
    let n = points.len();
    let mut matrix = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            matrix.set_sym(i, j, family.eval(points[i] - points[j])?);
        }
    }
    let (eigenvalues, _) = matrix.eigen()?;
    let min_eigenvalue = *eigenvalues.last().expect("nonempty spectrum");
    let threshold = -tol * matrix.trace();
    let psd = min_eigenvalue >= threshold;
    let gram_rows = (0..n)
        .map(|i| (0..n).map(|j| matrix.get(i, j)).collect())
        .collect();
    Ok(EigenReport {
        family: family.to_string(),
        points: points.to_vec(),
        gram: gram_rows,
        eigenvalues,
        min_eigenvalue,
        threshold,
        psd,
    })
}

/// How [`search_counterexample`] proposes candidate point sets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStrategy {
    /// `{1, .., n}` scaled by 1, 1/2, 2, 1/4, 4, ... in turn.
    IntegerGrid,
    /// Independent uniform draws from `[lo, hi]`.
    RandomUniform { lo: f64, hi: f64 },
    /// Random start in `[lo, hi]`, then single-point perturbations accepted
    /// by a cooling rule driving the smallest eigenvalue down.
    Anneal { lo: f64, hi: f64 },
}

/// Search parameters; the seed fixes the whole trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_points: usize,
    pub strategy: SearchStrategy,
    /// Maximum number of Gram evaluations.
    pub budget: usize,
    pub seed: u64,
    pub tol: f64,
}

fn integer_grid_scale(index: usize) -> f64 {
    if index == 0 {
        1.0
    } else if index % 2 == 1 {
        0.5f64.powi(index.div_ceil(2) as i32)
    } else {
        2.0f64.powi((index / 2) as i32)
    }
}

fn draw_distinct(n: usize, lo: f64, hi: f64, rng: &mut TrialRng) -> Vec<f64> {
    let mut points: Vec<f64> = Vec::with_capacity(n);
    while points.len() < n {
        let candidate = rng.random_range(lo..hi);
        if !points.contains(&candidate) {
            points.push(candidate);
        }
    }
    points
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::ParamOutOfRange {
            name: "search interval",
            value: lo,
            lo: f64::NEG_INFINITY,
            hi,
        });
    }
    Ok(())
}

/// Hunts for a point set on which the kernel's Gram matrix has an
/// eigenvalue below `-tol * trace`.
///
/// The trajectory is fully determined by the seed; a hit is re-verified by
/// a fresh [`gram`] call on the stored points before being returned. `None`
/// means the budget ran out without a certified negative eigenvalue.
pub fn search_counterexample(
    family: &KernelFamily,
    config: &SearchConfig,
) -> Result<Option<EigenReport>> {
    family.validate()?;
    if config.n_points < 2 {
        return Err(Error::ParamOutOfRange {
            name: "search points",
            value: config.n_points as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    let certify = |points: &[f64]| -> Result<Option<EigenReport>> {
        let report = gram(family, points, config.tol)?;
        if report.psd {
            Ok(None)
        } else {
            Ok(Some(report))
        }
    };
    match config.strategy {
        SearchStrategy::IntegerGrid => {
            for index in 0..config.budget {
                let scale = integer_grid_scale(index);
                let points: Vec<f64> =
                    (1..=config.n_points).map(|k| k as f64 * scale).collect();
                if let Some(report) = certify(&points)? {
                    return Ok(Some(report));
                }
            }
            Ok(None)
        }
        SearchStrategy::RandomUniform { lo, hi } => {
            check_interval(lo, hi)?;
            let mut rng = trial_rng(config.seed, 0);
            for _ in 0..config.budget {
                let points = draw_distinct(config.n_points, lo, hi, &mut rng);
                if let Some(report) = certify(&points)? {
                    return Ok(Some(report));
                }
            }
            Ok(None)
        }
        SearchStrategy::Anneal { lo, hi } => {
            check_interval(lo, hi)?;
            if config.budget == 0 {
                return Ok(None);
            }
            let mut rng = trial_rng(config.seed, 0);
            let mut current = draw_distinct(config.n_points, lo, hi, &mut rng);
            let mut current_report = gram(family, &current, config.tol)?;
            if !current_report.psd {
                return Ok(Some(current_report));
            }
            let temperature_scale = 0.1 * current_report.min_eigenvalue.abs().max(1e-3);
            for step in 1..config.budget {
                // Geometric cooling from a quarter of the interval down to
                // roughly a thousandth of it.
                let progress = step as f64 / config.budget as f64;
                let temp = 0.25 * (0.004f64).powf(progress);
                let mut proposal = current.clone();
                let idx = rng.random_range(0..proposal.len());
                let shift = (rng.random::<f64>() - 0.5) * (hi - lo) * temp;
                proposal[idx] = (proposal[idx] + shift).clamp(lo, hi);
                if proposal
                    .iter()
                    .enumerate()
                    .any(|(k, v)| k != idx && *v == proposal[idx])
                {
                    continue;
                }
                let report = gram(family, &proposal, config.tol)?;
                if !report.psd {
                    return Ok(Some(report));
                }
                let delta = report.min_eigenvalue - current_report.min_eigenvalue;
                let accept = delta < 0.0 || {
                    let barrier = (-delta / (temperature_scale * temp)).exp();
                    rng.random::<f64>() < barrier
                };
                if accept {
                    current = proposal;
                    current_report = report;
                }
            }
            Ok(None)
        }
    }
}

/// Replays the fixed point sets certifying that the listed kernels are not
/// positive definite, each re-derived by a fresh Gram evaluation.
///
/// The first four rows are mean-ratio kernels whose scalar orderings fail
/// to lift to all unitarily invariant norms; the last three are catalog
/// families just outside their positivity windows.
pub fn necessity_witnesses(tol: f64) -> Result<Vec<EigenReport>> {
    let integer_points = |n: usize| -> Vec<f64> { (1..=n).map(|k| k as f64).collect() };
    let rows: Vec<(KernelFamily, Vec<f64>)> = vec![
        (
            KernelFamily::RatioOfMeans {
                num: MeanKind::Logarithmic,
                den: MeanKind::Heron(0.6),
            },
            integer_points(3),
        ),
        (
            KernelFamily::RatioOfMeans {
                num: MeanKind::Logarithmic,
                den: MeanKind::Heron(0.7),
            },
            integer_points(2),
        ),
        (
            KernelFamily::RatioOfMeans {
                num: MeanKind::Heron(0.9),
                den: MeanKind::Heron(0.8),
            },
            integer_points(4),
        ),
        (
            KernelFamily::RatioOfMeans {
                num: MeanKind::Binomial(1.0 / 3.0),
                den: MeanKind::Heron(2.0 / 3.0),
            },
            integer_points(3),
        ),
        (KernelFamily::PhiR { r: 0.9 }, integer_points(5)),
        (KernelFamily::EtaP { p: 3.0 / 7.0 }, integer_points(7)),
        (KernelFamily::ShiftedSech { beta: 2.0 }, integer_points(7)),
    ];
    rows.into_iter()
        .map(|(family, points)| gram(&family, &points, tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(spec: &str) -> KernelFamily {
        spec.parse().unwrap()
    }

    #[test]
    fn display_and_parse_round_trip() {
        let specs = [
            "phi:r=0.75",
            "psi:s=0.25",
            "xi:s=0.75",
            "eta:p=0.42",
            "sechpow:c=1",
            "coshratio:a=1,b=2",
            "shiftedsech:beta=1",
            "sinhsech:beta=0.5",
            "ratio:L/heron:s=0.6",
            "ratio:binomial:p=0.5/A",
        ];
        for spec in specs {
            let parsed = family(spec);
            assert_eq!(parsed.to_string(), spec, "{spec}");
            assert_eq!(family(&parsed.to_string()), parsed);
        }
    }

    #[test]
    fn malformed_specs_are_rejected() {
        for spec in [
            "phi",
            "phi:q=0.5",
            "phi:r=brick",
            "coshratio:a=1",
            "ratio:L",
            "ratio:L/heron:s=2",
            "nosuch:x=1",
            "shiftedsech:beta=-1",
            "psi:s=1.5",
        ] {
            assert!(spec.parse::<KernelFamily>().is_err(), "{spec}");
        }
    }

    #[test]
    fn kernels_are_even_and_continuous_at_zero() {
        let families = [
            family("phi:r=0.6667"),
            family("psi:s=0.25"),
            family("xi:s=0.75"),
            family("eta:p=0.42857142857142855"),
            family("sechpow:c=1"),
            family("coshratio:a=1,b=2"),
            family("shiftedsech:beta=0.5"),
            family("sinhsech:beta=0.5"),
            family("ratio:L/A"),
        ];
        for fam in &families {
            for t in [0.3, 1.0, 4.7] {
                assert_eq!(
                    fam.eval(t).unwrap().to_bits(),
                    fam.eval(-t).unwrap().to_bits(),
                    "{fam}"
                );
            }
            let at_zero = fam.limit_at_zero();
            let nearby = fam.eval(1e-9).unwrap();
            assert!(
                (nearby - at_zero).abs() <= 1e-8 * at_zero.abs().max(1.0),
                "{fam}: {nearby} vs {at_zero}"
            );
        }
    }

    #[test]
    fn phi_frozen_values() {
        let fam = family("phi:r=0.6666666666666666");
        let one = fam.eval(1.0).unwrap();
        let two = fam.eval(2.0).unwrap();
        assert!((one - 0.983_295_344_858_235_6).abs() < 1e-12, "{one}");
        assert!((two - 0.857_655_642_090_268_7).abs() < 1e-12, "{two}");
    }

    #[test]
    fn eta_frozen_value() {
        let fam = KernelFamily::EtaP { p: 3.0 / 7.0 };
        let one = fam.eval(1.0).unwrap();
        assert!((one - 1.047_693_383_819_849_1).abs() < 1e-12, "{one}");
    }

    #[test]
    fn kernels_survive_extreme_arguments() {
        let families = [
            family("phi:r=0"),
            family("phi:r=2"),
            family("psi:s=0.25"),
            family("xi:s=0.75"),
            family("eta:p=0.42857142857142855"),
            family("eta:p=-1.5"),
            family("sechpow:c=3"),
            family("shiftedsech:beta=0.5"),
            family("sinhsech:beta=0.5"),
        ];
        for fam in &families {
            for t in [1e-12, 1e-3, 1.0, 50.0, 400.0, 800.0] {
                let v = fam.eval(t).unwrap();
                assert!(v.is_finite() && v >= 0.0, "{fam} at {t}: {v}");
            }
        }
    }

    #[test]
    fn psi_and_xi_are_reciprocal() {
        let psi = family("psi:s=0.25");
        let xi = family("xi:s=0.25");
        for t in [0.1, 1.0, 3.0, 10.0] {
            let product = psi.eval(t).unwrap() * xi.eval(t).unwrap();
            assert!((product - 1.0).abs() < 1e-14, "t = {t}: {product}");
        }
    }

    #[test]
    fn gram_matches_reported_eigenvalues_for_phi() {
        let report = gram(
            &family("phi:r=0.6666666666666666"),
            &[1.0, 2.0, 3.0],
            DEFAULT_KERNEL_TOL,
        )
        .unwrap();
        let expected = [2.884_036_66, 0.142_344_36, -0.026_381_02];
        for (got, want) in report.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-6, "{got} vs {want}");
        }
        assert!(!report.psd);
        assert!((report.min_eigenvalue - expected[2]).abs() < 1e-6);
    }

    #[test]
    fn gram_matches_reported_eigenvalues_for_psi_and_xi() {
        let psi = gram(&family("psi:s=0.25"), &[1.0, 2.0, 3.0], DEFAULT_KERNEL_TOL).unwrap();
        for (got, want) in psi
            .eigenvalues
            .iter()
            .zip([2.966_262_23, 0.043_615_5, -0.009_877_73])
        {
            assert!((got - want).abs() < 1e-6, "psi: {got} vs {want}");
        }
        assert!(!psi.psd);

        let xi = gram(&family("xi:s=0.75"), &[1.0, 2.0, 3.0], DEFAULT_KERNEL_TOL).unwrap();
        for (got, want) in xi
            .eigenvalues
            .iter()
            .zip([2.984_320_01, 0.018_205_314_4, -0.002_525_32])
        {
            assert!((got - want).abs() < 1e-6, "xi: {got} vs {want}");
        }
        assert!(!xi.psd);
    }

    #[test]
    fn positive_families_stay_positive_on_integer_points() {
        let points: Vec<f64> = (1..=6).map(|k| k as f64).collect();
        for spec in [
            "phi:r=1",
            "sechpow:c=1",
            "sechpow:c=2.5",
            "coshratio:a=1,b=2",
            "shiftedsech:beta=1",
            "shiftedsech:beta=-0.5",
            "ratio:L/A",
            "ratio:G/A",
        ] {
            let report = gram(&family(spec), &points, DEFAULT_KERNEL_TOL).unwrap();
            assert!(report.psd, "{spec}: min eigenvalue {}", report.min_eigenvalue);
        }
    }

    #[test]
    fn shifted_sech_flips_sign_between_six_and_seven_points() {
        let fam = family("shiftedsech:beta=2");
        let six: Vec<f64> = (1..=6).map(|k| k as f64).collect();
        let seven: Vec<f64> = (1..=7).map(|k| k as f64).collect();
        let r6 = gram(&fam, &six, DEFAULT_KERNEL_TOL).unwrap();
        let r7 = gram(&fam, &seven, DEFAULT_KERNEL_TOL).unwrap();
        assert!(r6.psd, "min {}", r6.min_eigenvalue);
        assert!((r6.min_eigenvalue - 2.686_523e-5).abs() < 1e-9);
        assert!(!r7.psd, "min {}", r7.min_eigenvalue);
        assert!((r7.min_eigenvalue - (-3.273_720e-4)).abs() < 1e-9);
    }

    #[test]
    fn gram_rejects_bad_inputs() {
        let fam = family("sechpow:c=1");
        assert!(matches!(
            gram(&fam, &[1.0, 2.0, 1.0], 1e-8).unwrap_err(),
            Error::DuplicatePoints { i: 0, j: 2 }
        ));
        assert!(gram(&fam, &[], 1e-8).is_err());
        assert!(gram(&fam, &[1.0, f64::NAN], 1e-8).is_err());
        assert!(gram(&fam, &[1.0, 2.0], -1.0).is_err());
    }

    #[test]
    fn integer_grid_scales_escalate_both_ways() {
        let scales: Vec<f64> = (0..7).map(integer_grid_scale).collect();
        assert_eq!(scales, vec![1.0, 0.5, 2.0, 0.25, 4.0, 0.125, 8.0]);
    }

    #[test]
    fn integer_grid_search_finds_the_shifted_sech_witness() {
        let config = SearchConfig {
            n_points: 7,
            strategy: SearchStrategy::IntegerGrid,
            budget: 10,
            seed: 1,
            tol: DEFAULT_KERNEL_TOL,
        };
        let report = search_counterexample(&family("shiftedsech:beta=2"), &config)
            .unwrap()
            .expect("witness");
        assert_eq!(report.points, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
        assert!(report.min_eigenvalue < 0.0);
    }

    #[test]
    fn random_search_finds_a_phi_witness() {
        let config = SearchConfig {
            n_points: 5,
            strategy: SearchStrategy::RandomUniform { lo: 0.0, hi: 10.0 },
            budget: 200,
            seed: 7,
            tol: DEFAULT_KERNEL_TOL,
        };
        let report = search_counterexample(&family("phi:r=0.9"), &config)
            .unwrap()
            .expect("witness");
        assert!(report.min_eigenvalue < report.threshold);
        // The verdict must replay on the stored points.
        let fresh = gram(&family("phi:r=0.9"), &report.points, DEFAULT_KERNEL_TOL).unwrap();
        assert!(!fresh.psd);
    }

    #[test]
    fn anneal_search_finds_an_eta_witness() {
        let config = SearchConfig {
            n_points: 7,
            strategy: SearchStrategy::Anneal { lo: 0.0, hi: 10.0 },
            budget: 300,
            seed: 3,
            tol: DEFAULT_KERNEL_TOL,
        };
        let report = search_counterexample(&KernelFamily::EtaP { p: 3.0 / 7.0 }, &config)
            .unwrap()
            .expect("witness");
        assert!(report.min_eigenvalue < 0.0);
    }

    #[test]
    fn search_on_a_positive_family_exhausts_its_budget() {
        let config = SearchConfig {
            n_points: 4,
            strategy: SearchStrategy::RandomUniform { lo: 0.0, hi: 10.0 },
            budget: 50,
            seed: 5,
            tol: DEFAULT_KERNEL_TOL,
        };
        let outcome = search_counterexample(&family("sechpow:c=1"), &config).unwrap();
        assert!(outcome.is_none());
    }

    #[test]
    fn necessity_witnesses_all_fail_positivity() {
        let reports = necessity_witnesses(DEFAULT_KERNEL_TOL).unwrap();
        assert_eq!(reports.len(), 7);
        let expected_min = [
            -9.53e-4, -1.06e-2, -2.24e-3, -6.37e-3, -1.16e-3, -2.315, -3.274e-4,
        ];
        for (report, want) in reports.iter().zip(expected_min) {
            assert!(!report.psd, "{}: min {}", report.family, report.min_eigenvalue);
            assert!(
                (report.min_eigenvalue - want).abs() <= 5e-3 * want.abs(),
                "{}: {} vs {}",
                report.family,
                report.min_eigenvalue,
                want
            );
        }
    }

    #[test]
    fn search_rejects_degenerate_configurations() {
        let fam = family("sechpow:c=1");
        let bad_points = SearchConfig {
            n_points: 1,
            strategy: SearchStrategy::IntegerGrid,
            budget: 5,
            seed: 0,
            tol: 1e-8,
        };
        assert!(search_counterexample(&fam, &bad_points).is_err());
        let bad_interval = SearchConfig {
            n_points: 3,
            strategy: SearchStrategy::RandomUniform { lo: 2.0, hi: 1.0 },
            budget: 5,
            seed: 0,
            tol: 1e-8,
        };
        assert!(search_counterexample(&fam, &bad_interval).is_err());
    }
}
