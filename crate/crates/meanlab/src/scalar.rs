//! Scalar means of two positive numbers.
//!
//! Implements the classical two-variable means (arithmetic, geometric,
//! harmonic, logarithmic) together with the parametric families used by the
//! verification suites: binomial (power) means, Heron means in both
//! orientations, Heinz means, the geometric-arithmetic bridge, Lehmer means,
//! and power-difference means. Parameter values at which a family's defining
//! formula degenerates (removable singularities, equal arguments) are handled
//! by explicit limit branches so every evaluation is finite and accurate to a
//! few ulps across the full positive range.
//!
//! All means here are symmetric, jointly homogeneous of degree one, and lie
//! between `min(a, b)` and `max(a, b)`; the property tests assert exactly
//! that, and formulas without manifest symmetry evaluate on the canonically
//! ordered pair so that `m(a, b)` and `m(b, a)` are bitwise identical.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A validated pair of strictly positive, finite numbers.
///
/// The constructor is the single domain gate for scalar evaluation: once a
/// pair exists, every mean of it is finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarPair {
    a: f64,
    b: f64,
}

impl ScalarPair {
    /// Builds a pair, rejecting nonpositive or non-finite coordinates.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        for v in [a, b] {
            if !v.is_finite() {
                return Err(Error::NonFinite { what: "pair entry" });
            }
            if v <= 0.0 {
                return Err(Error::NonPositive { value: v });
            }
        }
        Ok(Self { a, b })
    }

    /// The pair `(x, 1)`; means of it are functions of the ratio alone.
    pub fn from_ratio(x: f64) -> Result<Self> {
        Self::new(x, 1.0)
    }

    pub fn a(self) -> f64 {
        self.a
    }

    pub fn b(self) -> f64 {
        self.b
    }

    /// `a / b`.
    pub fn ratio(self) -> f64 {
        self.a / self.b
    }

    /// The same pair with coordinates exchanged.
    pub fn swapped(self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    pub fn min(self) -> f64 {
        self.a.min(self.b)
    }

    pub fn max(self) -> f64 {
        self.a.max(self.b)
    }

    /// `(max, min)`; evaluation order for formulas without manifest symmetry.
    fn ordered(self) -> (f64, f64) {
        (self.max(), self.min())
    }
}

/// `log(hi / lo)` for `hi >= lo > 0`, accurate to a few ulps relative even
/// when the quotient is close to 1.
///
/// For ratios below 2 the difference `hi - lo` is exact (Sterbenz) and
/// `log1p` of the exact relative difference carries no cancellation; the
/// naive difference of logarithms would amplify rounding by `1/log(hi/lo)`,
/// which is what poisons every near-diagonal mean formula built on it.
fn log_ratio_ordered(hi: f64, lo: f64) -> f64 {
    if hi <= 2.0 * lo {
        ((hi - lo) / lo).ln_1p()
    } else {
        hi.ln() - lo.ln()
    }
}

/// Arithmetic mean `(a + b) / 2`.
pub fn arithmetic(p: ScalarPair) -> f64 {
    p.a / 2.0 + p.b / 2.0
}

/// Geometric mean `sqrt(a b)`, evaluated as a product of square roots so the
/// intermediate never overflows.
pub fn geometric(p: ScalarPair) -> f64 {
    p.a.sqrt() * p.b.sqrt()
}

/// Harmonic mean `2ab / (a + b)`, evaluated through reciprocals.
pub fn harmonic(p: ScalarPair) -> f64 {
    2.0 / (1.0 / p.a + 1.0 / p.b)
}

/// Threshold on `|log(a/b)|` below which the logarithmic mean switches to its
/// Taylor expansion around the diagonal.
const LOG_MEAN_SERIES_CUTOFF: f64 = 1e-6;

/// Logarithmic mean `(a - b) / (log a - log b)`, with `L(a, a) = a`.
///
/// The denominator comes from [`log_ratio_ordered`], so the quotient stays
/// accurate to a few ulps arbitrarily close to the diagonal; below the series
/// cutoff the expansion `L(b(1+h), b) = b (1 + h/2 - h^2/12 + h^3/24 -
/// 19 h^4/720)` takes over, with truncation error below 1e-30 relative there.
pub fn logarithmic(p: ScalarPair) -> f64 {
    let (hi, lo) = p.ordered();
    if hi == lo {
        return hi;
    }
    let d = log_ratio_ordered(hi, lo);
    if d < LOG_MEAN_SERIES_CUTOFF {
        // Ratios this close to 1 make hi - lo exact, so h carries one rounding.
        let h = (hi - lo) / lo;
        lo * (1.0 + h * (0.5 + h * (-1.0 / 12.0 + h * (1.0 / 24.0 - h * (19.0 / 720.0)))))
    } else {
        (hi - lo) / d
    }
}

/// Exponent window treated as the `p -> 0` (geometric) limit of the binomial
/// mean, and as the `u -> 0` and `u -> 1` limits of the power-difference mean.
const EXPONENT_LIMIT_CUTOFF: f64 = 1e-8;

/// `log(cosh u)` without overflow for any argument: `cosh u - 1 = 2 sinh^2(u/2)`
/// feeds `log1p` for moderate `u`, and the large-`|u|` branch peels off the
/// dominant `|u| - log 2` term.
pub(crate) fn log_cosh(u: f64) -> f64 {
    let t = u.abs();
    if t < 350.0 {
        let s = (t / 2.0).sinh();
        (2.0 * s * s).ln_1p()
    } else {
        t - std::f64::consts::LN_2 + (-2.0 * t).exp().ln_1p()
    }
}

fn binomial_core(p_exp: f64, pair: ScalarPair) -> f64 {
    if p_exp.abs() < EXPONENT_LIMIT_CUTOFF {
        return geometric(pair);
    }
    // Writing max = G e^{d/2}, min = G e^{-d/2} with d = log(max/min) turns
    // ((a^p + b^p)/2)^(1/p) into G (cosh(p d / 2))^(1/p); log_cosh keeps the
    // evaluation finite for any p, and the error in the exponent stays near
    // machine level uniformly in p, including just outside the p -> 0 window.
    let (hi, lo) = pair.ordered();
    let d = log_ratio_ordered(hi, lo);
    geometric(pair) * (log_cosh(p_exp * d / 2.0) / p_exp).exp()
}

/// Binomial (power) mean `((a^p + b^p)/2)^(1/p)`; `|p| < 1e-8` evaluates the
/// geometric-mean limit. Any finite `p` is admissible.
pub fn binomial(p_exp: f64, pair: ScalarPair) -> Result<f64> {
    if !p_exp.is_finite() {
        return Err(Error::NonFinite { what: "binomial exponent p" });
    }
    Ok(binomial_core(p_exp, pair))
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

/// Heron mean `s G + (1 - s) A` for `s` in [0, 1]; decreases from the
/// arithmetic mean at `s = 0` to the geometric mean at `s = 1`.
pub fn heron(s: f64, pair: ScalarPair) -> Result<f64> {
    check_unit_interval("heron weight s", s)?;
    Ok(s * geometric(pair) + (1.0 - s) * arithmetic(pair))
}

/// Reversed Heron mean `(1 - s) G + s A`; equals `heron(1 - s, ..)` and runs
/// from the geometric mean at `s = 0` to the arithmetic mean at `s = 1`.
pub fn heron_hat(s: f64, pair: ScalarPair) -> Result<f64> {
    check_unit_interval("heron-hat weight s", s)?;
    Ok((1.0 - s) * geometric(pair) + s * arithmetic(pair))
}

/// Heinz mean `(a^v b^(1-v) + a^(1-v) b^v) / 2` for `v` in [0, 1]; symmetric
/// about `v = 1/2` where it equals the geometric mean, and equal to the
/// arithmetic mean at the endpoints.
pub fn heinz(v: f64, pair: ScalarPair) -> Result<f64> {
    check_unit_interval("heinz weight v", v)?;
    // (a^v b^{1-v} + a^{1-v} b^v)/2 = G cosh((v - 1/2) d), d = log(max/min).
    // The cosh form is even in v - 1/2, so the v <-> 1 - v symmetry is exact
    // in floating point.
    let (hi, lo) = pair.ordered();
    let d = log_ratio_ordered(hi, lo);
    let t = ((v - 0.5) * d).abs();
    let g = geometric(pair);
    if t > EXPM1_OVERFLOW_GUARD {
        // cosh would overflow even though the mean itself is representable
        // (it is at most the arithmetic mean); the e^{-t} half drops out.
        Ok((g.ln() + t - std::f64::consts::LN_2).exp())
    } else {
        Ok(g * t.cosh())
    }
}

/// Geometric-arithmetic bridge `G^r A^(1-r)` for `r` in [0, 2]; interpolates
/// from the arithmetic mean (`r = 0`) through the geometric mean (`r = 1`) to
/// the harmonic mean (`r = 2`), nonincreasing in `r`.
pub fn bridge(r: f64, pair: ScalarPair) -> Result<f64> {
    if !(0.0..=2.0).contains(&r) {
        return Err(Error::ParamOutOfRange {
            name: "bridge exponent r",
            value: r,
            lo: 0.0,
            hi: 2.0,
        });
    }
    let log_g = (pair.a.ln() + pair.b.ln()) / 2.0;
    let log_a = arithmetic(pair).ln();
    Ok((r * log_g + (1.0 - r) * log_a).exp())
}

/// Lehmer mean `(a^t + b^t) / (a^(t-1) + b^(t-1))` for `t` in [0, 1]; runs
/// from the harmonic mean at `t = 0` through the geometric mean at `t = 1/2`
/// to the arithmetic mean at `t = 1`.
pub fn lehmer(t: f64, pair: ScalarPair) -> Result<f64> {
    check_unit_interval("lehmer exponent", t)?;
    // Factoring out the larger coordinate keeps both power sums finite even
    // for extreme ratios: the surviving powers of w = min/max lie in (0, 1]
    // and [1, 1/w] respectively.
    let (hi, lo) = pair.ordered();
    let w = lo / hi;
    Ok(hi * (1.0 + w.powf(t)) / (1.0 + w.powf(t - 1.0)))
}

/// Argument bound beyond which `expm1` overflows and the power-difference
/// mean switches to log-space evaluation.
const EXPM1_OVERFLOW_GUARD: f64 = 700.0;

fn power_diff_core(u: f64, pair: ScalarPair) -> f64 {
    if u.abs() < EXPONENT_LIMIT_CUTOFF {
        // u -> 0 limit: G^2 / L.
        let g = geometric(pair);
        return g * (g / logarithmic(pair));
    }
    if (u - 1.0).abs() < EXPONENT_LIMIT_CUTOFF {
        // u -> 1 limit: the logarithmic mean.
        return logarithmic(pair);
    }
    let (hi, lo) = pair.ordered();
    if hi == lo {
        return hi;
    }
    // ((u-1)/u) (a^u - b^u) / (a^(u-1) - b^(u-1))
//      = lo ((u-1)/u) expm1(u d) / expm1((u-1) d),  d = log(hi/lo) > 0.
    // The expm1 form is uniformly stable near the diagonal, where the raw
    // differences cancel; the two guarded branches re-form the quotient in
    // log space when an expm1 argument would overflow.
    let d = log_ratio_ordered(hi, lo);
    let coeff = (u - 1.0) / u;
    if u > 1.0 && u * d > EXPM1_OVERFLOW_GUARD {
        let log_ratio = d + (-(-u * d).exp()).ln_1p() - (-(-(u - 1.0) * d).exp()).ln_1p();
        lo * coeff * log_ratio.exp()
    } else if u < 1.0 && u > 0.0 && u * d > EXPM1_OVERFLOW_GUARD {
        let log_value = lo.ln() + (-coeff).ln() + u * d - (-((u - 1.0) * d).exp()).ln_1p();
        log_value.exp()
    } else {
        lo * coeff * (u * d).exp_m1() / ((u - 1.0) * d).exp_m1()
    }
}

/// Power-difference mean `((u-1)/u) (a^u - b^u) / (a^(u-1) - b^(u-1))`.
///
/// The family interpolates several classical means: `u = -1` gives the
/// harmonic, `u = 1/2` the geometric, `u = 2` the arithmetic mean. The
/// removable singularities at `u = 0` and `u = 1` evaluate their limits,
/// `G^2 / L` and the logarithmic mean. Any finite `u` is admissible.
pub fn power_diff(u: f64, pair: ScalarPair) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::NonFinite { what: "power-difference exponent u" });
    }
    Ok(power_diff_core(u, pair))
}

/// Identifies a mean, carrying any family parameter.
///
/// Serializes to and parses from a compact textual form (`"A"`, `"L"`,
/// `"heron:s=0.6"`, `"binomial:p=0.3333"`, ...) used by kernel family specs
/// and report files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
    Logarithmic,
    /// Binomial (power) mean with exponent `p`.
    Binomial(f64),
    /// Heron mean with weight `s` on the geometric component.
    Heron(f64),
    /// Reversed Heron mean with weight `s` on the arithmetic component.
    HeronHat(f64),
    /// Heinz mean with weight `v`.
    Heinz(f64),
    /// Geometric-arithmetic bridge with exponent `r`.
    Bridge(f64),
    /// Lehmer mean with exponent `t`.
    Lehmer(f64),
    /// Power-difference mean with exponent `u`.
    PowerDiff(f64),
}

impl MeanKind {
    /// Checks the family parameter against its admissible range.
    pub fn validate(self) -> Result<()> {
        match self {
            MeanKind::Arithmetic
            | MeanKind::Geometric
            | MeanKind::Harmonic
            | MeanKind::Logarithmic => Ok(()),
            MeanKind::Binomial(p) => {
                if p.is_finite() {
                    Ok(())
                } else {
                    Err(Error::NonFinite { what: "binomial exponent p" })
                }
            }
            MeanKind::Heron(s) => check_unit_interval("heron weight s", s),
            MeanKind::HeronHat(s) => check_unit_interval("heron-hat weight s", s),
            MeanKind::Heinz(v) => check_unit_interval("heinz weight v", v),
            MeanKind::Bridge(r) => {
                if (0.0..=2.0).contains(&r) {
                    Ok(())
                } else {
                    Err(Error::ParamOutOfRange {
                        name: "bridge exponent r",
                        value: r,
                        lo: 0.0,
                        hi: 2.0,
                    })
                }
            }
            MeanKind::Lehmer(t) => check_unit_interval("lehmer exponent", t),
            MeanKind::PowerDiff(u) => {
                if u.is_finite() {
                    Ok(())
                } else {
                    Err(Error::NonFinite { what: "power-difference exponent u" })
                }
            }
        }
    }

    /// Evaluates the mean on a validated pair.
    pub fn eval(self, pair: ScalarPair) -> Result<f64> {
        match self {
            MeanKind::Arithmetic => Ok(arithmetic(pair)),
            MeanKind::Geometric => Ok(geometric(pair)),
            MeanKind::Harmonic => Ok(harmonic(pair)),
            MeanKind::Logarithmic => Ok(logarithmic(pair)),
            MeanKind::Binomial(p) => binomial(p, pair),
            MeanKind::Heron(s) => heron(s, pair),
            MeanKind::HeronHat(s) => heron_hat(s, pair),
            MeanKind::Heinz(v) => heinz(v, pair),
            MeanKind::Bridge(r) => bridge(r, pair),
            MeanKind::Lehmer(t) => lehmer(t, pair),
            MeanKind::PowerDiff(u) => power_diff(u, pair),
        }
    }

    /// Evaluates the continuous extension to nonnegative arguments.
    ///
    /// Spectral constructions feed eigenvalue pairs of positive semidefinite
    /// matrices into scalar means, and zero eigenvalues are legitimate there.
    /// Every catalog mean has a finite limit as one argument tends to zero
    /// (most vanish; the arithmetic-like ones tend to half the surviving
    /// argument), and this method evaluates exactly that limit. A negative
    /// argument is a caller error and is reported as undefined.
    pub fn eval_nonneg(self, lambda: f64, mu: f64) -> Result<f64> {
        self.validate()?;
        if lambda < 0.0 || mu < 0.0 || !lambda.is_finite() || !mu.is_finite() {
            return Err(self.undefined_at(lambda, mu));
        }
        if lambda > 0.0 && mu > 0.0 {
            return self.eval(ScalarPair { a: lambda, b: mu });
        }
        let hi = lambda.max(mu);
        if hi == 0.0 {
            return Ok(0.0);
        }
        // One argument is exactly zero; the other is hi > 0.
        let value = match self {
            MeanKind::Arithmetic => hi / 2.0,
            MeanKind::Geometric | MeanKind::Harmonic | MeanKind::Logarithmic => 0.0,
            MeanKind::Binomial(p) => {
                if p >= EXPONENT_LIMIT_CUTOFF {
                    hi * (0.5f64).powf(1.0 / p)
                } else {
                    0.0
                }
            }
            MeanKind::Heron(s) => (1.0 - s) * hi / 2.0,
            MeanKind::HeronHat(s) => s * hi / 2.0,
            MeanKind::Heinz(v) => {
                if v == 0.0 || v == 1.0 {
                    hi / 2.0
                } else {
                    0.0
                }
            }
            MeanKind::Bridge(r) => {
                if r == 0.0 {
                    hi / 2.0
                } else {
                    0.0
                }
            }
            MeanKind::Lehmer(t) => {
                if t == 1.0 {
                    hi / 2.0
                } else {
                    0.0
                }
            }
            MeanKind::PowerDiff(u) => {
                if u > 1.0 + EXPONENT_LIMIT_CUTOFF {
                    hi * (u - 1.0) / u
                } else {
                    0.0
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(self.undefined_at(lambda, mu))
        }
    }

    fn undefined_at(self, lambda: f64, mu: f64) -> Error {
        Error::UndefinedAtEigenpair {
            mean: self.to_string(),
            lambda,
            mu,
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanKind::Arithmetic => write!(f, "A"),
            MeanKind::Geometric => write!(f, "G"),
            MeanKind::Harmonic => write!(f, "H"),
            MeanKind::Logarithmic => write!(f, "L"),
            MeanKind::Binomial(p) => write!(f, "binomial:p={p}"),
            MeanKind::Heron(s) => write!(f, "heron:s={s}"),
            MeanKind::HeronHat(s) => write!(f, "heronhat:s={s}"),
            MeanKind::Heinz(v) => write!(f, "heinz:v={v}"),
            MeanKind::Bridge(r) => write!(f, "bridge:r={r}"),
            MeanKind::Lehmer(t) => write!(f, "lehmer:alpha={t}"),
            MeanKind::PowerDiff(u) => write!(f, "powerdiff:u={u}"),
        }
    }
}

fn parse_param(spec: &str, family: &str, key: &str) -> Result<f64> {
    let rest = spec
        .strip_prefix(family)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::Parse(format!("malformed mean spec `{spec}`")))?;
    let value = rest
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| {
            Error::Parse(format!("mean spec `{spec}` expects parameter `{key}=<value>`"))
        })?;
    value
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("mean spec `{spec}`: `{value}` is not a number")))
}

impl FromStr for MeanKind {
    type Err = Error;

    /// Parses the textual form produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let kind = match s {
            "A" => MeanKind::Arithmetic,
            "G" => MeanKind::Geometric,
            "H" => MeanKind::Harmonic,
            "L" => MeanKind::Logarithmic,
            _ => {
                let family = s.split(':').next().unwrap_or(s);
                match family {
                    "binomial" => MeanKind::Binomial(parse_param(s, "binomial", "p")?),
                    "heron" => MeanKind::Heron(parse_param(s, "heron", "s")?),
                    "heronhat" => MeanKind::HeronHat(parse_param(s, "heronhat", "s")?),
                    "heinz" => MeanKind::Heinz(parse_param(s, "heinz", "v")?),
                    "bridge" => MeanKind::Bridge(parse_param(s, "bridge", "r")?),
                    "lehmer" => MeanKind::Lehmer(parse_param(s, "lehmer", "alpha")?),
                    "powerdiff" => MeanKind::PowerDiff(parse_param(s, "powerdiff", "u")?),
                    _ => return Err(Error::Parse(format!("unknown mean `{s}`"))),
                }
            }
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl serde::Serialize for MeanKind {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for MeanKind {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: f64, b: f64) -> ScalarPair {
        ScalarPair::new(a, b).unwrap()
    }

    fn assert_rel(actual: f64, expected: f64, rel: f64) {
        let scale = expected.abs().max(1e-300);
        assert!(
            (actual - expected).abs() <= rel * scale,
            "actual {actual:e} vs expected {expected:e} (rel tol {rel:e})"
        );
    }

    #[test]
    fn rejects_invalid_pairs() {
        assert!(ScalarPair::new(0.0, 1.0).is_err());
        assert!(ScalarPair::new(-1.0, 2.0).is_err());
        assert!(ScalarPair::new(f64::NAN, 1.0).is_err());
        assert!(ScalarPair::new(1.0, f64::INFINITY).is_err());
        assert!(ScalarPair::new(1e-300, 1e300).is_ok());
    }

    #[test]
    fn classical_values() {
        let p = pair(4.0, 1.0);
        assert_eq!(arithmetic(p), 2.5);
        assert_eq!(geometric(p), 2.0);
        assert_eq!(harmonic(p), 1.6);
    }

    #[test]
    fn logarithmic_matches_closed_forms() {
        // L(e^2, 1) = (e^2 - 1) / 2.
        let e2 = std::f64::consts::E * std::f64::consts::E;
        assert_rel(logarithmic(pair(e2, 1.0)), 3.194_528_049_465_325, 1e-15);
        // L(8, 1) = 7 / log 8.
        assert_rel(logarithmic(pair(8.0, 1.0)), 3.366_288_428_740_915, 1e-15);
        assert_eq!(logarithmic(pair(3.5, 3.5)), 3.5);
    }

    #[test]
    fn logarithmic_series_branch_is_continuous() {
        // Values straddling the series cutoff must agree through ~13 digits.
        for scale in [1.0, 1e-4, 1e5] {
            let just_in = scale * (1.0 + 0.9e-6);
            let just_out = scale * (1.0 + 1.1e-6);
            let li = logarithmic(pair(just_in, scale));
            let lo = logarithmic(pair(just_out, scale));
            assert_rel(li, scale * (1.0 + 0.45e-6), 1e-12);
            assert_rel(lo, scale * (1.0 + 0.55e-6), 1e-12);
        }
    }

    #[test]
    fn logarithmic_is_bitwise_symmetric() {
        for (a, b) in [(2.0, 3.0), (1.0, 1.0 + 1e-7), (1e-6, 1e6), (5.0, 4.999)] {
            assert_eq!(
                logarithmic(pair(a, b)).to_bits(),
                logarithmic(pair(b, a)).to_bits()
            );
        }
    }

    #[test]
    fn binomial_special_exponents() {
        let p = pair(4.0, 1.0);
        assert_rel(binomial(1.0, p).unwrap(), 2.5, 1e-15);
        assert_rel(binomial(-1.0, p).unwrap(), 1.6, 1e-15);
        assert_rel(binomial(0.0, p).unwrap(), 2.0, 1e-15);
        assert_rel(binomial(1e-12, p).unwrap(), 2.0, 1e-15);
        // B_{1/3}(8, 1) = ((2 + 1)/2)^3 = 3.375.
        assert_rel(binomial(1.0 / 3.0, pair(8.0, 1.0)).unwrap(), 3.375, 1e-14);
        assert_rel(binomial(2.0, p).unwrap(), (8.5f64).sqrt(), 1e-15);
    }

    #[test]
    fn binomial_survives_extreme_exponents() {
        let p = pair(1e6, 1.0);
        let b_big = binomial(200.0, p).unwrap();
        assert!(b_big > 0.99e6 && b_big <= 1e6);
        let b_small = binomial(-200.0, p).unwrap();
        assert!(b_small >= 1.0 && b_small < 1.01);
        assert!(binomial(1e300, p).unwrap().is_finite());
    }

    #[test]
    fn heron_family_endpoints() {
        let p = pair(4.0, 1.0);
        assert_eq!(heron(0.0, p).unwrap(), 2.5);
        assert_eq!(heron(1.0, p).unwrap(), 2.0);
        assert_eq!(heron_hat(0.0, p).unwrap(), 2.0);
        assert_eq!(heron_hat(1.0, p).unwrap(), 2.5);
        // The reversed orientation is the mirrored weight.
        for s in [0.1, 0.25, 0.5, 0.9] {
            assert_eq!(
                heron_hat(s, p).unwrap().to_bits(),
                heron(1.0 - s, p).unwrap().to_bits()
            );
        }
        assert!(heron(1.5, p).is_err());
        assert!(heron(-0.1, p).is_err());
    }

    #[test]
    fn heinz_values() {
        // Hz_{1/4}(16, 1) = (2 + 8)/2 = 5.
        assert_rel(heinz(0.25, pair(16.0, 1.0)).unwrap(), 5.0, 1e-14);
        let p = pair(4.0, 1.0);
        assert_rel(heinz(0.0, p).unwrap(), 2.5, 1e-15);
        assert_rel(heinz(1.0, p).unwrap(), 2.5, 1e-15);
        assert_rel(heinz(0.5, p).unwrap(), 2.0, 1e-15);
        // Symmetry about v = 1/2.
        assert_rel(heinz(0.3, p).unwrap(), heinz(0.7, p).unwrap(), 1e-15);
        assert!(heinz(1.2, p).is_err());
    }

    #[test]
    fn bridge_endpoints_and_midpoint() {
        let p = pair(4.0, 1.0);
        assert_rel(bridge(0.0, p).unwrap(), 2.5, 1e-15);
        assert_rel(bridge(1.0, p).unwrap(), 2.0, 1e-15);
        // r = 2 gives G^2/A, the harmonic mean.
        assert_rel(bridge(2.0, p).unwrap(), 1.6, 1e-15);
        // K_{2/3}(4, 1) = (G^2 A)^(1/3) = 10^(1/3).
        assert_rel(
            bridge(2.0 / 3.0, p).unwrap(),
            2.154_434_690_031_884,
            1e-14,
        );
        assert!(bridge(2.1, p).is_err());
        assert!(bridge(-0.1, p).is_err());
    }

    #[test]
    fn lehmer_endpoints_and_midpoint() {
        let p = pair(4.0, 1.0);
        assert_rel(lehmer(0.0, p).unwrap(), 1.6, 1e-15);
        assert_rel(lehmer(0.5, p).unwrap(), 2.0, 1e-15);
        assert_rel(lehmer(1.0, p).unwrap(), 2.5, 1e-15);
        assert!(lehmer(1.1, p).is_err());
        assert!(lehmer(-0.01, p).is_err());
    }

    #[test]
    fn power_diff_interpolates_classical_means() {
        let p = pair(4.0, 1.0);
        assert_rel(power_diff(-1.0, p).unwrap(), 1.6, 1e-14);
        assert_rel(power_diff(0.5, p).unwrap(), 2.0, 1e-14);
        assert_rel(power_diff(2.0, p).unwrap(), 2.5, 1e-14);
        // u -> 1 is the logarithmic mean; u -> 0 is G^2/L.
        assert_rel(power_diff(1.0, p).unwrap(), logarithmic(p), 1e-15);
        assert_rel(
            power_diff(1.0 + 1e-12, p).unwrap(),
            logarithmic(p),
            1e-15,
        );
        let g = geometric(p);
        assert_rel(power_diff(0.0, p).unwrap(), g * g / logarithmic(p), 1e-15);
        assert_rel(power_diff(1e-12, p).unwrap(), g * g / logarithmic(p), 1e-15);
    }

    #[test]
    fn power_diff_is_stable_near_the_diagonal() {
        // The expm1 form must not cancel: at ratio 1 + 1e-9 every value sits
        // within a few ulps of the common limit.
        let p = pair(1.0 + 1e-9, 1.0);
        for u in [-3.0, -1.0, 0.3, 0.7, 1.5, 2.0, 7.0] {
            let m = power_diff(u, p).unwrap();
            assert!(m >= 1.0 && m <= 1.0 + 1e-9, "u = {u}: {m}");
        }
    }

    #[test]
    fn power_diff_survives_extreme_exponents_and_ratios() {
        let p = pair(1e6, 1.0);
        for u in [-80.0, -5.0, 3.0, 60.0, 200.0] {
            let m = power_diff(u, p).unwrap();
            assert!(m.is_finite() && m >= 1.0 && m <= 1e6, "u = {u}: {m}");
        }
        // Exponent-ratio combinations that overflow expm1 take the log-space
        // branches and stay inside [min, max].
        let extreme = pair(1e300, 1.0);
        for u in [0.9, 1.2, 2.5] {
            let m = power_diff(u, extreme).unwrap();
            assert!(m.is_finite() && m >= 1.0 && m <= 1e300, "u = {u}: {m}");
        }
    }

    #[test]
    fn power_diff_is_bitwise_symmetric() {
        for (a, b) in [(2.0, 3.0), (1.0, 1.0 + 1e-7), (1e-4, 1e4)] {
            for u in [-2.0, 0.4, 1.7, 3.0] {
                assert_eq!(
                    power_diff(u, pair(a, b)).unwrap().to_bits(),
                    power_diff(u, pair(b, a)).unwrap().to_bits()
                );
            }
        }
    }

    #[test]
    fn eval_nonneg_zero_edge() {
        let cases: &[(MeanKind, f64)] = &[
            (MeanKind::Arithmetic, 1.5),
            (MeanKind::Geometric, 0.0),
            (MeanKind::Harmonic, 0.0),
            (MeanKind::Logarithmic, 0.0),
            (MeanKind::Binomial(1.0 / 3.0), 0.375),
            (MeanKind::Binomial(-1.0), 0.0),
            (MeanKind::Heron(0.4), 0.9),
            (MeanKind::HeronHat(0.4), 0.6),
            (MeanKind::Heinz(0.25), 0.0),
            (MeanKind::Heinz(0.0), 1.5),
            (MeanKind::Bridge(0.0), 1.5),
            (MeanKind::Bridge(0.7), 0.0),
            (MeanKind::Lehmer(1.0), 1.5),
            (MeanKind::Lehmer(0.3), 0.0),
            (MeanKind::PowerDiff(2.0), 1.5),
            (MeanKind::PowerDiff(0.5), 0.0),
            (MeanKind::PowerDiff(3.0), 2.0),
        ];
        for &(kind, expected) in cases {
            let got = kind.eval_nonneg(3.0, 0.0).unwrap();
            assert_rel(got, expected, 1e-14);
            // Symmetric in the arguments.
            let swapped = kind.eval_nonneg(0.0, 3.0).unwrap();
            assert_rel(swapped, expected, 1e-14);
        }
        assert_eq!(MeanKind::Logarithmic.eval_nonneg(0.0, 0.0).unwrap(), 0.0);
        assert!(MeanKind::Geometric.eval_nonneg(-1.0, 2.0).is_err());
        // Positive arguments agree with the plain evaluation.
        let p = pair(4.0, 1.0);
        assert_eq!(
            MeanKind::Logarithmic.eval_nonneg(4.0, 1.0).unwrap(),
            logarithmic(p)
        );
    }

    #[test]
    fn mean_kind_round_trips_through_text() {
        let kinds = [
            MeanKind::Arithmetic,
            MeanKind::Geometric,
            MeanKind::Harmonic,
            MeanKind::Logarithmic,
            MeanKind::Binomial(0.25),
            MeanKind::Heron(0.6),
            MeanKind::HeronHat(0.15),
            MeanKind::Heinz(0.125),
            MeanKind::Bridge(1.5),
            MeanKind::Lehmer(0.75),
            MeanKind::PowerDiff(-2.5),
        ];
        for kind in kinds {
            let text = kind.to_string();
            let parsed: MeanKind = text.parse().unwrap();
            assert_eq!(parsed, kind, "round trip through `{text}`");
        }
        assert!("heron:s=1.5".parse::<MeanKind>().is_err());
        assert!("heron:x=0.5".parse::<MeanKind>().is_err());
        assert!("frobn".parse::<MeanKind>().is_err());
        assert!("binomial:p=abc".parse::<MeanKind>().is_err());
    }

    #[test]
    fn mean_kind_eval_dispatch() {
        let p = pair(9.0, 1.0);
        assert_eq!(MeanKind::Arithmetic.eval(p).unwrap(), 5.0);
        assert_eq!(MeanKind::Geometric.eval(p).unwrap(), 3.0);
        assert_rel(MeanKind::Heron(0.5).eval(p).unwrap(), 4.0, 1e-15);
        assert!(MeanKind::Heron(2.0).eval(p).is_err());
    }
}
