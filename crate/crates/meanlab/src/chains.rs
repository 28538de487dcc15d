//! Ordered chains of scalar means and their sharp constants.
//!
//! The central objects are inequality chains: sequences of mean values that
//! must be nondecreasing for every positive pair. [`ChainReport`] records the
//! evaluated chain together with any ordering violations under a relative
//! tolerance. On top of the basic six-term chain the module provides its
//! m-fold refinement, the multiplicative correction chain driven by the
//! factor `sqrt(2A/(A+G))`, the two ratio functions whose extremal value
//! 2/3 makes the bridge and Heron bounds sharp, grid scans locating those
//! extrema, and the closed-form region test for Heinz-Heron domination.

use crate::error::{Error, Result};
use crate::par;
use crate::scalar::{
    arithmetic, binomial, bridge, geometric, harmonic, heron, logarithmic, ScalarPair,
};
use serde::{Deserialize, Serialize};

/// The constant 2/3: infimum of admissible bridge exponents, supremum of
/// admissible Heron weights, and common limit of both ratio functions at
/// equal arguments.
pub const SHARP_CONSTANT: f64 = 2.0 / 3.0;

/// Default relative tolerance for chain-ordering checks.
pub const DEFAULT_CHAIN_TOL: f64 = 1e-12;

/// One failed ordering step inside a chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainViolation {
    /// Index `i` of the step `values[i] <= values[i+1]` that failed.
    pub index: usize,
    /// Raw signed difference `values[i+1] - values[i]` (negative here).
    pub gap: f64,
}

/// An evaluated chain with its ordering verdict.
///
/// Step `i` holds when `values[i+1] - values[i] >= -tol * max(1, |values[i+1]|)`,
/// a relative comparison that degrades to absolute near zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub labels: Vec<String>,
    pub values: Vec<f64>,
    pub tolerance: f64,
    pub violations: Vec<ChainViolation>,
}

impl ChainReport {
    /// Builds a report from labeled values, locating every ordering failure.
    pub fn from_values(labels: Vec<String>, values: Vec<f64>, tolerance: f64) -> Self {
        assert_eq!(labels.len(), values.len(), "one label per chain value");
        let violations = values
            .windows(2)
            .enumerate()
            .filter_map(|(i, w)| {
                let gap = w[1] - w[0];
                if gap < -tolerance * w[1].abs().max(1.0) {
                    Some(ChainViolation { index: i, gap })
                } else {
                    None
                }
            })
            .collect();
        Self {
            labels,
            values,
            tolerance,
            violations,
        }
    }

    /// Whether every step is ordered within tolerance.
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Smallest normalized step margin `(v[i+1] - v[i]) / max(1, |v[i+1]|)`;
    /// negative values measure how badly the worst step inverts.
    pub fn worst_margin(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| (w[1] - w[0]) / w[1].abs().max(1.0))
            .fold(f64::INFINITY, f64::min)
    }
}

fn label_strings(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

/// Evaluates the six-term chain
/// `G <= G^(2/3) A^(1/3) <= L <= ((a^(1/3)+b^(1/3))/2)^3 <= (2G+A)/3 <= A`.
pub fn fundamental_chain(pair: ScalarPair, tolerance: f64) -> ChainReport {
    let values = vec![
        geometric(pair),
        bridge(2.0 / 3.0, pair).expect("2/3 is an admissible bridge exponent"),
        logarithmic(pair),
        binomial(1.0 / 3.0, pair).expect("1/3 is a finite binomial exponent"),
        heron(2.0 / 3.0, pair).expect("2/3 is an admissible heron weight"),
        arithmetic(pair),
    ];
    ChainReport::from_values(
        label_strings(&[
            "geometric",
            "bridge 2/3",
            "logarithmic",
            "binomial 1/3",
            "heron 2/3",
            "arithmetic",
        ]),
        values,
        tolerance,
    )
}

/// Verdict of the two-sided bound `G^t A^(1-t) <= L <= s G + (1-s) A`
/// at specific parameters on one pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsCheck {
    pub lower: f64,
    pub log_mean: f64,
    pub upper: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl BoundsCheck {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Checks `G^t A^(1-t) <= L <= s G + (1-s) A` on one pair.
///
/// Both bounds hold for every pair exactly when `t >= 2/3` and `s <= 2/3`;
/// outside that region the failure shows up for ratios near 1, which is where
/// scans should look for witnesses.
pub fn bounds_with_parameters(
    t: f64,
    s: f64,
    pair: ScalarPair,
    tolerance: f64,
) -> Result<BoundsCheck> {
    let lower = bridge(t, pair)?;
    let upper = heron(s, pair)?;
    let log_mean = logarithmic(pair);
    let scale = log_mean.abs().max(1.0);
    Ok(BoundsCheck {
        lower,
        log_mean,
        upper,
        lower_holds: log_mean - lower >= -tolerance * scale,
        upper_holds: upper - log_mean >= -tolerance * scale,
    })
}

/// Width of the diagonal window `|x - 1|` inside which the two ratio
/// functions switch to their Taylor expansions.
///
/// At the window edge the truncated series is accurate to ~7e-15 while the
/// raw quotients still carry ~2e-11 cancellation noise against a margin of
/// h^2/90 ~ 1e-6, so the branch switch preserves the one-sided approach of
/// both ratios to 2/3.
const RATIO_SERIES_CUTOFF: f64 = 1e-2;

fn check_ratio_arg(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite { what: "ratio argument x" });
    }
    if x <= 0.0 {
        return Err(Error::NonPositive { value: x });
    }
    Ok(())
}

/// The ratio `log(L/A) / log(G/A)` as a function of `x = a/b`.
///
/// Strictly below 2/3 for `x != 1` and tending to 2/3 as `x -> 1`; its
/// supremum 2/3 is the sharp bridge exponent. `x = 1` returns exactly 2/3.
pub fn log_ratio(x: f64) -> Result<f64> {
    check_ratio_arg(x)?;
    let h = x - 1.0;
    if h.abs() < RATIO_SERIES_CUTOFF {
        // 2/3 - h^2/90 + h^3/90 - 443 h^4/45360 + 191 h^5/22680 + O(h^6).
        return Ok(SHARP_CONSTANT
            + h * h
                * (-1.0 / 90.0
                    + h * (1.0 / 90.0 + h * (-443.0 / 45360.0 + h * (191.0 / 22680.0)))));
    }
    let pair = ScalarPair::from_ratio(x)?;
    let a = arithmetic(pair);
    let l = logarithmic(pair);
    let g = geometric(pair);
    Ok((l / a).ln() / (g / a).ln())
}

/// The ratio `(A - L) / (A - G)` as a function of `x = a/b`.
///
/// Strictly above 2/3 for `x != 1` and tending to 2/3 as `x -> 1`; its
/// infimum 2/3 is the sharp Heron weight. `x = 1` returns exactly 2/3.
pub fn diff_ratio(x: f64) -> Result<f64> {
    check_ratio_arg(x)?;
    let h = x - 1.0;
    if h.abs() < RATIO_SERIES_CUTOFF {
        // 2/3 + h^2/360 - h^3/360 + 61 h^4/24192 - 137 h^5/60480 + O(h^6).
        return Ok(SHARP_CONSTANT
            + h * h
                * (1.0 / 360.0
                    + h * (-1.0 / 360.0 + h * (61.0 / 24192.0 + h * (-137.0 / 60480.0)))));
    }
    let pair = ScalarPair::from_ratio(x)?;
    let a = arithmetic(pair);
    let l = logarithmic(pair);
    let g = geometric(pair);
    Ok((a - l) / (a - g))
}

/// A logarithmically spaced grid of ratios with geometric refinement toward
/// the diagonal `x = 1`, where both ratio functions attain their extrema.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Smallest ratio in the base grid (must be positive).
    pub min: f64,
    /// Largest ratio in the base grid.
    pub max: f64,
    /// Number of log-spaced base points, endpoints included.
    pub count: usize,
    /// Number of refinement offsets per side; offset `j` is
    /// `h = 0.1 * 1e-8^(j/(refine-1))`, appended as both `1 + h` and
    /// `1/(1 + h)`.
    pub refine: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            min: 1e-6,
            max: 1e6,
            count: 100_000,
            refine: 60,
        }
    }
}

impl GridSpec {
    /// Materializes the grid: base points first, refinement points after.
    pub fn points(&self) -> Result<Vec<f64>> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::NonFinite { what: "grid bound" });
        }
        if self.min <= 0.0 {
            return Err(Error::NonPositive { value: self.min });
        }
        if self.max < self.min {
            return Err(Error::Parse(format!(
                "grid bounds out of order: [{}, {}]",
                self.min, self.max
            )));
        }
        if self.count < 2 {
            return Err(Error::Parse(format!(
                "grid needs at least 2 base points, got {}",
                self.count
            )));
        }
        let log_min = self.min.ln();
        let log_max = self.max.ln();
        let step = (log_max - log_min) / (self.count as f64 - 1.0);
        let mut points: Vec<f64> = (0..self.count)
            .map(|i| (log_min + step * i as f64).exp())
            .collect();
        if self.refine > 0 {
            let denom = (self.refine as f64 - 1.0).max(1.0);
            for j in 0..self.refine {
                let h = 0.1 * (1e-8f64).powf(j as f64 / denom);
                points.push(1.0 + h);
                points.push(1.0 / (1.0 + h));
            }
        }
        Ok(points)
    }
}

/// Which ratio function a scan sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanTarget {
    /// Supremum of `log(L/A)/log(G/A)`; approaches 2/3 from below.
    BridgeExponent,
    /// Infimum of `(A-L)/(A-G)`; approaches 2/3 from above.
    HeronWeight,
}

/// Result of sweeping one ratio function over a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub target: ScanTarget,
    pub grid: GridSpec,
    /// Grid ratios, in evaluation order.
    pub xs: Vec<f64>,
    /// Ratio values matching `xs`.
    pub values: Vec<f64>,
    /// The extremal value over the grid (max for the bridge exponent scan,
    /// min for the Heron weight scan).
    pub extremum: f64,
    /// Grid point where the extremum was attained.
    pub extremum_x: f64,
}

/// Sweeps one ratio function over the grid and locates its extremum.
pub fn scan_ratio(target: ScanTarget, grid: GridSpec) -> Result<ScanReport> {
    let xs = grid.points()?;
    let values = match target {
        ScanTarget::BridgeExponent => par::map_indexed(xs.len(), |i| {
            log_ratio(xs[i]).expect("grid points are validated positive")
        }),
        ScanTarget::HeronWeight => par::map_indexed(xs.len(), |i| {
            diff_ratio(xs[i]).expect("grid points are validated positive")
        }),
    };
    let mut best = 0usize;
    for i in 1..values.len() {
        let better = match target {
            ScanTarget::BridgeExponent => values[i] > values[best],
            ScanTarget::HeronWeight => values[i] < values[best],
        };
        if better {
            best = i;
        }
    }
    Ok(ScanReport {
        target,
        grid,
        extremum: values[best],
        extremum_x: xs[best],
        xs,
        values,
    })
}

/// Scans both sharp constants over the same grid: the supremum of the bridge
/// ratio and the infimum of the Heron ratio, each of which equals 2/3.
pub fn scan_sharp_constants(grid: GridSpec) -> Result<(ScanReport, ScanReport)> {
    Ok((
        scan_ratio(ScanTarget::BridgeExponent, grid)?,
        scan_ratio(ScanTarget::HeronWeight, grid)?,
    ))
}

/// Largest refinement order accepted by [`refined_chain`]; the sums are O(m)
/// and the interesting behavior is already visible for small m.
pub const MAX_REFINEMENT_ORDER: usize = 1024;

/// Evaluates the five-term refinement of order `m >= 1`:
///
/// ```text
/// (1/m) sum_k a^((2k-1)/2m) b^((2m-2k+1)/2m)                    heinz average
///   <= (that bridge-type product)                               bridge refinement
///   <= L                                                        logarithmic
///   <= (2/3) heinz average + (1/3) trapezoidal average          two-thirds mix
///   <= (1/m) (sum_{k=0..m} a^(k/m) b^((m-k)/m) - A)             trapezoidal average
/// ```
///
/// At `m = 1` the five terms reduce to `G`, `G^(2/3) A^(1/3)`, `L`,
/// `(2G + A)/3`, and `A`; the first term is nondecreasing and the last
/// nonincreasing in `m`, so growing `m` tightens the chain around `L` from
/// both sides.
pub fn refined_chain(m: usize, pair: ScalarPair, tolerance: f64) -> Result<ChainReport> {
    if m == 0 || m > MAX_REFINEMENT_ORDER {
        return Err(Error::ParamOutOfRange {
            name: "refinement order m",
            value: m as f64,
            lo: 1.0,
            hi: MAX_REFINEMENT_ORDER as f64,
        });
    }
    let mf = m as f64;
    let la = pair.a().ln();
    let lb = pair.b().ln();
    let pw = |theta: f64| (theta * la + (1.0 - theta) * lb).exp();

    // Sum over odd half-step weights (2k-1)/(2m), k = 1..m.
    let mut odd_sum = 0.0;
    // Sum over full-step weights k/m, k = 0..m.
    let mut full_sum = 0.0;
    // Sum of a^((m-k)/m) b^((k-1)/m), k = 1..m; exponents total (m-1)/m, the
    // missing 1/m is restored by the cube-root factor below.
    let mut low_sum = 0.0;
    for k in 1..=m {
        let kf = k as f64;
        odd_sum += pw((2.0 * kf - 1.0) / (2.0 * mf));
        low_sum += (((mf - kf) * la + (kf - 1.0) * lb) / mf).exp();
        full_sum += pw(kf / mf);
    }
    full_sum += pw(0.0);

    let a_mean = arithmetic(pair);
    let heinz_average = odd_sum / mf;
    let a_root = (la / mf).exp();
    let b_root = (lb / mf).exp();
    let bridge_factor = (a_root * b_root * (a_root + b_root) / 2.0).powf(1.0 / 3.0);
    let bridge_refinement = (low_sum / mf) * bridge_factor;
    let log_mean = logarithmic(pair);
    let trapezoidal = (full_sum - a_mean) / mf;
    let mix = (2.0 * heinz_average + trapezoidal) / 3.0;

    Ok(ChainReport::from_values(
        label_strings(&[
            "heinz average",
            "bridge refinement",
            "logarithmic",
            "two-thirds mix",
            "trapezoidal average",
        ]),
        vec![heinz_average, bridge_refinement, log_mean, mix, trapezoidal],
        tolerance,
    ))
}

/// Absolute slack absorbed by the region-boundary comparisons; covers the
/// rounding of the inputs themselves without blurring any stated boundary.
const REGION_BOUNDARY_SLACK: f64 = 1e-12;

/// Closed-form test of the region where the Heinz mean with weight `v` is
/// dominated by the Heron mean with weight `s` in the positive-definiteness
/// sense (uniformly over unitarily invariant norms, not merely pointwise).
///
/// The region is symmetric in `v` about 1/2. For `s <= 1/2` it is the band
/// `|2v - 1| <= (pi/2) / (pi - arccos(s/(1-s)))`; for `s = 1` only the
/// central point `v = 1/2` remains; for `1/2 < s < 1` the region is empty.
/// Boundaries are inclusive: at `s = 1/2` the band is exactly
/// `v in [1/4, 3/4]`, at `s = 1/3` it is `v in [1/8, 7/8]`, and at `s = 0`
/// every `v` qualifies.
pub fn heinz_heron_condition(s: f64, v: f64) -> Result<bool> {
    for (name, value) in [("heron weight s", s), ("heinz weight v", v)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::ParamOutOfRange {
                name,
                value,
                lo: 0.0,
                hi: 1.0,
            });
        }
    }
    let w = (2.0 * v - 1.0).abs();
    if s == 1.0 {
        return Ok(w <= REGION_BOUNDARY_SLACK);
    }
    if s > 0.5 {
        return Ok(false);
    }
    let threshold =
        std::f64::consts::FRAC_PI_2 / (std::f64::consts::PI - (s / (1.0 - s)).acos());
    Ok(w <= threshold + REGION_BOUNDARY_SLACK)
}

/// The correction factor `sqrt(2A / (A + G))`, strictly between 1 and
/// `sqrt(2)`; multiplying each lower mean by it still stays below the next
/// mean up in the eleven-term chain.
pub fn correction_factor(pair: ScalarPair) -> f64 {
    let a = arithmetic(pair);
    let g = geometric(pair);
    (2.0 * a / (a + g)).sqrt()
}

/// Evaluates the eleven-term chain interleaving `min, H, G, L, A, max` with
/// their multiples by the correction factor:
/// `min <= r*min <= H <= r*H <= G <= r*G <= L <= r*L <= A <= r*A <= max`.
pub fn correction_chain(pair: ScalarPair, tolerance: f64) -> ChainReport {
    let r = correction_factor(pair);
    let h = harmonic(pair);
    let g = geometric(pair);
    let l = logarithmic(pair);
    let a = arithmetic(pair);
    let values = vec![
        pair.min(),
        r * pair.min(),
        h,
        r * h,
        g,
        r * g,
        l,
        r * l,
        a,
        r * a,
        pair.max(),
    ];
    ChainReport::from_values(
        label_strings(&[
            "min",
            "corrected min",
            "harmonic",
            "corrected harmonic",
            "geometric",
            "corrected geometric",
            "logarithmic",
            "corrected logarithmic",
            "arithmetic",
            "corrected arithmetic",
            "max",
        ]),
        values,
        tolerance,
    )
}

/// Verdict of the closed-form cap on the corrected arithmetic mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityCheck {
    /// `sqrt(2(x+1)) / (sqrt(x) + 1) * (x+1)/2`, the corrected arithmetic
    /// mean of `(x, 1)`.
    pub lhs: f64,
    /// `max(x, 1)`.
    pub rhs: f64,
    pub holds: bool,
}

/// Checks the closed form of the final chain step on the pair `(x, 1)`:
/// the corrected arithmetic mean never exceeds the larger argument.
pub fn convexity_bound(x: f64, tolerance: f64) -> Result<ConvexityCheck> {
    check_ratio_arg(x)?;
    let pair = ScalarPair::from_ratio(x)?;
    let lhs = correction_factor(pair) * arithmetic(pair);
    let rhs = x.max(1.0);
    Ok(ConvexityCheck {
        lhs,
        rhs,
        holds: rhs - lhs >= -tolerance * rhs.max(1.0),
    })
}
