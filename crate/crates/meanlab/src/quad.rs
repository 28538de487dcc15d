//! Gauss-Legendre quadrature on the unit interval.
//!
//! Nodes and weights are generated by Newton iteration on the Legendre
//! recurrence, then affinely mapped from [-1, 1] to [0, 1]. The integral
//! representations used elsewhere (logarithmic mean of commuting and
//! noncommuting arguments alike) integrate analytic functions, for which
//! Gauss-Legendre converges geometrically; 64 nodes is the default
//! throughout the crate and leaves quadrature error far below verification
//! tolerances.

use crate::error::{Error, Result};

/// Nodes and weights of an n-point Gauss-Legendre rule on [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Default node count used by integral representations.
pub const DEFAULT_NODES: usize = 64;

impl QuadRule {
    /// Builds the n-point rule; fewer than two nodes is rejected.
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewNodes { nodes: n });
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Roots come in symmetric pairs on [-1, 1]; solve for the first half.
        let half = n.div_ceil(2);
        for i in 0..half {
            // Tricomi-style initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-15 * x.abs().max(1.0) {
                    let (_, d2) = legendre_with_derivative(n, x);
                    dp = d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // Map [-1, 1] -> [0, 1]: node (1 - x)/2 keeps the list ascending.
            nodes[i] = (1.0 - x) / 2.0;
            weights[i] = w / 2.0;
            nodes[n - 1 - i] = (1.0 + x) / 2.0;
            weights[n - 1 - i] = w / 2.0;
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule to `f` over [0, 1].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Evaluates (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_rules() {
        assert!(QuadRule::gauss_legendre(0).is_err());
        assert!(QuadRule::gauss_legendre(1).is_err());
        assert!(QuadRule::gauss_legendre(2).is_ok());
    }

    #[test]
    fn weights_sum_to_one_and_nodes_are_interior() {
        for n in [2, 3, 5, 17, 64] {
            let rule = QuadRule::gauss_legendre(n).unwrap();
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-14, "n = {n}: weight sum {total}");
            assert!(rule.nodes().iter().all(|&x| x > 0.0 && x < 1.0));
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn exact_on_polynomials_up_to_degree_2n_minus_1() {
        let rule = QuadRule::gauss_legendre(5).unwrap();
        for k in 0..=9usize {
            let integral = rule.integrate(|x| x.powi(k as i32));
            let exact = 1.0 / (k as f64 + 1.0);
            assert!(
                (integral - exact).abs() < 1e-15,
                "x^{k}: {integral} vs {exact}"
            );
        }
    }

    #[test]
    fn integrates_the_exponential_weight() {
        let rule = QuadRule::gauss_legendre(16).unwrap();
        let integral = rule.integrate(f64::exp);
        assert!((integral - std::f64::consts::E + 1.0).abs() < 1e-14);
    }

    #[test]
    fn reproduces_the_logarithmic_mean_integral() {
        // integral of a^v b^(1-v) dv over [0,1] equals the logarithmic mean.
        let rule = QuadRule::gauss_legendre(DEFAULT_NODES).unwrap();
        for (a, b) in [(2.0, 1.0), (100.0, 1.0), (7.0, 3.0), (1e4, 2.0)] {
            let quad = rule.integrate(|v| (v * f64::ln(a) + (1.0 - v) * f64::ln(b)).exp());
            let pair = crate::scalar::ScalarPair::new(a, b).unwrap();
            let exact = crate::scalar::logarithmic(pair);
            assert!(
                (quad - exact).abs() < 1e-11 * exact,
                "L({a}, {b}): quadrature {quad} vs exact {exact}"
            );
        }
    }
}
