use std::f64::consts::PI;

use super::{ln_gamma, Tolerance};
use crate::error::{domain, Error, Result};

/// A contiguous block of mixture weights w_{m0}, w_{m0+1}, … of a discrete
/// law on ℕ, covering at least `1 − series_tail` of its mass.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTerms {
    pub start_index: usize,
    pub weights: Vec<f64>,
}

impl WeightedTerms {
    fn point_mass_at_zero() -> Self {
        Self {
            start_index: 0,
            weights: vec![1.0],
        }
    }

    /// Total retained mass (compensated sum).
    pub fn mass(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        for &w in &self.weights {
            acc.add(w);
        }
        acc.value()
    }

    /// Iterates over `(m, w_m)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(move |(i, &w)| (self.start_index + i, w))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Neumaier summation: the running total plus a correction for the
/// low-order bits lost at each addition.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    correction: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.correction += (self.sum - t) + v;
        } else {
            self.correction += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

/// Poisson(λ) weights e^{−λ} λ^m / m!.
pub fn poisson_weights(lambda: f64, tol: Tolerance) -> Result<WeightedTerms> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(domain(
            "poisson_weights",
            format!("lambda={lambda} must be finite and nonnegative"),
        ));
    }
    if lambda == 0.0 {
        return Ok(WeightedTerms::point_mass_at_zero());
    }
    let mode = lambda.floor();
    let w_mode = if mode == 0.0 {
        (-lambda).exp()
    } else {
        (-stirling_remainder(mode) - deviance(mode, lambda)).exp() / (2.0 * PI * mode).sqrt()
    };
    expand_from_mode(mode as usize, w_mode, tol, |m| lambda / (m as f64 + 1.0))
}

/// Negative-binomial weights Γ(q+m)/(m! Γ(q)) · π^q (1−π)^m.
///
/// `fail_prob` is 1 − π; it is passed separately so callers can form it
/// without cancellation (e.g. θ/(θ+u)).
pub fn negative_binomial_weights(q: f64, fail_prob: f64, tol: Tolerance) -> Result<WeightedTerms> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(domain("negative_binomial_weights", format!("q={q} must be positive")));
    }
    if !(0.0..1.0).contains(&fail_prob) {
        return Err(domain(
            "negative_binomial_weights",
            format!("failure probability {fail_prob} outside [0,1)"),
        ));
    }
    if fail_prob == 0.0 {
        return Ok(WeightedTerms::point_mass_at_zero());
    }
    let success = 1.0 - fail_prob;
    let mode = if q > 1.0 {
        ((q - 1.0) * fail_prob / success).floor()
    } else {
        0.0
    };
    let w_mode = if mode == 0.0 {
        (q * success.ln()).exp()
    } else {
        // q/(q+m) times the binomial-form density of q successes in q+m trials.
        let n = q + mode;
        let ln_core = stirling_remainder(n)
            - stirling_remainder(q)
            - stirling_remainder(mode)
            - deviance(q, n * success)
            - deviance(mode, n * fail_prob);
        q / n * ln_core.exp() * (n / (2.0 * PI * q * mode)).sqrt()
    };
    expand_from_mode(mode as usize, w_mode, tol, |m| {
        (q + m as f64) / (m as f64 + 1.0) * fail_prob
    })
}

/// ln Γ(x+1) − (x+½) ln x + x − ln √(2π), the error of Stirling's formula.
fn stirling_remainder(x: f64) -> f64 {
    if x <= 15.0 {
        return ln_gamma(x + 1.0) - (x + 0.5) * x.ln() + x - 0.5 * (2.0 * PI).ln();
    }
    let r = 1.0 / (x * x);
    (1.0 / 12.0 - r * (1.0 / 360.0 - r * (1.0 / 1260.0 - r / 1680.0))) / x
}

/// x ln(x/μ) + μ − x without cancellation when x ≈ μ.
fn deviance(x: f64, mu: f64) -> f64 {
    if (x - mu).abs() < 0.1 * (x + mu) {
        let v = (x - mu) / (x + mu);
        let v2 = v * v;
        let mut ej = 2.0 * x * v;
        let mut s = (x - mu) * v;
        for j in 1..1000 {
            ej *= v2;
            let next = s + ej / (2 * j + 1) as f64;
            if next == s {
                return s;
            }
            s = next;
        }
        s
    } else {
        x * (x / mu).ln() + mu - x
    }
}

/// Grows a window of a unimodal pmf outward from its mode, always taking the
/// larger neighbour, until the retained mass reaches 1 − series_tail.
/// `ratio(m)` is w_{m+1}/w_m.
fn expand_from_mode(mode: usize, w_mode: f64, tol: Tolerance, ratio: impl Fn(usize) -> f64) -> Result<WeightedTerms> {
    let target = 1.0 - tol.series_tail;
    let mut lower: Vec<f64> = Vec::new(); // w_{mode-1}, w_{mode-2}, ...
    let mut upper: Vec<f64> = vec![w_mode]; // w_mode, w_{mode+1}, ...
    let mut lo = mode;
    let mut hi = mode;
    let mut w_lo = w_mode;
    let mut w_hi = w_mode;
    let mut mass = CompensatedSum::default();
    mass.add(w_mode);
    while mass.value() < target {
        if lower.len() + upper.len() >= tol.max_terms {
            return Err(Error::Truncation {
                mass: mass.value(),
                terms: lower.len() + upper.len(),
                tail: tol.series_tail,
            });
        }
        let next_hi = w_hi * ratio(hi);
        let next_lo = if lo > 0 { w_lo / ratio(lo - 1) } else { 0.0 };
        if next_hi <= 0.0 && next_lo <= 0.0 {
            // Both neighbours underflowed; the deficit is rounding in w_mode.
            return Err(Error::Truncation {
                mass: mass.value(),
                terms: lower.len() + upper.len(),
                tail: tol.series_tail,
            });
        }
        if next_hi >= next_lo {
            hi += 1;
            w_hi = next_hi;
            upper.push(w_hi);
            mass.add(w_hi);
        } else {
            lo -= 1;
            w_lo = next_lo;
            lower.push(w_lo);
            mass.add(w_lo);
        }
    }
    lower.reverse();
    lower.extend(upper);
    Ok(WeightedTerms {
        start_index: lo,
        weights: lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_rate_is_point_mass() {
        let w = poisson_weights(0.0, Tolerance::default()).unwrap();
        assert_eq!(
            w,
            WeightedTerms {
                start_index: 0,
                weights: vec![1.0]
            }
        );
    }

    #[test]
    fn unit_rate_matches_direct_formula() {
        let tol = Tolerance::default().with_series_tail(1e-13);
        let w = poisson_weights(1.0, tol).unwrap();
        assert_eq!(w.start_index, 0);
        let mut fact = 1.0;
        for (m, wm) in w.iter() {
            if m > 0 {
                fact *= m as f64;
            }
            let direct = (-1.0f64).exp() / fact;
            assert!((wm - direct).abs() <= 1e-15 * direct.max(1e-300) + 1e-17);
        }
        let mass = w.mass();
        assert!((1.0 - 1e-13..=1.0 + 4.0 * f64::EPSILON).contains(&mass));
    }

    #[test]
    fn large_rate_starts_away_from_zero() {
        let w = poisson_weights(2500.0, Tolerance::default()).unwrap();
        assert!(w.start_index > 2000);
        assert!(w.mass() >= 1.0 - 1e-13);
    }

    #[test]
    fn mode_weight_is_accurate_at_large_rates() {
        // Overall mass is only as good as the mode weight the window grows from.
        let tol = Tolerance {
            max_terms: 100_000,
            ..Tolerance::series()
        };
        for &lambda in &[17.5, 1067.3, 1e4, 3.7e4] {
            let w = poisson_weights(lambda, tol).unwrap();
            assert!((w.mass() - 1.0).abs() < 1e-12, "{lambda}: {}", w.mass());
        }
        for &(q, f) in &[(5.0, 0.999), (1.5, 0.999), (30.0, 0.5)] {
            let w = negative_binomial_weights(q, f, tol).unwrap();
            assert!((w.mass() - 1.0).abs() < 1e-12, "{q} {f}: {}", w.mass());
        }
    }

    #[test]
    fn deviance_branches_agree() {
        let direct = |x: f64, mu: f64| x * (x / mu).ln() + mu - x;
        assert_abs_diff_eq!(deviance(10.0, 10.5), direct(10.0, 10.5), epsilon = 1e-13);
        assert_abs_diff_eq!(deviance(3.0, 9.0), direct(3.0, 9.0), epsilon = 0.0);
        assert_eq!(deviance(7.0, 7.0), 0.0);
    }

    #[test]
    fn stirling_remainder_branches_agree() {
        let direct = |x: f64| ln_gamma(x + 1.0) - (x + 0.5) * x.ln() + x - 0.5 * (2.0 * PI).ln();
        assert_abs_diff_eq!(stirling_remainder(15.5), direct(15.5), epsilon = 1e-12);
        assert_abs_diff_eq!(stirling_remainder(1.0), 1.0 - 0.5 * (2.0 * PI).ln(), epsilon = 1e-14);
    }

    #[test]
    fn truncation_budget() {
        let tol = Tolerance {
            max_terms: 5,
            ..Tolerance::default()
        };
        assert!(matches!(poisson_weights(30.0, tol), Err(Error::Truncation { .. })));
    }

    #[test]
    fn negative_binomial_sums_to_one() {
        for &q in &[0.5, 1.0, 2.5, 5.0] {
            for &f in &[0.0, 0.1, 0.5, 0.9, 0.99] {
                let w = negative_binomial_weights(q, f, Tolerance::series()).unwrap();
                assert_abs_diff_eq!(w.mass(), 1.0, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn negative_binomial_geometric_case() {
        // q = 1 gives geometric weights π(1−π)^m.
        let w = negative_binomial_weights(1.0, 0.25, Tolerance::default()).unwrap();
        for (m, wm) in w.iter() {
            assert_abs_diff_eq!(wm, 0.75 * 0.25f64.powi(m as i32), epsilon = 1e-15);
        }
    }
}
