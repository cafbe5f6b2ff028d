//! Strictly-MLR families of positive densities on a real interval.
//!
//! A family is anything implementing [`MlrFamily`]: it supplies its
//! parameter interval Θ, its sample interval, the CDF F(θ, x) and the log
//! density. The diagnostics in this module ([`mlr_verify`],
//! [`boundary_limits`], [`quantile`]) work on any implementation.

mod catalog;
pub mod fixtures;

pub use catalog::{GammaScale, NoncentralBeta, NoncentralChi2One, NormalLocation, WithThetaDomain};

use crate::error::{Error, Result};
use crate::interval::ParamInterval;

/// A parametric model {P_θ} on a real sample interval with a strictly
/// monotone likelihood ratio in θ.
pub trait MlrFamily: Send + Sync {
    /// Short identifier with parameters, e.g. `normal(sigma=1)`.
    fn tag(&self) -> String;

    fn theta_domain(&self) -> ParamInterval;

    fn support(&self) -> ParamInterval;

    /// F(θ, x) without domain checks.
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64>;

    /// log p_θ(x) without domain checks.
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64>;

    /// 1 − F(θ, x) without domain checks. Override when the upper tail can
    /// be computed without cancellation.
    fn eval_sf(&self, theta: f64, x: f64) -> Result<f64> {
        Ok(1.0 - self.eval_cdf(theta, x)?)
    }

    fn check_theta(&self, theta: f64) -> Result<()> {
        let dom = self.theta_domain();
        if dom.contains(theta) {
            Ok(())
        } else {
            Err(Error::Parameter {
                theta,
                domain: dom.to_string(),
            })
        }
    }

    fn check_sample(&self, x: f64) -> Result<()> {
        let sup = self.support();
        if sup.contains_closure(x) {
            Ok(())
        } else {
            Err(Error::Sample {
                x,
                support: sup.to_string(),
            })
        }
    }

    /// F(θ, x), the CDF of P_θ at x.
    fn cdf(&self, theta: f64, x: f64) -> Result<f64> {
        self.check_theta(theta)?;
        self.check_sample(x)?;
        self.eval_cdf(theta, x)
    }

    fn log_density(&self, theta: f64, x: f64) -> Result<f64> {
        self.check_theta(theta)?;
        self.check_sample(x)?;
        self.eval_log_density(theta, x)
    }
}

impl<T: MlrFamily + ?Sized> MlrFamily for &T {
    fn tag(&self) -> String {
        (**self).tag()
    }
    fn theta_domain(&self) -> ParamInterval {
        (**self).theta_domain()
    }
    fn support(&self) -> ParamInterval {
        (**self).support()
    }
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64> {
        (**self).eval_cdf(theta, x)
    }
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64> {
        (**self).eval_log_density(theta, x)
    }
    fn eval_sf(&self, theta: f64, x: f64) -> Result<f64> {
        (**self).eval_sf(theta, x)
    }
}

impl<T: MlrFamily + ?Sized> MlrFamily for Box<T> {
    fn tag(&self) -> String {
        (**self).tag()
    }
    fn theta_domain(&self) -> ParamInterval {
        (**self).theta_domain()
    }
    fn support(&self) -> ParamInterval {
        (**self).support()
    }
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64> {
        (**self).eval_cdf(theta, x)
    }
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64> {
        (**self).eval_log_density(theta, x)
    }
    fn eval_sf(&self, theta: f64, x: f64) -> Result<f64> {
        (**self).eval_sf(theta, x)
    }
}

/// F(θ, x) with x clamped to the sample interval (0 below, 1 above).
pub fn cdf_clipped<F: MlrFamily + ?Sized>(family: &F, theta: f64, x: f64) -> Result<f64> {
    let sup = family.support();
    if x <= sup.lower {
        return Ok(0.0);
    }
    if x >= sup.upper {
        return Ok(1.0);
    }
    family.cdf(theta, x)
}

/// 1 − F(θ, x) with x clamped to the sample interval.
pub fn sf_clipped<F: MlrFamily + ?Sized>(family: &F, theta: f64, x: f64) -> Result<f64> {
    let sup = family.support();
    if x <= sup.lower {
        return Ok(1.0);
    }
    if x >= sup.upper {
        return Ok(0.0);
    }
    family.check_theta(theta)?;
    family.eval_sf(theta, x)
}

/// Location of a likelihood-ratio monotonicity failure: for θ′ < θ″ the log
/// ratio log p_θ″ − log p_θ′ drops from `x_lo` to `x_hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct MlrViolation {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub log_ratio_lo: f64,
    pub log_ratio_hi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlrReport {
    pub holds: bool,
    pub violation: Option<MlrViolation>,
}

/// Checks on grids that x ↦ log p_θ″(x) − log p_θ′(x) increases for every
/// θ′ < θ″. A step counts as a violation when the log ratio decreases by
/// more than `abs_tol`.
pub fn mlr_verify<F: MlrFamily + ?Sized>(
    family: &F,
    theta_grid: &[f64],
    x_grid: &[f64],
    abs_tol: f64,
) -> Result<MlrReport> {
    let rows: Vec<Vec<f64>> = theta_grid
        .iter()
        .map(|&th| x_grid.iter().map(|&x| family.log_density(th, x)).collect())
        .collect::<Result<_>>()?;
    for i in 0..theta_grid.len() {
        for j in (i + 1)..theta_grid.len() {
            if !(theta_grid[i] < theta_grid[j]) {
                continue;
            }
            let ratio: Vec<f64> = rows[j].iter().zip(&rows[i]).map(|(a, b)| a - b).collect();
            for k in 1..x_grid.len() {
                if ratio[k] - ratio[k - 1] < -abs_tol {
                    return Ok(MlrReport {
                        holds: false,
                        violation: Some(MlrViolation {
                            theta_lo: theta_grid[i],
                            theta_hi: theta_grid[j],
                            x_lo: x_grid[k - 1],
                            x_hi: x_grid[k],
                            log_ratio_lo: ratio[k - 1],
                            log_ratio_hi: ratio[k],
                        }),
                    });
                }
            }
        }
    }
    Ok(MlrReport {
        holds: true,
        violation: None,
    })
}

/// Parameter values approaching the open endpoints of Θ.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryProbes {
    pub toward_sup: Vec<f64>,
    pub toward_inf: Vec<f64>,
}

impl BoundaryProbes {
    /// Geometric probes: anchor ± 10^k for infinite ends (k = 1..=8),
    /// endpoint ∓ gap·10^{−k} for finite open ends (k = 1..=12).
    pub fn default_for(domain: &ParamInterval) -> Self {
        let anchor = domain.anchor();
        let toward_sup = if domain.upper_closed {
            Vec::new()
        } else if domain.upper.is_infinite() {
            (1..=8).map(|k| anchor + 10f64.powi(k)).collect()
        } else {
            let gap = domain.upper - anchor;
            (1..=12).map(|k| domain.upper - gap * 10f64.powi(-k)).collect()
        };
        let toward_inf = if domain.lower_closed {
            Vec::new()
        } else if domain.lower.is_infinite() {
            (1..=8).map(|k| anchor - 10f64.powi(k)).collect()
        } else {
            let gap = anchor - domain.lower;
            (1..=12).map(|k| domain.lower + gap * 10f64.powi(-k)).collect()
        };
        Self { toward_sup, toward_inf }
    }
}

/// Outcome of one limit condition at the last probe.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitCheck {
    /// The endpoint of Θ being approached.
    pub endpoint: f64,
    /// Required limit of F(θ, x): 0 at sup Θ, 1 at inf Θ.
    pub target: f64,
    pub last_probe: f64,
    pub last_value: f64,
    pub passed: bool,
}

impl LimitCheck {
    pub fn describe(&self) -> String {
        let side = if self.target == 0.0 { "sup" } else { "inf" };
        format!(
            "F(theta,x) -> {} as theta -> {} Theta = {}: F({}, x) = {:.6e}",
            self.target,
            side,
            crate::interval::fmt_endpoint(self.endpoint),
            self.last_probe,
            self.last_value
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryReport {
    /// Condition at sup Θ, present only when sup Θ ∉ Θ.
    pub at_sup: Option<LimitCheck>,
    /// Condition at inf Θ, present only when inf Θ ∉ Θ.
    pub at_inf: Option<LimitCheck>,
}

impl BoundaryReport {
    pub fn passed(&self) -> bool {
        self.at_sup.as_ref().is_none_or(|c| c.passed) && self.at_inf.as_ref().is_none_or(|c| c.passed)
    }

    /// Description of the first failed condition.
    pub fn failure(&self) -> Option<String> {
        [&self.at_sup, &self.at_inf]
            .into_iter()
            .flatten()
            .find(|c| !c.passed)
            .map(|c| format!("limit condition failed: {}", c.describe()))
    }
}

/// Evaluates the compatibility limit conditions at realization `x`:
/// F(θ, x) → 0 as θ → sup Θ (if open) and F(θ, x) → 1 as θ → inf Θ (if
/// open). Each condition passes at the first probe within `abs_tol` and
/// fails if no probe gets there.
pub fn boundary_limits<F: MlrFamily + ?Sized>(
    family: &F,
    x: f64,
    probes: &BoundaryProbes,
    abs_tol: f64,
) -> Result<BoundaryReport> {
    family.check_sample(x)?;
    let dom = family.theta_domain();
    // F is monotone in θ, so the first probe within tolerance settles the
    // condition and the remaining (costlier) probes are skipped.
    let check = |seq: &[f64], endpoint: f64, target: f64| -> Result<Option<LimitCheck>> {
        let mut result = None;
        for &probe in seq {
            let value = family.cdf(probe, x)?;
            let passed = (value - target).abs() <= abs_tol;
            result = Some(LimitCheck {
                endpoint,
                target,
                last_probe: probe,
                last_value: value,
                passed,
            });
            if passed {
                break;
            }
        }
        Ok(result)
    };
    let at_sup = if dom.upper_closed {
        None
    } else {
        Some(
            check(&probes.toward_sup, dom.upper, 0.0)?
                .ok_or_else(|| Error::Compatibility("no probes toward the open upper end of Theta".into()))?,
        )
    };
    let at_inf = if dom.lower_closed {
        None
    } else {
        Some(
            check(&probes.toward_inf, dom.lower, 1.0)?
                .ok_or_else(|| Error::Compatibility("no probes toward the open lower end of Theta".into()))?,
        )
    };
    Ok(BoundaryReport { at_sup, at_inf })
}

/// Boolean form of [`boundary_limits`]. Evaluation errors count as failure.
pub fn boundary_limits_check<F: MlrFamily + ?Sized>(family: &F, x: f64, probes: &BoundaryProbes, abs_tol: f64) -> bool {
    boundary_limits(family, x, probes, abs_tol).is_ok_and(|r| r.passed())
}

/// Tolerance on |F(θ, quantile) − u|.
pub const QUANTILE_TOL: f64 = 1e-8;

/// Inverse of x ↦ F(θ, x) by bracketing and bisection on the support.
pub fn quantile<F: MlrFamily + ?Sized>(family: &F, theta: f64, u: f64) -> Result<f64> {
    family.check_theta(theta)?;
    if !(u > 0.0 && u < 1.0) {
        return Err(crate::error::domain("quantile", format!("u={u} outside (0,1)")));
    }
    let sup = family.support();
    let f = |x: f64| cdf_clipped(family, theta, x);

    let anchor = sup.anchor();
    let mut lo = sup.lower;
    let mut hi = sup.upper;
    if hi.is_infinite() {
        let mut step = 1.0;
        hi = anchor + step;
        while f(hi)? < u {
            lo = lo.max(hi);
            step *= 2.0;
            hi = anchor + step;
            if !hi.is_finite() {
                return Err(Error::Numeric(format!("quantile bracket for u={u} diverged")));
            }
        }
    }
    if lo.is_infinite() {
        let mut step = 1.0;
        lo = hi.min(anchor) - step;
        while f(lo)? > u {
            step *= 2.0;
            lo = hi.min(anchor) - step;
            if !lo.is_finite() {
                return Err(Error::Numeric(format!("quantile bracket for u={u} diverged")));
            }
        }
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    let err = (f(x)? - u).abs();
    if err > QUANTILE_TOL {
        return Err(Error::Numeric(format!(
            "quantile at u={u}: |F - u| = {err:e} after bisection"
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::fixtures::TwoComponentLocationMixture;
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn normal_cdf_examples() {
        let fam = NormalLocation::new(1.0).unwrap();
        assert_eq!(fam.cdf(0.0, 0.0).unwrap(), 0.5);
        assert_abs_diff_eq!(fam.cdf(0.5, 2.18).unwrap(), 0.9535, epsilon = 5e-5);
    }

    #[test]
    fn parameter_and_sample_errors() {
        let g = GammaScale::new(2.0, 2.0).unwrap();
        assert!(matches!(g.cdf(0.0, 1.0), Err(Error::Parameter { .. })));
        assert!(matches!(g.cdf(1.0, -1.0), Err(Error::Sample { .. })));
        let b = NoncentralBeta::new(2.0, 3.0).unwrap();
        assert!(matches!(b.cdf(-0.1, 1.0), Err(Error::Parameter { .. })));
    }

    #[test]
    fn mlr_holds_for_catalog() {
        let x = grid(-4.0, 6.0, 41);
        let normal = NormalLocation::new(1.0).unwrap();
        assert!(mlr_verify(&normal, &grid(-2.0, 2.0, 5), &x, 1e-10).unwrap().holds);

        let xs = grid(0.05, 8.0, 40);
        let nb = NoncentralBeta::new(2.0, 3.0).unwrap();
        assert!(mlr_verify(&nb, &[0.0, 1.0, 2.0], &xs, 1e-10).unwrap().holds);
        let gs = GammaScale::new(2.0, 2.0).unwrap();
        assert!(mlr_verify(&gs, &[0.5, 1.0, 3.0], &xs, 1e-10).unwrap().holds);
        let chi = NoncentralChi2One::new();
        assert!(mlr_verify(&chi, &[0.0, 0.5, 2.0], &xs, 1e-10).unwrap().holds);
    }

    #[test]
    fn mlr_fails_for_bimodal_mixture() {
        let mix = TwoComponentLocationMixture::new(6.0).unwrap();
        let report = mlr_verify(&mix, &[0.0, 1.0], &grid(-4.0, 10.0, 57), 1e-10).unwrap();
        assert!(!report.holds);
        let v = report.violation.unwrap();
        // Confirm the witness by direct evaluation.
        let r = |x: f64| mix.log_density(v.theta_hi, x).unwrap() - mix.log_density(v.theta_lo, x).unwrap();
        assert!(r(v.x_hi) < r(v.x_lo));
    }

    #[test]
    fn limits_normal_and_gamma() {
        let normal = NormalLocation::new(1.0).unwrap();
        let probes = BoundaryProbes::default_for(&normal.theta_domain());
        assert!(boundary_limits_check(&normal, 2.18, &probes, 1e-10));

        let gs = GammaScale::new(2.0, 2.0).unwrap();
        let probes = BoundaryProbes::default_for(&gs.theta_domain());
        assert!(boundary_limits_check(&gs, 1.0, &probes, 1e-10));
    }

    #[test]
    fn limits_fail_on_truncated_domain() {
        let dom = ParamInterval::parse("(0,1]").unwrap();
        let fam = WithThetaDomain::new(NormalLocation::new(1.0).unwrap(), dom).unwrap();
        let probes = BoundaryProbes::default_for(&dom);
        let report = boundary_limits(&fam, 2.18, &probes, 1e-10).unwrap();
        assert!(!report.passed());
        assert!(report.at_sup.is_none());
        assert!(report.failure().unwrap().contains("inf"));
    }

    #[test]
    fn quantile_examples() {
        let normal = NormalLocation::new(1.0).unwrap();
        assert_abs_diff_eq!(quantile(&normal, 0.0, 0.5).unwrap(), 0.0, epsilon = 1e-8);
        let expo = GammaScale::new(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(quantile(&expo, 1.0, 0.5).unwrap(), 2f64.ln(), epsilon = 1e-8);
        assert!(quantile(&normal, 0.0, 0.0).is_err());
        assert!(quantile(&normal, 0.0, 1.0).is_err());
    }

    #[test]
    fn stochastic_ordering_in_theta() {
        let fams: Vec<Box<dyn MlrFamily>> = vec![
            Box::new(NormalLocation::new(1.3).unwrap()),
            Box::new(GammaScale::new(1.5, 2.0).unwrap()),
            Box::new(NoncentralBeta::new(1.5, 5.0).unwrap()),
            Box::new(NoncentralChi2One::new()),
        ];
        for fam in &fams {
            let dom = fam.theta_domain();
            let lo = if dom.lower.is_finite() { dom.lower + 0.05 } else { -3.0 };
            let thetas = grid(lo, lo + 4.0, 9);
            for &x in &[0.1, 0.8, 2.5, 6.0] {
                for w in thetas.windows(2) {
                    let a = fam.cdf(w[0], x).unwrap();
                    let b = fam.cdf(w[1], x).unwrap();
                    assert!(
                        b <= a + 1e-14,
                        "{}: F({},{x})={b} > F({},{x})={a}",
                        fam.tag(),
                        w[1],
                        w[0]
                    );
                }
            }
        }
    }

    #[test]
    fn continuity_in_theta() {
        let nb = NoncentralBeta::new(2.0, 3.0).unwrap();
        for &theta in &[0.0, 0.7, 3.0] {
            let a = nb.cdf(theta, 1.2).unwrap();
            let b = nb.cdf(theta + 1e-7, 1.2).unwrap();
            assert!((a - b).abs() < 1e-6);
        }
    }
}
