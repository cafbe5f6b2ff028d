//! Families that deliberately break the standing assumptions, for
//! exercising the diagnostics.

use super::MlrFamily;
use crate::error::{domain, Result};
use crate::interval::ParamInterval;
use crate::specfun::{normal_cdf, normal_pdf};

/// ½N(θ, 1) + ½N(θ + d, 1). For large separations d the component
/// density is bimodal, so the location family is not MLR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoComponentLocationMixture {
    separation: f64,
}

impl TwoComponentLocationMixture {
    pub fn new(separation: f64) -> Result<Self> {
        if !separation.is_finite() {
            return Err(domain("TwoComponentLocationMixture", "separation must be finite"));
        }
        Ok(Self { separation })
    }
}

impl MlrFamily for TwoComponentLocationMixture {
    fn tag(&self) -> String {
        format!("two-component-mixture(d={})", self.separation)
    }
    fn theta_domain(&self) -> ParamInterval {
        ParamInterval::real_line()
    }
    fn support(&self) -> ParamInterval {
        ParamInterval::real_line()
    }
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64> {
        Ok(0.5 * (normal_cdf(x - theta)? + normal_cdf(x - theta - self.separation)?))
    }
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64> {
        Ok((0.5 * (normal_pdf(x - theta) + normal_pdf(x - theta - self.separation))).ln())
    }
}
