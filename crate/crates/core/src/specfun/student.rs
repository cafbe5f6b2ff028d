use super::reg_inc_beta;
use crate::error::{domain, Result};

/// CDF of Student's t with `nu` degrees of freedom, through
/// P(T ≤ t) = ½·I_{ν/(ν+t²)}(ν/2, ½) for t ≤ 0.
pub fn student_cdf(nu: f64, t: f64) -> Result<f64> {
    if !(nu > 0.0) || !nu.is_finite() {
        return Err(domain(
            "student_cdf",
            format!("degrees of freedom {nu} must be positive"),
        ));
    }
    if t.is_nan() {
        return Err(domain("student_cdf", "argument is NaN"));
    }
    if t.is_infinite() {
        return Ok(if t > 0.0 { 1.0 } else { 0.0 });
    }
    let x = nu / (nu + t * t);
    let tail = 0.5 * reg_inc_beta(0.5 * nu, 0.5, x)?;
    Ok(if t <= 0.0 { tail } else { 1.0 - tail })
}
