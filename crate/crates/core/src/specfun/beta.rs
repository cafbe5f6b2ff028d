use super::{ln_gamma, EPS, TINY};
use crate::error::{domain, Error, Result};

const MAX_ITER: usize = 100_000;

/// Regularized incomplete beta function I_x(a, b).
///
/// The continued fraction converges fast for x < (a+1)/(a+b+2); above that
/// point the reflection I_x(a,b) = 1 − I_{1−x}(b,a) is used.
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(domain("reg_inc_beta", format!("a={a}, b={b} must be positive")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(domain("reg_inc_beta", format!("x={x} outside [0,1]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (-x).ln_1p();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok((front * continued_fraction(a, b, x)? / a).clamp(0.0, 1.0))
    } else {
        Ok((1.0 - front * continued_fraction(b, a, 1.0 - x)? / b).clamp(0.0, 1.0))
    }
}

/// CDF of the beta-prime law β(a, b) on ℝ⁺ (density y^{a−1}/(1+y)^{a+b}/B(a,b)).
pub fn beta_prime_cdf(a: f64, b: f64, y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(domain("beta_prime_cdf", format!("y={y} must be nonnegative")));
    }
    if y.is_infinite() {
        return reg_inc_beta(a, b, 1.0);
    }
    reg_inc_beta(a, b, y / (1.0 + y))
}

fn continued_fraction(a: f64, b: f64, x: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::Numeric(format!(
        "incomplete beta continued fraction at a={a}, b={b}, x={x}"
    )))
}
