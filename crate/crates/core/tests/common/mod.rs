//! Reference implementations used as oracles. They take different
//! numerical routes from the library so agreement is informative.

#![allow(dead_code)]

use std::f64::consts::PI;

/// erf through the positive-term series
/// erf(x) = 2/√π · e^{−x²} Σ_n 2^n x^{2n+1} / (1·3·…·(2n+1)),
/// which has no cancellation for any x ≥ 0.
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term > 1e-18 * sum {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
    }
    (2.0 / PI.sqrt() * (-x2).exp() * sum).min(1.0)
}

pub fn phi(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

/// I_x(a, n) for integer n ≥ 1: x^a Σ_{j<n} (a)_j / j! · (1 − x)^j.
pub fn inc_beta_integer_b(a: f64, n: u32, x: f64) -> f64 {
    let mut coeff = 1.0;
    let mut pow = 1.0;
    let mut sum = 0.0;
    for j in 0..n {
        if j > 0 {
            coeff *= (a + (j - 1) as f64) / j as f64;
            pow *= 1.0 - x;
        }
        sum += coeff * pow;
    }
    x.powf(a) * sum
}

/// P(a, x) = e^{−x} x^a Σ_n x^n / Γ(a + n + 1), with Γ(a+1) from a product
/// for integer or half-integer a.
pub fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut gamma_a1 = if (a.fract()).abs() < 1e-12 { 1.0 } else { PI.sqrt() };
    let mut k = if (a.fract()).abs() < 1e-12 { 1.0 } else { 0.5 };
    while k <= a + 1e-12 {
        gamma_a1 *= k;
        k += 1.0;
    }
    let mut term = 1.0 / gamma_a1;
    let mut sum = term;
    let mut n = 1.0;
    while term > 1e-20 * sum {
        term *= x / (a + n);
        sum += term;
        n += 1.0;
    }
    (-x).exp() * x.powf(a) * sum
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

#[test]
fn oracle_self_checks() {
    assert!((phi(0.0) - 0.5).abs() < 1e-16);
    assert!((phi(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
    assert!((inc_beta_integer_b(2.0, 2, 0.4) - (3.0 * 0.16 - 2.0 * 0.064)).abs() < 1e-15);
    // P(1, x) = 1 − e^{−x}; P(½, x) = erf(√x).
    assert!((lower_gamma_series(1.0, 0.7) - (1.0 - (-0.7f64).exp())).abs() < 1e-15);
    assert!((lower_gamma_series(0.5, 2.0) - erf(2f64.sqrt())).abs() < 1e-14);
}
