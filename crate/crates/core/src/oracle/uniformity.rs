use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::models::{quantile, MlrFamily};

pub const MIN_SAMPLES: usize = 1000;

/// Asymptotic Kolmogorov–Smirnov critical value at level 0.01, to be
/// divided by √N.
pub const KS_CRITICAL_01: f64 = 1.63;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformityReport {
    pub n: usize,
    pub ks: f64,
    pub critical: f64,
    pub passed: bool,
    /// Sample mean of 1 − F(θ, X).
    pub mean_q1: f64,
}

/// Kolmogorov–Smirnov distance between the empirical law of `values` and
/// the uniform law on [0, 1]. Sorts in place.
pub fn ks_statistic(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    values.iter().enumerate().fold(0.0_f64, |d, (i, &v)| {
        let above = (i + 1) as f64 / n - v;
        let below = v - i as f64 / n;
        d.max(above).max(below)
    })
}

/// `n` draws from the open unit interval, reproducible from `seed`
/// (ChaCha8 stream).
pub fn seeded_uniforms(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.sample::<f64, _>(Open01)).collect()
}

/// Samples X from P_θ₁ by inversion and tests F(θ₁, X) for uniformity.
pub fn uniformity_check<F: MlrFamily + ?Sized>(
    family: &F,
    theta1: f64,
    n_samples: usize,
    seed: u64,
) -> Result<UniformityReport> {
    uniformity_check_at(family, theta1, theta1, n_samples, seed)
}

/// As [`uniformity_check`], but samples under `sample_theta` and evaluates
/// the CDF at `eval_theta`. With the two different the check should fail.
pub fn uniformity_check_at<F: MlrFamily + ?Sized>(
    family: &F,
    sample_theta: f64,
    eval_theta: f64,
    n_samples: usize,
    seed: u64,
) -> Result<UniformityReport> {
    if n_samples < MIN_SAMPLES {
        return Err(domain(
            "uniformity_check",
            format!("need at least {MIN_SAMPLES} samples, got {n_samples}"),
        ));
    }
    family.check_theta(sample_theta)?;
    family.check_theta(eval_theta)?;
    let mut values = Vec::with_capacity(n_samples);
    for u in seeded_uniforms(seed, n_samples) {
        let x = quantile(family, sample_theta, u)?;
        values.push(family.cdf(eval_theta, x)?);
    }
    let mean_q1 = values.iter().map(|v| 1.0 - v).sum::<f64>() / n_samples as f64;
    let ks = ks_statistic(&mut values);
    let critical = KS_CRITICAL_01 / (n_samples as f64).sqrt();
    Ok(UniformityReport {
        n: n_samples,
        ks,
        critical,
        passed: ks < critical,
        mean_q1,
    })
}
