//! Votes in models with a nuisance ("ghost") parameter υ.
//!
//! The decision rests on two independent statistics (T, U). For each υ the
//! problem in θ reduces to a one-sided MLR problem in T; the conditional
//! votes are then averaged against the inductive distribution of υ built
//! from U, which is an inverse-gamma law. Two cases have closed forms:
//!
//! * normal samples with unknown variance, where the averaged vote is a
//!   Student CDF;
//! * the noncentral-gamma pair behind fixed-effects ANOVA, where the vote
//!   on [0, θ] is a negative-binomial mixture of beta-prime CDFs with an
//!   atom at θ = 0 equal to the F-test p-value.
//!
//! Each closed form has a quadrature counterpart that integrates the
//! conditional vote against the mixing law directly.

use crate::error::{domain, Error, Result};
use crate::specfun::{
    beta_prime_cdf, ln_gamma, negative_binomial_weights, normal_cdf, poisson_weights, quadrature, reg_lower_gamma,
    reg_upper_gamma, student_cdf, Tolerance,
};
use crate::votes::ParameterLaw;

/// Realizations (t, u) of the independent statistics (T, U).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhostSample {
    pub t: f64,
    pub u: f64,
}

impl GhostSample {
    pub fn new(t: f64, u: f64) -> Result<Self> {
        if !(u > 0.0) || !u.is_finite() {
            return Err(domain("GhostSample", format!("u={u} must be positive")));
        }
        if !t.is_finite() {
            return Err(domain("GhostSample", format!("t={t} must be finite")));
        }
        Ok(Self { t, u })
    }
}

/// Sufficient statistics of a normal n-sample: x̄ and S² (divisor n − 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalSummary {
    n: u32,
    mean: f64,
    s2: f64,
}

impl NormalSummary {
    pub fn new(n: u32, mean: f64, s2: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegenerateSample(format!("n={n}, need at least 2 observations")));
        }
        if !mean.is_finite() {
            return Err(domain("NormalSummary", "mean must be finite"));
        }
        if !(s2 > 0.0) || !s2.is_finite() {
            return Err(Error::DegenerateSample(format!("s2={s2} must be positive")));
        }
        Ok(Self { n, mean, s2 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn s2(&self) -> f64 {
        self.s2
    }

    /// Degrees of freedom n − 1.
    pub fn dof(&self) -> f64 {
        f64::from(self.n - 1)
    }

    /// The statistic pair (T, U) = (x̄, (n − 1)S²).
    pub fn ghost_sample(&self) -> GhostSample {
        GhostSample {
            t: self.mean,
            u: self.dof() * self.s2,
        }
    }
}

/// T ~ γ(p, υ) with noncentrality θ/υ, U ~ γ(q, υ). Fixed-effects ANOVA
/// corresponds to p = k/2, q = l/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPairModel {
    pub p: f64,
    pub q: f64,
}

impl GammaPairModel {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0) || !(q > 0.0) || !p.is_finite() || !q.is_finite() {
            return Err(domain("GammaPairModel", format!("p={p}, q={q} must be positive")));
        }
        Ok(Self { p, q })
    }

    /// From numerator and denominator degrees of freedom.
    pub fn from_anova(k: f64, l: f64) -> Result<Self> {
        Self::new(0.5 * k, 0.5 * l)
    }
}

/// How the gamma law of 1/υ is scaled by the observed u.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixingConvention {
    /// 1/υ ~ γ(shape, 2/u); U is a sum of squares with scale 2υ.
    HalfSum,
    /// 1/υ ~ γ(shape, 1/u); U ~ γ(shape, υ).
    GammaRate,
}

/// Inverse-gamma law of υ: density s^a υ^{−a−1} e^{−s/υ} / Γ(a).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingDistribution {
    pub shape: f64,
    pub scale: f64,
}

impl MixingDistribution {
    pub fn pdf(&self, upsilon: f64) -> f64 {
        if !(upsilon > 0.0) {
            return 0.0;
        }
        self.ln_pdf(upsilon).exp()
    }

    pub fn ln_pdf(&self, upsilon: f64) -> f64 {
        self.shape * self.scale.ln() - ln_gamma(self.shape) - (self.shape + 1.0) * upsilon.ln() - self.scale / upsilon
    }

    /// P(V ≤ υ) = Q(a, s/υ).
    pub fn cdf(&self, upsilon: f64) -> Result<f64> {
        if upsilon <= 0.0 {
            return Ok(0.0);
        }
        reg_upper_gamma(self.shape, self.scale / upsilon)
    }

    pub fn mode(&self) -> f64 {
        self.scale / (self.shape + 1.0)
    }

    /// The gamma law of 1/υ as (shape, scale).
    pub fn reciprocal_gamma(&self) -> (f64, f64) {
        (self.shape, 1.0 / self.scale)
    }
}

/// The inductive law of υ given U = u.
pub fn inverse_gamma_mixing(shape: f64, u: f64, convention: MixingConvention) -> Result<MixingDistribution> {
    if !(shape > 0.0) || !(u > 0.0) || !shape.is_finite() || !u.is_finite() {
        return Err(domain(
            "inverse_gamma_mixing",
            format!("shape={shape}, u={u} must be positive"),
        ));
    }
    let scale = match convention {
        MixingConvention::HalfSum => 0.5 * u,
        MixingConvention::GammaRate => u,
    };
    Ok(MixingDistribution { shape, scale })
}

/// Vote for Θ₁ = (−∞, θ] after averaging over σ²: the Student(n−1) CDF at
/// √n(θ − x̄)/√S². Its complement is the one-sided Student p-value.
pub fn student_vote(summary: &NormalSummary, theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(domain("student_vote", "theta must be finite"));
    }
    let n = f64::from(summary.n);
    student_cdf(summary.dof(), n.sqrt() * (theta - summary.mean) / summary.s2.sqrt())
}

/// E[g(λ)] for λ ~ γ(shape, scale), integrated in s = ln λ so that the
/// integrand is smooth for every shape > 0.
fn gamma_expectation<G: Fn(f64) -> Result<f64>>(g: G, shape: f64, scale: f64, tol: Tolerance) -> Result<f64> {
    let center = (shape * scale).ln();
    let ln_norm = ln_gamma(shape) + shape * scale.ln();
    let err = std::cell::Cell::new(None);
    let integrand = |s: f64| {
        let lambda = (center + s).exp();
        // λ·density(λ), the Jacobian of λ = e^s folded in.
        let ln_w = shape * lambda.ln() - lambda / scale - ln_norm;
        if ln_w < -745.0 || lambda == 0.0 || !lambda.is_finite() {
            return 0.0;
        }
        match g(lambda) {
            Ok(v) => v * ln_w.exp(),
            Err(e) => {
                err.set(Some(e));
                0.0
            }
        }
    };
    let value = quadrature(integrand, f64::NEG_INFINITY, f64::INFINITY, tol)?;
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Student vote computed by mixing the conditional normal votes:
/// ∫ Φ(√n(θ − x̄)√λ) dγ(p, 2/u)(λ), p = (n−1)/2, u = (n−1)S².
pub fn student_vote_quadrature(summary: &NormalSummary, theta: f64, tol: Tolerance) -> Result<f64> {
    if !theta.is_finite() {
        return Err(domain("student_vote_quadrature", "theta must be finite"));
    }
    let GhostSample { t, u } = summary.ghost_sample();
    let n = f64::from(summary.n);
    let shape = 0.5 * summary.dof();
    let slope = n.sqrt() * (theta - t);
    gamma_expectation(|lambda| normal_cdf(slope * lambda.sqrt()), shape, 2.0 / u, tol)
}

fn check_anova_sample(sample: &GhostSample) -> Result<()> {
    if !(sample.t >= 0.0) {
        return Err(domain("anova", format!("t={} must be nonnegative", sample.t)));
    }
    if !(sample.u > 0.0) {
        return Err(domain("anova", format!("u={} must be positive", sample.u)));
    }
    Ok(())
}

/// Q^{(t,u)}({0}) = 1 − F(p, q, t/u) with F the β′(p, q) CDF: the F-test
/// p-value at (t/k)/(u/l) when p = k/2, q = l/2.
pub fn anova_point_mass(model: &GammaPairModel, sample: &GhostSample) -> Result<f64> {
    check_anova_sample(sample)?;
    Ok(1.0 - beta_prime_cdf(model.p, model.q, sample.t / sample.u)?)
}

/// Q^{(t,u)}([0, θ]) = 1 − Σ_m NB_m · F(p+m, q+m, t/(θ+u)), with NB_m the
/// negative-binomial(q, u/(θ+u)) weights. The series is cut once the
/// retained weight reaches 1 − series_tail.
pub fn anova_vote_series(model: &GammaPairModel, sample: &GhostSample, theta: f64, tol: Tolerance) -> Result<f64> {
    check_anova_sample(sample)?;
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(domain(
            "anova_vote_series",
            format!("theta={theta} must be nonnegative"),
        ));
    }
    let denom = theta + sample.u;
    let weights = negative_binomial_weights(model.q, theta / denom, tol)?;
    let y = sample.t / denom;
    let mut acc = 0.0;
    for (m, w) in weights.iter() {
        let m = m as f64;
        acc += w * beta_prime_cdf(model.p + m, model.q + m, y)?;
    }
    Ok((1.0 - acc).clamp(0.0, 1.0))
}

/// CDF at t of γ(p, υ) with noncentrality θ/υ: Σ Poisson(θ/υ)_m P(p+m, t/υ).
fn noncentral_gamma_cdf(p: f64, upsilon: f64, theta: f64, t: f64, tol: Tolerance) -> Result<f64> {
    let weights = poisson_weights(theta / upsilon, tol)?;
    let mut acc = 0.0;
    for (m, w) in weights.iter() {
        acc += w * reg_lower_gamma(p + m as f64, t / upsilon)?;
    }
    Ok(acc)
}

/// Q^{(t,u)}([0, θ]) by direct integration of the conditional neutral
/// votes: 1 − ∫ F_υ(θ, t) dInvγ(q, 1/u)(υ), computed in λ = 1/υ.
pub fn anova_vote_quadrature(model: &GammaPairModel, sample: &GhostSample, theta: f64, tol: Tolerance) -> Result<f64> {
    check_anova_sample(sample)?;
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(domain(
            "anova_vote_quadrature",
            format!("theta={theta} must be nonnegative"),
        ));
    }
    let series_tol = tol.with_series_tail(tol.series_tail.min(1e-13));
    let mixed = gamma_expectation(
        |lambda| noncentral_gamma_cdf(model.p, 1.0 / lambda, theta, sample.t, series_tol),
        model.q,
        1.0 / sample.u,
        tol,
    )?;
    Ok(1.0 - mixed)
}

/// The inductive law Q^{(t,u)} on Θ = [0, ∞): an atom at 0 plus the
/// continuous part traced by [`anova_vote_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnovaInductive {
    model: GammaPairModel,
    sample: GhostSample,
    tol: Tolerance,
}

impl AnovaInductive {
    pub fn point_mass(&self) -> Result<f64> {
        anova_point_mass(&self.model, &self.sample)
    }
}

impl ParameterLaw for AnovaInductive {
    fn cdf_at(&self, theta: f64) -> Result<f64> {
        if theta.is_nan() {
            return Err(domain("cdf_at", "theta is NaN"));
        }
        if theta < 0.0 {
            return Ok(0.0);
        }
        if theta.is_infinite() {
            return Ok(1.0);
        }
        anova_vote_series(&self.model, &self.sample, theta, self.tol)
    }

    fn prob(&self, a: f64, b: f64) -> Result<f64> {
        if !(a <= b) || b < 0.0 {
            return Ok(0.0);
        }
        let upper = self.cdf_at(b)?;
        let below = if a <= 0.0 { 0.0 } else { self.cdf_at(a)? };
        Ok((upper - below).max(0.0))
    }
}

pub fn anova_inductive_distribution(
    model: GammaPairModel,
    sample: GhostSample,
    tol: Tolerance,
) -> Result<AnovaInductive> {
    check_anova_sample(&sample)?;
    Ok(AnovaInductive { model, sample, tol })
}
