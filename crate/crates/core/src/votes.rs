//! Expert votes for one-sided hypotheses, the inductive distribution built
//! from compatible neutral votes, and the two bilateral treatments.
//!
//! Under P_θ the proportion of threshold experts deciding "θ ∈ Θ₁" at the
//! realization x is 1 − F(θ, x). The neutral vote takes θ at the boundary
//! θ₁; its two weights are the one-sided p-values F(θ₁, x) and 1 − F(θ₁, x).

use crate::error::{domain, Error, Result};
use crate::models::{boundary_limits, BoundaryProbes, MlrFamily, NoncentralChi2One};
use crate::specfun::normal_cdf;

/// Tolerance applied to the compatibility limit conditions.
pub const LIMIT_TOL: f64 = 1e-10;

/// A probability on the decision space {0, 1}: `q1` weighs "θ ∈ Θ₁",
/// `q0` weighs "θ ∈ Θ₀".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoteResult {
    pub q0: f64,
    pub q1: f64,
}

impl VoteResult {
    pub fn from_q0(q0: f64) -> Self {
        let q0 = q0.clamp(0.0, 1.0);
        Self { q0, q1: 1.0 - q0 }
    }

    pub fn from_q1(q1: f64) -> Self {
        let q1 = q1.clamp(0.0, 1.0);
        Self { q0: 1.0 - q1, q1 }
    }
}

/// Θ₁ = (−∞, θ₁] ∩ Θ against Θ₀ = (θ₁, ∞) ∩ Θ.
#[derive(Debug, Clone, Copy)]
pub struct OneSidedSplit<'a, F: ?Sized> {
    family: &'a F,
    boundary: f64,
}

impl<'a, F: MlrFamily + ?Sized> OneSidedSplit<'a, F> {
    /// Both sides must be nonempty: θ₁ ∈ Θ and θ₁ ≠ sup Θ. A split at a
    /// closed upper endpoint is rejected as degenerate.
    pub fn new(family: &'a F, boundary: f64) -> Result<Self> {
        let dom = family.theta_domain();
        if boundary.is_nan() || !dom.contains(boundary) {
            return Err(Error::DegenerateSplit {
                boundary,
                detail: format!("boundary outside Theta = {dom}, one side is empty"),
            });
        }
        if boundary >= dom.upper {
            return Err(Error::DegenerateSplit {
                boundary,
                detail: format!("boundary is sup Theta of {dom}, Theta_0 is empty"),
            });
        }
        Ok(Self { family, boundary })
    }

    pub fn boundary(&self) -> f64 {
        self.boundary
    }

    pub fn family(&self) -> &'a F {
        self.family
    }
}

/// Θ₀ = [θ₁, θ₂] against Θ₁ = (−∞, θ₁) ∪ (θ₂, ∞).
#[derive(Debug, Clone, Copy)]
pub struct BilateralSplit<'a, F: ?Sized> {
    family: &'a F,
    theta1: f64,
    theta2: f64,
}

impl<'a, F: MlrFamily + ?Sized> BilateralSplit<'a, F> {
    pub fn new(family: &'a F, theta1: f64, theta2: f64) -> Result<Self> {
        if !(theta1 <= theta2) {
            return Err(domain(
                "BilateralSplit",
                format!("theta1={theta1} must not exceed theta2={theta2}"),
            ));
        }
        family.check_theta(theta1)?;
        family.check_theta(theta2)?;
        Ok(Self { family, theta1, theta2 })
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.theta1, self.theta2)
    }
}

/// Vote of the threshold experts under P_θ: q1 = 1 − F(θ, x). The
/// `boundary` only labels the hypotheses and does not enter the value.
pub fn vote_at<F: MlrFamily + ?Sized>(family: &F, theta: f64, boundary: f64, x: f64) -> Result<VoteResult> {
    if boundary.is_nan() {
        return Err(domain("vote_at", "boundary is NaN"));
    }
    Ok(VoteResult::from_q0(family.cdf(theta, x)?))
}

/// Neutral vote at the boundary: q0 = F(θ₁, x) (p-value of H0: θ ∈ Θ₀),
/// q1 = 1 − F(θ₁, x) (p-value of H0′: θ ∈ Θ₁).
pub fn neutral_vote<F: MlrFamily + ?Sized>(split: &OneSidedSplit<'_, F>, x: f64) -> Result<VoteResult> {
    Ok(VoteResult::from_q0(split.family.cdf(split.boundary, x)?))
}

/// True when θ ↦ F(θ, x) does not increase along `boundaries` (beyond
/// rounding): the one-sided p-values are coherent under nesting.
pub fn coherence_check<F: MlrFamily + ?Sized>(family: &F, x: f64, boundaries: &[f64]) -> Result<bool> {
    let values = boundaries
        .iter()
        .map(|&b| family.cdf(b, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(boundaries
        .windows(2)
        .zip(values.windows(2))
        .all(|(b, v)| b[0] > b[1] || v[1] <= v[0] + 1e-14))
}

/// A probability on the parameter line.
pub trait ParameterLaw {
    /// Q((−∞, θ]).
    fn cdf_at(&self, theta: f64) -> Result<f64>;

    /// Q([a, b]).
    fn prob(&self, a: f64, b: f64) -> Result<f64>;
}

/// Q^x: the probability on Θ whose CDF is θ ↦ 1 − F(θ, x). Mass left at a
/// closed endpoint of Θ is placed on that endpoint.
#[derive(Debug, Clone, Copy)]
pub struct InductiveDistribution<'a, F: ?Sized> {
    family: &'a F,
    x: f64,
}

impl<'a, F: MlrFamily + ?Sized> InductiveDistribution<'a, F> {
    pub fn x(&self) -> f64 {
        self.x
    }

    /// Q([a, b]) for θ-intervals strictly inside Θ reduces to
    /// F(a, x) − F(b, x).
    pub fn interval_mass(&self, a: f64, b: f64) -> Result<f64> {
        self.prob(a, b)
    }

    /// Q((−∞, θ)); differs from `cdf_at` only at an atom.
    fn cdf_before(&self, theta: f64) -> Result<f64> {
        let dom = self.family.theta_domain();
        if theta <= dom.lower {
            return Ok(0.0);
        }
        if theta > dom.upper || (theta == dom.upper && !dom.upper_closed) {
            return Ok(1.0);
        }
        Ok(1.0 - self.family.cdf(theta, self.x)?)
    }
}

impl<F: MlrFamily + ?Sized> ParameterLaw for InductiveDistribution<'_, F> {
    fn cdf_at(&self, theta: f64) -> Result<f64> {
        if theta.is_nan() {
            return Err(domain("cdf_at", "theta is NaN"));
        }
        let dom = self.family.theta_domain();
        if theta < dom.lower || (theta == dom.lower && !dom.lower_closed) {
            return Ok(0.0);
        }
        if theta >= dom.upper {
            return Ok(1.0);
        }
        Ok(1.0 - self.family.cdf(theta, self.x)?)
    }

    fn prob(&self, a: f64, b: f64) -> Result<f64> {
        if !(a <= b) {
            return Ok(0.0);
        }
        Ok((self.cdf_at(b)? - self.cdf_before(a)?).max(0.0))
    }
}

/// Builds Q^x after verifying the limit conditions for compatible votes.
pub fn inductive_distribution<F: MlrFamily + ?Sized>(family: &F, x: f64) -> Result<InductiveDistribution<'_, F>> {
    let probes = BoundaryProbes::default_for(&family.theta_domain());
    inductive_distribution_with(family, x, &probes)
}

pub fn inductive_distribution_with<'a, F: MlrFamily + ?Sized>(
    family: &'a F,
    x: f64,
    probes: &BoundaryProbes,
) -> Result<InductiveDistribution<'a, F>> {
    let report = boundary_limits(family, x, probes, LIMIT_TOL)?;
    if let Some(msg) = report.failure() {
        return Err(Error::Compatibility(format!("{} at x={x}: {msg}", family.tag())));
    }
    Ok(InductiveDistribution { family, x })
}

/// Order-coherent bilateral vote: q0 = Q^x([θ₁, θ₂]), which for θ₁, θ₂
/// interior to Θ is F(θ₁, x) − F(θ₂, x).
pub fn bilateral_vote_compatible<F: MlrFamily + ?Sized>(split: &BilateralSplit<'_, F>, x: f64) -> Result<VoteResult> {
    let q = inductive_distribution(split.family, x)?;
    Ok(VoteResult::from_q0(q.prob(split.theta1, split.theta2)?))
}

fn check_symmetric_args(lambda1: f64, c: f64, x: f64) -> Result<()> {
    if !(lambda1 >= 0.0) || !lambda1.is_finite() {
        return Err(domain(
            "symmetric vote",
            format!("lambda1={lambda1} must be nonnegative"),
        ));
    }
    if !c.is_finite() || !x.is_finite() {
        return Err(domain("symmetric vote", "c and x must be finite"));
    }
    Ok(())
}

/// Symmetric bilateral vote for N(θ, σ²) with Θ₀ = [c − λ₁, c + λ₁]:
/// q1 = Φ(z − λ) − Φ(−z − λ) with z = |x − c|/σ, λ = λ₁/σ. Then q0 is the
/// p-value of the unbiased test of H0: θ ∈ Θ₀.
pub fn bilateral_vote_symmetric_normal(c: f64, lambda1: f64, x: f64, sigma: f64) -> Result<VoteResult> {
    check_symmetric_args(lambda1, c, x)?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(domain("symmetric vote", format!("sigma={sigma} must be positive")));
    }
    let z = (x - c).abs() / sigma;
    let lambda = lambda1 / sigma;
    Ok(VoteResult::from_q1(normal_cdf(z - lambda)? - normal_cdf(-z - lambda)?))
}

/// The same vote (σ = 1) read as the one-degree noncentral χ² CDF at
/// W = (x − c)² with parameter λ₁, evaluated by its Poisson–gamma series.
pub fn symmetric_vote_via_chi2(c: f64, lambda1: f64, x: f64) -> Result<VoteResult> {
    check_symmetric_args(lambda1, c, x)?;
    let w = (x - c) * (x - c);
    Ok(VoteResult::from_q1(NoncentralChi2One::new().cdf(lambda1, w)?))
}
