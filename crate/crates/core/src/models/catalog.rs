use super::MlrFamily;
use crate::error::{domain, Result};
use crate::interval::ParamInterval;
use crate::specfun::{
    ln_gamma, normal_cdf, normal_pdf, poisson_weights, reg_inc_beta, reg_lower_gamma, reg_upper_gamma, Tolerance,
};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn positive(name: &'static str, what: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(name, format!("{what}={v} must be positive and finite")))
    }
}

/// N(θ, σ²) with θ ∈ ℝ: F(θ, x) = Φ((x − θ)/σ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalLocation {
    sigma: f64,
}

impl NormalLocation {
    pub fn new(sigma: f64) -> Result<Self> {
        positive("NormalLocation", "sigma", sigma)?;
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl MlrFamily for NormalLocation {
    fn tag(&self) -> String {
        format!("normal(sigma={})", self.sigma)
    }
    fn theta_domain(&self) -> ParamInterval {
        ParamInterval::real_line()
    }
    fn support(&self) -> ParamInterval {
        ParamInterval::real_line()
    }
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64> {
        normal_cdf((x - theta) / self.sigma)
    }
    fn eval_sf(&self, theta: f64, x: f64) -> Result<f64> {
        normal_cdf((theta - x) / self.sigma)
    }
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64> {
        let z = (x - theta) / self.sigma;
        Ok(-0.5 * z * z - self.sigma.ln() - LN_SQRT_2PI)
    }
}

/// Gamma law with shape `p` and scale `m·υ`, parameterized by the scale
/// factor υ > 0: F(υ, u) = P(p, u/(mυ)).
///
/// With p = (n−1)/2 and m = 2 this is the law of (n−1)S² for a normal
/// sample with variance υ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaScale {
    shape: f64,
    scale_multiplier: f64,
}

impl GammaScale {
    pub fn new(shape: f64, scale_multiplier: f64) -> Result<Self> {
        positive("GammaScale", "shape", shape)?;
        positive("GammaScale", "scale_multiplier", scale_multiplier)?;
        Ok(Self {
            shape,
            scale_multiplier,
        })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn scale_multiplier(&self) -> f64 {
        self.scale_multiplier
    }
}

impl MlrFamily for GammaScale {
    fn tag(&self) -> String {
        format!("gamma-scale(shape={}, m={})", self.shape, self.scale_multiplier)
    }
    fn theta_domain(&self) -> ParamInterval {
        ParamInterval::positive()
    }
    fn support(&self) -> ParamInterval {
        ParamInterval::positive()
    }
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64> {
        reg_lower_gamma(self.shape, x / (self.scale_multiplier * theta))
    }
    fn eval_sf(&self, theta: f64, x: f64) -> Result<f64> {
        reg_upper_gamma(self.shape, x / (self.scale_multiplier * theta))
    }
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64> {
        let scale = self.scale_multiplier * theta;
        Ok(-ln_gamma(self.shape) - self.shape * scale.ln() + (self.shape - 1.0) * x.ln() - x / scale)
    }
}

/// Noncentral beta law on ℝ⁺ (beta of the second kind) with known `p`, `q`
/// and noncentrality θ ≥ 0: a Poisson(θ) mixture of β′(p+m, q).
///
/// If W is noncentral F(k, l) with noncentrality λ, then (k/l)·W follows
/// this family with p = k/2, q = l/2, θ = λ²/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncentralBeta {
    p: f64,
    q: f64,
    tol: Tolerance,
}

impl NoncentralBeta {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        Self::with_tolerance(p, q, Tolerance::default())
    }

    pub fn with_tolerance(p: f64, q: f64, tol: Tolerance) -> Result<Self> {
        positive("NoncentralBeta", "p", p)?;
        positive("NoncentralBeta", "q", q)?;
        Ok(Self { p, q, tol })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

impl MlrFamily for NoncentralBeta {
    fn tag(&self) -> String {
        format!("noncentral-beta(p={}, q={})", self.p, self.q)
    }
    fn theta_domain(&self) -> ParamInterval {
        ParamInterval::nonnegative()
    }
    fn support(&self) -> ParamInterval {
        ParamInterval::positive()
    }
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64> {
        if x.is_infinite() {
            return Ok(1.0);
        }
        let z = x / (1.0 + x);
        let weights = poisson_weights(theta, self.tol)?;
        let mut acc = 0.0;
        for (m, w) in weights.iter() {
            acc += w * reg_inc_beta(self.p + m as f64, self.q, z)?;
        }
        Ok(acc.clamp(0.0, 1.0))
    }
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64> {
        let weights = poisson_weights(theta, self.tol)?;
        let (lx, l1x) = (x.ln(), x.ln_1p());
        let terms: Vec<f64> = weights
            .iter()
            .map(|(m, w)| {
                let a = self.p + m as f64;
                w.ln() + ln_gamma(a + self.q) - ln_gamma(a) - ln_gamma(self.q) + (a - 1.0) * lx - (a + self.q) * l1x
            })
            .collect();
        Ok(log_sum_exp(&terms))
    }
}

/// Noncentral chi-square with one degree of freedom, parameterized by
/// λ ≥ 0 (noncentrality λ²). The CDF at w is evaluated as the Poisson(λ²/2)
/// mixture of central χ²(1 + 2j) CDFs; it equals Φ(√w − λ) − Φ(−√w − λ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncentralChi2One {
    tol: Tolerance,
}

impl Default for NoncentralChi2One {
    fn default() -> Self {
        Self::new()
    }
}

impl NoncentralChi2One {
    pub fn new() -> Self {
        Self {
            tol: Tolerance::default(),
        }
    }

    pub fn with_tolerance(tol: Tolerance) -> Self {
        Self { tol }
    }
}

impl MlrFamily for NoncentralChi2One {
    fn tag(&self) -> String {
        "noncentral-chi2(df=1)".into()
    }
    fn theta_domain(&self) -> ParamInterval {
        ParamInterval::nonnegative()
    }
    fn support(&self) -> ParamInterval {
        ParamInterval::positive()
    }
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64> {
        if x == 0.0 {
            return Ok(0.0);
        }
        let weights = poisson_weights(0.5 * theta * theta, self.tol)?;
        let mut acc = 0.0;
        for (j, w) in weights.iter() {
            acc += w * reg_lower_gamma(0.5 + j as f64, 0.5 * x)?;
        }
        Ok(acc.clamp(0.0, 1.0))
    }
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64> {
        let r = x.sqrt();
        // For large λ√w the two terms differ by e^{-2λ√w}; factor out the larger.
        let big = normal_pdf(r - theta);
        let ratio = (-2.0 * theta * r).exp();
        Ok(big.ln() + ratio.ln_1p() - (2.0 * r).ln())
    }
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// A family with Θ replaced by a sub-interval. Used to exhibit parameter
/// spaces on which the compatibility limit conditions fail.
#[derive(Debug, Clone, PartialEq)]
pub struct WithThetaDomain<F> {
    inner: F,
    domain: ParamInterval,
}

impl<F: MlrFamily> WithThetaDomain<F> {
    pub fn new(inner: F, domain: ParamInterval) -> Result<Self> {
        let outer = inner.theta_domain();
        if domain.lower < outer.lower || domain.upper > outer.upper {
            return Err(crate::error::Error::Parameter {
                theta: if domain.lower < outer.lower {
                    domain.lower
                } else {
                    domain.upper
                },
                domain: outer.to_string(),
            });
        }
        Ok(Self { inner, domain })
    }
}

impl<F: MlrFamily> MlrFamily for WithThetaDomain<F> {
    fn tag(&self) -> String {
        format!("{} on Theta={}", self.inner.tag(), self.domain)
    }
    fn theta_domain(&self) -> ParamInterval {
        self.domain
    }
    fn support(&self) -> ParamInterval {
        self.inner.support()
    }
    fn eval_cdf(&self, theta: f64, x: f64) -> Result<f64> {
        self.inner.eval_cdf(theta, x)
    }
    fn eval_log_density(&self, theta: f64, x: f64) -> Result<f64> {
        self.inner.eval_log_density(theta, x)
    }
    fn eval_sf(&self, theta: f64, x: f64) -> Result<f64> {
        self.inner.eval_sf(theta, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn noncentral_beta_zero_noncentrality() {
        let nb = NoncentralBeta::new(2.0, 3.0).unwrap();
        for &x in &[0.1, 0.6667, 1.0, 4.0] {
            let direct = reg_inc_beta(2.0, 3.0, x / (1.0 + x)).unwrap();
            assert_abs_diff_eq!(nb.cdf(0.0, x).unwrap(), direct, epsilon = 1e-15);
        }
    }

    #[test]
    fn noncentral_chi2_series_matches_normal_form() {
        let chi = NoncentralChi2One::new();
        for &lambda in &[0.0, 0.3, 1.0, 2.5, 6.0] {
            for &w in &[0.01_f64, 0.5, 2.0, 9.0, 40.0] {
                let r: f64 = w.sqrt();
                let normal_form = normal_cdf(r - lambda).unwrap() - normal_cdf(-r - lambda).unwrap();
                assert_abs_diff_eq!(chi.cdf(lambda, w).unwrap(), normal_form, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn densities_integrate_to_cdf() {
        use crate::specfun::quadrature;
        let tol = Tolerance::default().with_abs_tol(1e-11);
        let fams: Vec<(Box<dyn MlrFamily>, f64, f64)> = vec![
            (Box::new(GammaScale::new(2.5, 2.0).unwrap()), 0.7, 3.0),
            (Box::new(NoncentralBeta::new(1.5, 5.0).unwrap()), 1.3, 0.8),
            (Box::new(NoncentralChi2One::new()), 1.1, 2.0),
        ];
        for (fam, theta, x) in fams {
            let integral = quadrature(|y| fam.log_density(theta, y).unwrap().exp(), 0.0, x, tol).unwrap();
            assert_abs_diff_eq!(integral, fam.cdf(theta, x).unwrap(), epsilon = 1e-8);
        }
    }

    #[test]
    fn restricted_domain_rejects_outside() {
        let dom = ParamInterval::parse("(0,1]").unwrap();
        let fam = WithThetaDomain::new(NormalLocation::new(1.0).unwrap(), dom).unwrap();
        assert!(fam.cdf(1.5, 0.0).is_err());
        assert!(fam.cdf(1.0, 0.0).is_ok());
        let bad = WithThetaDomain::new(GammaScale::new(1.0, 1.0).unwrap(), ParamInterval::real_line());
        assert!(bad.is_err());
    }
}
