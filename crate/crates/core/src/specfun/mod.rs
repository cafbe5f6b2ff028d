//! Numerical special functions, mixture weights and quadrature.
//!
//! Everything here is self-contained: the normal CDF goes through a
//! series/continued-fraction `erfc`, the incomplete gamma and beta functions
//! switch between power series and Lentz continued fractions at the usual
//! dominance boundary, and mixture weights are expanded outward from the
//! mode until the requested mass is covered.

mod beta;
mod gamma;
mod normal;
mod quadrature;
mod student;
mod weights;

pub use beta::{beta_prime_cdf, reg_inc_beta};
pub use gamma::{ln_gamma, reg_lower_gamma, reg_upper_gamma};
pub use normal::{erfc, normal_cdf, normal_pdf};
pub use quadrature::quadrature;
pub use student::student_cdf;
pub use weights::{negative_binomial_weights, poisson_weights, WeightedTerms};

use crate::error::{domain, Result};

/// Accuracy targets shared by series truncation and quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Largest mixture mass allowed to be dropped from a series tail.
    pub series_tail: f64,
    /// Cap on series terms (and quadrature subdivisions).
    pub max_terms: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            series_tail: 1e-13,
            max_terms: 10_000,
        }
    }
}

impl Tolerance {
    pub fn new(abs_tol: f64, series_tail: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(series_tail > 0.0) || max_terms == 0 {
            return Err(domain(
                "Tolerance::new",
                format!("abs_tol={abs_tol}, series_tail={series_tail}, max_terms={max_terms}"),
            ));
        }
        Ok(Self {
            abs_tol,
            series_tail,
            max_terms,
        })
    }

    /// Defaults for the integrals used as oracles.
    pub fn quadrature() -> Self {
        Self {
            abs_tol: 1e-8,
            ..Self::default()
        }
    }

    /// Defaults for the nuisance-parameter series.
    pub fn series() -> Self {
        Self {
            series_tail: 1e-12,
            ..Self::default()
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_series_tail(mut self, series_tail: f64) -> Self {
        self.series_tail = series_tail;
        self
    }
}

pub(crate) const EPS: f64 = f64::EPSILON;
/// Smallest magnitude used to guard Lentz iterations.
pub(crate) const TINY: f64 = 1e-300;
