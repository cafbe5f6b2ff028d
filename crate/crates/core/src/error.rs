use thiserror::Error;

/// Errors raised by the numerical layer, the model catalog and the vote
/// constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a special function.
    #[error("domain error in {function}: {detail}")]
    Domain { function: &'static str, detail: String },

    /// A parameter value lies outside the family's parameter interval.
    #[error("parameter {theta} outside {domain}")]
    Parameter { theta: f64, domain: String },

    /// A realization lies outside the family's sample interval.
    #[error("sample value {x} outside support {support}")]
    Sample { x: f64, support: String },

    /// A mixture series did not reach the requested mass.
    #[error("series truncated: mass {mass:e} after {terms} terms, target deficit {tail:e}")]
    Truncation { mass: f64, terms: usize, tail: f64 },

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature did not converge: error estimate {estimate:e} after {intervals} intervals")]
    Quadrature { estimate: f64, intervals: usize },

    /// Iterative evaluation (continued fraction, bisection) failed.
    #[error("numeric failure in {0}")]
    Numeric(String),

    /// A one-sided vote was requested at a split that leaves one side empty.
    #[error("degenerate split at {boundary}: {detail}")]
    DegenerateSplit { boundary: f64, detail: String },

    /// The boundary-limit conditions for compatible votes failed.
    #[error("incompatible votes: {0}")]
    Compatibility(String),

    /// A sample summary cannot support a vote (e.g. zero variance).
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// Malformed textual input (interval syntax, grids).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
