//! Inductive probabilities ("votes") for one-sided and bilateral hypotheses
//! in families with a monotone likelihood ratio.
//!
//! The neutral vote for H0: θ > θ₁ against H0': θ ≤ θ₁ at realization x is
//! (F(θ₁, x), 1 − F(θ₁, x)), the pair of one-sided p-values. Letting the
//! boundary vary gives a probability on the parameter space whose CDF is
//! θ ↦ 1 − F(θ, x); bilateral votes are masses of intervals under it.
//! Nuisance parameters are integrated out against an inverse-gamma law
//! fitted to a ghost sample, which yields Student and noncentral-F votes.

// Negated comparisons are used on purpose: `!(a < b)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod interval;
pub mod models;
pub mod nuisance;
pub mod oracle;
pub mod specfun;
pub mod votes;

pub use error::{Error, Result};
pub use interval::ParamInterval;
pub use models::MlrFamily;
pub use specfun::Tolerance;
pub use votes::VoteResult;
