//! Checks of the expert inequality and of the neutrality of one-sided votes.

mod expert;
mod rule;
mod uniformity;

pub use expert::{
    default_theta_pairs, expert_check, EventWitness, ExpertVerdict, DEFAULT_SEARCH_BUDGET, GAP_GRID_POINTS,
    MIN_EVENT_PROB, VIOLATION_MARGIN,
};
pub use rule::{DecisionRule, IntervalUnion, Span};
pub use uniformity::{
    ks_statistic, seeded_uniforms, uniformity_check, uniformity_check_at, UniformityReport, KS_CRITICAL_01, MIN_SAMPLES,
};
