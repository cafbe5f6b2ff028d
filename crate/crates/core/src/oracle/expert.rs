use std::fmt;

use super::rule::{DecisionRule, IntervalUnion, Span};
use crate::error::{domain, Result};
use crate::models::MlrFamily;

pub const DEFAULT_SEARCH_BUDGET: usize = 4096;

/// Points on the first pass over the threshold gap; each later pass doubles.
pub const GAP_GRID_POINTS: usize = 64;

/// rhs − lhs must exceed this before an event counts as a violation, so that
/// rounding in CDF differences cannot fabricate a witness.
pub const VIOLATION_MARGIN: f64 = 1e-9;

/// Events this unlikely under either parameter are treated as negligible.
pub const MIN_EVENT_PROB: f64 = 1e-9;

/// An event C and a parameter pair for which
/// P_θ′(C ∩ {φ=1}) / P_θ′(C) < P_θ″(C ∩ {φ=1}) / P_θ″(C).
#[derive(Debug, Clone, PartialEq)]
pub struct EventWitness {
    pub event: IntervalUnion,
    /// θ″, on the Θ0 side of the boundary.
    pub theta0: f64,
    /// θ′, on the Θ1 side of the boundary.
    pub theta1: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl fmt::Display for EventWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "C = {}: ratio {:.6} under theta={} < {:.6} under theta={}",
            self.event, self.lhs, self.theta1, self.rhs, self.theta0
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExpertVerdict {
    /// No violating event among the ones searched. Not a proof.
    Pass {
        events_checked: usize,
    },
    Witness(EventWitness),
}

impl ExpertVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, Self::Pass { .. })
    }

    pub fn witness(&self) -> Option<&EventWitness> {
        match self {
            Self::Witness(w) => Some(w),
            Self::Pass { .. } => None,
        }
    }
}

/// Pairs (θ′, θ″) at distances 0.5, 1 and 2 on each side of the boundary,
/// pulled back to the boundary itself when they would leave Θ on the left.
pub fn default_theta_pairs<F: MlrFamily + ?Sized>(family: &F, boundary: f64) -> Vec<(f64, f64)> {
    let dom = family.theta_domain();
    let mut pairs = Vec::new();
    for d in [0.5, 1.0, 2.0] {
        let lo = if dom.contains(boundary - d) {
            boundary - d
        } else {
            boundary
        };
        let hi = boundary + d;
        if dom.contains(lo) && dom.contains(hi) && !pairs.contains(&(lo, hi)) {
            pairs.push((lo, hi));
        }
    }
    pairs
}

/// Searches for an event refuting the expert inequality for `rule`.
///
/// Candidate events are first built from the threshold gap (t′, t″): for t
/// on a grid in the gap, C = ([t′,t) ∩ {φ=0}) ∪ ((t,t″] ∩ {φ=1}). The grid
/// starts at 64 points and doubles while the first half of the budget lasts.
/// The rest of the budget goes to unions of two cells from a grid spanning
/// the rule's breakpoints. Each event counts once against the budget
/// regardless of the number of parameter pairs.
pub fn expert_check<F: MlrFamily + ?Sized>(
    family: &F,
    rule: &DecisionRule,
    boundary: f64,
    theta_pairs: &[(f64, f64)],
    search_budget: usize,
) -> Result<ExpertVerdict> {
    for &(t1, t0) in theta_pairs {
        family.check_theta(t1)?;
        family.check_theta(t0)?;
        if !(t1 <= boundary && boundary < t0) {
            return Err(domain(
                "expert_check",
                format!("pair ({t1}, {t0}) does not straddle the boundary {boundary}"),
            ));
        }
    }
    let support = family.support();
    let accept = rule.accept_one().clip(support.lower, support.upper);
    let reject = accept.complement_within(support.lower, support.upper);
    let mut search = Search {
        family,
        accept: &accept,
        pairs: theta_pairs,
        checked: 0,
        budget: search_budget,
    };

    let (gap_lo, gap_hi) = rule.threshold_gap_on(&support);
    let breaks = accept.breakpoints();
    if gap_lo < gap_hi {
        let grid_lo = if gap_lo.is_finite() {
            gap_lo
        } else {
            breaks.first().copied().unwrap_or(gap_hi).min(gap_hi) - 1.0
        };
        let grid_hi = if gap_hi.is_finite() {
            gap_hi
        } else {
            breaks.last().copied().unwrap_or(gap_lo).max(gap_lo) + 1.0
        };
        // At least one full pass when the budget allows it.
        let share = (search_budget / 2).max(GAP_GRID_POINTS.min(search_budget));
        let mut points = GAP_GRID_POINTS;
        while search.checked + points <= share {
            for k in 1..=points {
                let t = grid_lo + (grid_hi - grid_lo) * k as f64 / (points + 1) as f64;
                let a = reject.clip(gap_lo, t);
                let b = accept.clip(t, gap_hi);
                if let Some(w) = search.test(&a.union(&b))? {
                    return Ok(ExpertVerdict::Witness(w));
                }
            }
            points *= 2;
        }
    }

    let (win_lo, win_hi) = match (breaks.first(), breaks.last()) {
        (Some(&a), Some(&b)) => (a - 1.0, b + 1.0),
        _ => (boundary - 3.0, boundary + 3.0),
    };
    let (win_lo, win_hi) = (win_lo.max(support.lower), win_hi.min(support.upper));
    let mut cells_per_window = 8;
    // Finer windows until the budget runs out.
    if win_lo < win_hi {
        loop {
            let mut edges = vec![support.lower];
            for k in 0..=cells_per_window {
                edges.push(win_lo + (win_hi - win_lo) * k as f64 / cells_per_window as f64);
            }
            edges.push(support.upper);
            edges.dedup();
            let cells: Vec<IntervalUnion> = edges
                .windows(2)
                .filter(|w| w[0] < w[1])
                .map(|w| IntervalUnion::single(Span::closed_open(w[0], w[1])))
                .collect::<Result<_>>()?;
            let events = cells.len() * (cells.len() - 1) / 2;
            if search.checked + events > search.budget {
                break;
            }
            for i in 0..cells.len() {
                for j in i + 1..cells.len() {
                    if let Some(w) = search.test(&cells[i].union(&cells[j]))? {
                        return Ok(ExpertVerdict::Witness(w));
                    }
                }
            }
            cells_per_window *= 2;
        }
    }
    Ok(ExpertVerdict::Pass {
        events_checked: search.checked,
    })
}

struct Search<'a, F: ?Sized> {
    family: &'a F,
    accept: &'a IntervalUnion,
    pairs: &'a [(f64, f64)],
    checked: usize,
    budget: usize,
}

impl<F: MlrFamily + ?Sized> Search<'_, F> {
    fn test(&mut self, event: &IntervalUnion) -> Result<Option<EventWitness>> {
        if event.is_empty() || self.checked >= self.budget {
            return Ok(None);
        }
        self.checked += 1;
        let hit = event.intersect(self.accept);
        for &(theta1, theta0) in self.pairs {
            let c1 = event.probability(self.family, theta1)?;
            let c0 = event.probability(self.family, theta0)?;
            if c1 < MIN_EVENT_PROB || c0 < MIN_EVENT_PROB {
                continue;
            }
            let lhs = (hit.probability(self.family, theta1)? / c1).min(1.0);
            let rhs = (hit.probability(self.family, theta0)? / c0).min(1.0);
            if rhs - lhs > VIOLATION_MARGIN {
                return Ok(Some(EventWitness {
                    event: event.clone(),
                    theta0,
                    theta1,
                    lhs,
                    rhs,
                }));
            }
        }
        Ok(None)
    }
}
