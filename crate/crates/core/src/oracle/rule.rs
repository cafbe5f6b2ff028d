use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{fmt_endpoint, parse_endpoint, ParamInterval};
use crate::models::{cdf_clipped, sf_clipped, MlrFamily};

/// One piece of an [`IntervalUnion`]. Endpoint inclusion is kept for
/// display only; all probabilities are taken up to null sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Span {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Span {
    pub fn open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed_open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: lo.is_finite(),
            hi_closed: false,
        }
    }

    pub fn open_closed(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_closed: false,
            hi_closed: hi.is_finite(),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            fmt_endpoint(self.lo),
            fmt_endpoint(self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A finite union of disjoint, sorted intervals with positive length.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalUnion {
    spans: Vec<Span>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts, drops null pieces and merges pieces that overlap or touch.
    pub fn new(mut spans: Vec<Span>) -> Result<Self> {
        if spans.iter().any(|s| s.lo.is_nan() || s.hi.is_nan()) {
            return Err(Error::Parse("interval endpoint is NaN".into()));
        }
        spans.retain(|s| s.lo < s.hi);
        spans.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut merged: Vec<Span> = Vec::with_capacity(spans.len());
        for s in spans {
            match merged.last_mut() {
                Some(last) if s.lo <= last.hi => {
                    if s.hi > last.hi {
                        last.hi = s.hi;
                        last.hi_closed = s.hi_closed;
                    } else if s.hi == last.hi {
                        last.hi_closed |= s.hi_closed;
                    }
                }
                _ => merged.push(s),
            }
        }
        Ok(Self { spans: merged })
    }

    pub fn single(span: Span) -> Result<Self> {
        Self::new(vec![span])
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Intersection with [lo, hi] (up to null sets).
    pub fn clip(&self, lo: f64, hi: f64) -> Self {
        let spans = self
            .spans
            .iter()
            .filter_map(|s| {
                let (a, b) = (s.lo.max(lo), s.hi.min(hi));
                (a < b).then_some(Span {
                    lo: a,
                    hi: b,
                    lo_closed: if a == s.lo { s.lo_closed } else { true },
                    hi_closed: if b == s.hi { s.hi_closed } else { true },
                })
            })
            .collect();
        Self { spans }
    }

    /// Complement within [lo, hi].
    pub fn complement_within(&self, lo: f64, hi: f64) -> Self {
        let inside = self.clip(lo, hi);
        let mut out = Vec::new();
        let mut cursor = lo;
        let mut cursor_closed = lo.is_finite();
        for s in &inside.spans {
            if s.lo > cursor {
                out.push(Span {
                    lo: cursor,
                    hi: s.lo,
                    lo_closed: cursor_closed,
                    hi_closed: !s.lo_closed,
                });
            }
            cursor = s.hi;
            cursor_closed = !s.hi_closed;
        }
        if cursor < hi {
            out.push(Span {
                lo: cursor,
                hi,
                lo_closed: cursor_closed,
                hi_closed: hi.is_finite(),
            });
        }
        Self { spans: out }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for s in &self.spans {
            out.extend(other.clip(s.lo, s.hi).spans);
        }
        Self::new(out).expect("endpoints already validated")
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut all = self.spans.clone();
        all.extend_from_slice(&other.spans);
        Self::new(all).expect("endpoints already validated")
    }

    /// Total length (may be infinite).
    pub fn length(&self) -> f64 {
        self.spans.iter().map(|s| s.hi - s.lo).sum()
    }

    /// P_θ(union) as a sum of exact CDF differences; pieces in the upper
    /// tail are differenced on the survival function instead.
    pub fn probability<F: MlrFamily + ?Sized>(&self, family: &F, theta: f64) -> Result<f64> {
        let mut total = 0.0;
        for s in &self.spans {
            let f_lo = cdf_clipped(family, theta, s.lo)?;
            total += if f_lo > 0.5 {
                sf_clipped(family, theta, s.lo)? - sf_clipped(family, theta, s.hi)?
            } else {
                cdf_clipped(family, theta, s.hi)? - f_lo
            };
        }
        Ok(total.max(0.0))
    }

    /// Finite endpoints, in order.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.spans
            .iter()
            .flat_map(|s| [s.lo, s.hi])
            .filter(|v| v.is_finite())
            .collect()
    }

    /// Parses e.g. `(-inf,0)u(1,2]`. Pieces are joined by `u` or `∪`;
    /// `{}` or an empty string is the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "{}" || t == "∅" {
            return Ok(Self::empty());
        }
        let normalized = t.replace(['∪', 'U'], "u");
        let mut spans = Vec::new();
        for piece in normalized.split('u') {
            let piece = piece.trim();
            let lc = match piece.chars().next() {
                Some('[') => true,
                Some('(') => false,
                _ => return Err(Error::Parse(format!("piece '{piece}' must start with '(' or '['"))),
            };
            let hc = match piece.chars().last() {
                Some(']') => true,
                Some(')') => false,
                _ => return Err(Error::Parse(format!("piece '{piece}' must end with ')' or ']'"))),
            };
            let inner = &piece[1..piece.len() - 1];
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("piece '{piece}' needs two endpoints")))?;
            let (lo, hi) = (parse_endpoint(a)?, parse_endpoint(b)?);
            if !(lo <= hi) {
                return Err(Error::Parse(format!("piece '{piece}' has lower end above upper end")));
            }
            spans.push(Span {
                lo,
                hi,
                lo_closed: lc && lo.is_finite(),
                hi_closed: hc && hi.is_finite(),
            });
        }
        Self::new(spans)
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, s) in self.spans.iter().enumerate() {
            if i > 0 {
                write!(f, "u")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A {0,1}-valued rule given by its acceptance set {φ = 1}.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionRule {
    accept_one: IntervalUnion,
}

impl DecisionRule {
    pub fn new(accept_one: IntervalUnion) -> Self {
        Self { accept_one }
    }

    /// f_t = 1 on (−∞, t).
    pub fn threshold(t: f64) -> Self {
        Self::new(IntervalUnion::single(Span::open(f64::NEG_INFINITY, t)).expect("valid span"))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::new(IntervalUnion::parse(text)?))
    }

    pub fn accept_one(&self) -> &IntervalUnion {
        &self.accept_one
    }

    /// Threshold gap on the real line; see [`DecisionRule::threshold_gap_on`].
    pub fn threshold_gap(&self) -> (f64, f64) {
        self.threshold_gap_on(&ParamInterval::real_line())
    }

    /// (t′, t″) with t′ = sup{t : f_t ≤ φ a.e.} and t″ = inf{t : f_t ≥ φ a.e.}
    /// on the sample interval `support`. Both are clamped to the support,
    /// so the empty rule gives (inf I, inf I) and the full rule
    /// (sup I, sup I). The rule is a.e. a threshold rule iff t′ = t″.
    pub fn threshold_gap_on(&self, support: &ParamInterval) -> (f64, f64) {
        let inside = self.accept_one.clip(support.lower, support.upper);
        let spans = inside.spans();
        let t_lower = match spans.first() {
            Some(first) if first.lo <= support.lower => first.hi,
            _ => support.lower,
        };
        let t_upper = spans.last().map_or(support.lower, |last| last.hi);
        (t_lower, t_upper)
    }

    pub fn is_threshold_on(&self, support: &ParamInterval) -> bool {
        let (a, b) = self.threshold_gap_on(support);
        a == b
    }
}

impl fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.accept_one)
    }
}
