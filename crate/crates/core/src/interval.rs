use std::fmt;

use crate::error::{Error, Result};

/// A real interval with possibly infinite endpoints. Infinite endpoints are
/// always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl ParamInterval {
    pub fn new(lower: f64, upper: f64, lower_closed: bool, upper_closed: bool) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || !(lower < upper) {
            return Err(Error::Parse(format!("empty interval ({lower}, {upper})")));
        }
        if (lower_closed && lower.is_infinite()) || (upper_closed && upper.is_infinite()) {
            return Err(Error::Parse("infinite endpoints must be open".into()));
        }
        Ok(Self {
            lower,
            upper,
            lower_closed,
            upper_closed,
        })
    }

    pub const fn real_line() -> Self {
        Self {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
            lower_closed: false,
            upper_closed: false,
        }
    }

    /// (0, ∞)
    pub const fn positive() -> Self {
        Self {
            lower: 0.0,
            upper: f64::INFINITY,
            lower_closed: false,
            upper_closed: false,
        }
    }

    /// [0, ∞)
    pub const fn nonnegative() -> Self {
        Self {
            lower: 0.0,
            upper: f64::INFINITY,
            lower_closed: true,
            upper_closed: false,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        let above = if self.lower_closed {
            v >= self.lower
        } else {
            v > self.lower
        };
        let below = if self.upper_closed {
            v <= self.upper
        } else {
            v < self.upper
        };
        above && below
    }

    /// Membership in the closure; endpoints of a sample interval are null sets.
    pub fn contains_closure(&self, v: f64) -> bool {
        v >= self.lower && v <= self.upper
    }

    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.lower, self.upper)
    }

    /// A finite point well inside the interval, used to anchor searches.
    pub fn anchor(&self) -> f64 {
        match (self.lower.is_finite(), self.upper.is_finite()) {
            (true, true) => 0.5 * (self.lower + self.upper),
            (true, false) => self.lower + 1.0,
            (false, true) => self.upper - 1.0,
            (false, false) => 0.0,
        }
    }

    /// Parses `(a,b)`, `[a,b]`, `(a,b]`, `[a,b)` with `inf`/`-inf` keywords.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (lc, rest) = match s.chars().next() {
            Some('[') => (true, &s[1..]),
            Some('(') => (false, &s[1..]),
            _ => return Err(Error::Parse(format!("interval '{s}' must start with '(' or '['"))),
        };
        let (uc, body) = match rest.chars().last() {
            Some(']') => (true, &rest[..rest.len() - 1]),
            Some(')') => (false, &rest[..rest.len() - 1]),
            _ => return Err(Error::Parse(format!("interval '{s}' must end with ')' or ']'"))),
        };
        let (a, b) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("interval '{s}' needs two endpoints")))?;
        Self::new(parse_endpoint(a)?, parse_endpoint(b)?, lc, uc)
    }
}

pub(crate) fn parse_endpoint(s: &str) -> Result<f64> {
    match s.trim() {
        "inf" | "+inf" | "∞" => Ok(f64::INFINITY),
        "-inf" | "-∞" => Ok(f64::NEG_INFINITY),
        t => t
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad endpoint '{t}'"))),
    }
}

pub(crate) fn fmt_endpoint(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v}")
    }
}

impl fmt::Display for ParamInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_closed { '[' } else { '(' },
            fmt_endpoint(self.lower),
            fmt_endpoint(self.upper),
            if self.upper_closed { ']' } else { ')' }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let i = ParamInterval::parse("(0, 1]").unwrap();
        assert!(!i.contains(0.0) && i.contains(1.0) && i.contains(0.5));
        assert_eq!(i.to_string(), "(0, 1]");
        let r = ParamInterval::parse("(-inf,inf)").unwrap();
        assert_eq!(r, ParamInterval::real_line());
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(ParamInterval::parse("[-inf,0)").is_err());
        assert!(ParamInterval::parse("(1,1)").is_err());
        assert!(ParamInterval::parse("0,1").is_err());
        assert!(ParamInterval::parse("(a,1)").is_err());
    }
}
