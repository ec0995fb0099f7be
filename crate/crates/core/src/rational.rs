//! Exact rationals (GMP-backed) plus the small helpers the rest of the crate
//! leans on: `p/q` text form, integer powers, monotone bisection and closed
//! intervals.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use thiserror::Error;

pub type Rational = rug::Rational;
pub use rug::Integer;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

/// Parse `p/q` (or a bare integer). Leading `+` is rejected, whitespace is not trimmed.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let bad = || RationalParseError::Malformed(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str, signed: bool| {
        let t = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) || !digits(den, false) {
        return Err(bad());
    }
    let n: Integer = num.parse().map_err(|_| bad())?;
    let d: Integer = den.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(RationalParseError::ZeroDenominator);
    }
    Ok(Rational::from((n, d)))
}

/// Canonical `p/q` form, always with an explicit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::from((n, d))
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// `r^e` for any integer exponent (panics on `0^negative`).
pub fn pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        let e = u32::try_from(e).expect("exponent too large");
        r.clone().pow(e)
    } else {
        let e = u32::try_from(-e).expect("exponent too large");
        r.clone().recip().pow(e)
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.clone().abs()
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b { a.clone() } else { b.clone() }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b { a.clone() } else { b.clone() }
}

pub fn is_zero(r: &Rational) -> bool {
    r.cmp0() == Ordering::Equal
}

/// Rough magnitude in bits, for diagnostics only.
pub fn log2_approx(r: &Rational) -> f64 {
    if is_zero(r) {
        return f64::NEG_INFINITY;
    }
    let n = r.numer().clone().abs();
    let d = r.denom();
    let sig = |x: &Integer| {
        let bits = x.significant_bits() as i64;
        let shift = (bits - 60).max(0);
        let top = Integer::from(x >> shift as u32).to_f64();
        top.log2() + shift as f64
    };
    sig(&n) - sig(d)
}

/// Bracket the root of `f(t) = target` for `f` non-decreasing on `[lo, hi]`.
///
/// Returns `(l, h)` with `f(l) <= target < f(h)` and `h - l < width`. Requires
/// `f(lo) <= target < f(hi)` on entry.
pub fn bisect_increasing<F>(f: F, lo: Rational, hi: Rational, target: &Rational, width: &Rational) -> (Rational, Rational)
where
    F: Fn(&Rational) -> Rational,
{
    assert!(f(&lo) <= *target && f(&hi) > *target, "root not bracketed");
    let (mut l, mut h) = (lo, hi);
    while Rational::from(&h - &l) >= *width {
        let mid = Rational::from(&l + &h) / 2u32;
        if f(&mid) <= *target {
            l = mid;
        } else {
            h = mid;
        }
    }
    (l, h)
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    /// `[c - r, c + r]`.
    pub fn ball(c: &Rational, r: &Rational) -> Self {
        Interval::new(Rational::from(c - r), Rational::from(c + r))
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Smallest |v| over the interval.
    pub fn min_abs(&self) -> Rational {
        if self.lo.cmp0() != Ordering::Greater && self.hi.cmp0() != Ordering::Less {
            Rational::new()
        } else {
            min(&abs(&self.lo), &abs(&self.hi))
        }
    }

    /// Largest |v| over the interval.
    pub fn max_abs(&self) -> Rational {
        max(&abs(&self.lo), &abs(&self.hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.lo), fmt_rational(&self.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(fmt_rational(&parse_rational("-6/4").unwrap()), "-3/2");
        assert_eq!(fmt_rational(&int(3)), "3/1");
        assert_eq!(parse_rational("4/0"), Err(RationalParseError::ZeroDenominator));
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow(&rat(-5, 1), 0), int(1));
    }

    #[test]
    fn bisection_brackets() {
        let f = |t: &Rational| Rational::from(t * t);
        let (l, h) = bisect_increasing(f, int(0), int(2), &int(2), &rat(1, 1 << 20));
        assert!(Rational::from(&l * &l) <= 2);
        assert!(Rational::from(&h * &h) > 2);
    }

    #[test]
    fn interval_abs() {
        let i = Interval::new(rat(-1, 2), rat(1, 3));
        assert_eq!(i.min_abs(), int(0));
        assert_eq!(i.max_abs(), rat(1, 2));
        assert_eq!(Interval::new(int(-3), int(-2)).min_abs(), int(2));
    }
}
