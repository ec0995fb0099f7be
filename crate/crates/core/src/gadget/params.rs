//! The constants ledger for the MIS reduction, exact or as directed enclosures.

use std::fmt;

use crate::rational::{abs, bisect_increasing, int, max, min, pow, rat, Interval, Rational};

use super::GadgetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// q > 5
    Large,
    /// q < 0
    Negative,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Large => "q>5",
            Case::Negative => "q<0",
        })
    }
}

/// Exact constants are point intervals. For enclosures the safe end is noted
/// per field; every downstream bound uses that end.
#[derive(Clone, Debug)]
pub struct ParamSet {
    pub case: Case,
    pub q: Rational,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub chi: Rational,
    /// Safe end: `lo`.
    pub eta: Interval,
    /// Root of `y(y+3)² = |q|` (negative case only). Safe end: `hi`.
    pub y_star: Option<Interval>,
    /// Safe end: `lo`.
    pub a_minus: Interval,
    /// Safe end: `hi`.
    pub a_plus: Interval,
    pub b_minus: Rational,
    pub b_plus: Rational,
    /// Safe end: `hi`.
    pub a_star: Interval,
    pub big_q: Rational,
    /// Safe end: `hi`.
    pub mu: Interval,
    /// Safe end: `hi`.
    pub tau: Interval,
    /// Safe end: `hi`.
    pub big_m: Interval,
    pub nu: i64,
    pub eps: Rational,
    /// Safe end: `lo`.
    pub big_l: Interval,
    pub big_r: Rational,
    pub delta: Rational,
    /// ε and δ supplied by the caller rather than by the closed formulas.
    pub relaxed: bool,
}

/// Enclosure width for the negative-case algebraic roots.
const ROOT_WIDTH_BITS: u32 = 40;

fn root_enclosure(target: &Rational) -> Interval {
    // y(y+3)² is increasing for y ≥ 0.
    let h = |y: &Rational| {
        let s = Rational::from(y + 3u32);
        Rational::from(y * &s) * s
    };
    let width = Rational::from((1, 1u64 << ROOT_WIDTH_BITS));
    let (lo, hi) = bisect_increasing(h, int(0), Rational::from(target + 1u32), target, &width);
    Interval::new(lo, hi)
}

fn a_star_of(a: &Rational, q: &Rational) -> Rational {
    let a2 = Rational::from(a * a);
    let a3 = Rational::from(&a2 * a);
    let a4 = Rational::from(&a2 * &a2);
    int(1) + a4 * 3u32 + a3 * 9u32 + a2 * 3u32 + Rational::from(a * 3u32) * (abs(q) + 1u32)
}

struct Base {
    case: Case,
    chi: Rational,
    eta: Interval,
    y_star: Option<Interval>,
    a_minus: Interval,
    a_plus: Interval,
    b_minus: Rational,
    b_plus: Rational,
}

fn base(q: &Rational) -> Result<Base, GadgetError> {
    if *q >= 0 && *q <= 5 {
        return Err(GadgetError::QInExcludedRange(q.to_string()));
    }
    if *q > 5 {
        Ok(Base {
            case: Case::Large,
            chi: min(&int(1), &(Rational::from(q - 5u32) / 6u32)),
            eta: Interval::point(rat(3, 4)),
            y_star: None,
            a_minus: Interval::point(rat(1, 2)),
            a_plus: Interval::point(q.clone()),
            b_minus: q.clone(),
            b_plus: pow(q, 3) * 10u32,
        })
    } else {
        let aq = abs(q);
        let eta = root_enclosure(&(Rational::from(&aq / 2u32)));
        let ys = root_enclosure(&aq);
        Ok(Base {
            case: Case::Negative,
            chi: min(&int(1), &aq),
            a_minus: Interval::new(Rational::from(&eta.lo + 3u32), Rational::from(&eta.hi + 3u32)),
            a_plus: Interval::new(Rational::from(&ys.lo + 3u32), Rational::from(&ys.hi + 3u32)),
            eta,
            y_star: Some(ys),
            b_minus: Rational::from(&aq / 3u32),
            b_plus: Rational::from(&aq * 4u32) / 3u32 + 2u32,
        })
    }
}

fn mono(f: impl Fn(&Rational) -> Rational, i: &Interval) -> Interval {
    Interval::new(f(&i.lo), f(&i.hi))
}

fn assemble(q: &Rational, n: usize, m: usize, k: usize, eps: Option<Rational>, delta: Option<Rational>) -> Result<ParamSet, GadgetError> {
    let b = base(q)?;
    if n == 0 || 8 * m != 9 * n {
        return Err(GadgetError::Constraint(format!("expected m = 9n/8, got n = {n}, m = {m}")));
    }
    if k == 0 || 8 * k > 5 * n {
        return Err(GadgetError::Constraint(format!("expected 0 < K ≤ 5n/8, got K = {k}, n = {n}")));
    }
    let nu = 3 * n as i64 - m as i64 - 2 * k as i64;
    if nu < 1 {
        return Err(GadgetError::Constraint(format!("ν = {nu} < 1")));
    }
    let aq = abs(q);
    let big_q = max(&int(1), &aq);
    let a_star = mono(|a| a_star_of(a, q), &b.a_plus);
    let q2 = Rational::from(q * q);
    let mu = mono(|a| Rational::from(&q2 * a) * Rational::from(&b.b_plus * &b.b_plus), &b.a_plus);
    let tau = mono(
        |a| Rational::from(&aq * a) * a * Rational::from(a + 3u32) * pow(&b.b_plus, 3),
        &b.a_plus,
    );
    let big_m = Interval::new(
        max(&int(1), &max(&mu.lo, &tau.lo)),
        max(&int(1), &max(&mu.hi, &tau.hi)),
    );
    let (n_i, m_i) = (n as i64, m as i64);
    let relaxed = eps.is_some();
    let eps = eps.unwrap_or_else(|| {
        pow(&b.b_minus, 3) / 3u32 * pow(&b.chi, nu) * pow(&int(2), -(n_i + 2 * m_i + 4)) * pow(&big_q, -3 * n_i + m_i)
    });
    let q3 = pow(&aq, 3);
    let big_l = mono(|e| Rational::from(&q3 * e) * &eps / 2u32, &b.eta);
    let big_r = pow(&b.b_minus, 3) / (Rational::from(&eps * 3u32));
    let delta = delta.unwrap_or_else(|| {
        let num = pow(&big_l.lo, n_i) * pow(&big_q, -3 * n_i) * pow(&b.chi, nu);
        let den = Rational::from(&a_star.hi * 16u32)
            * pow(&int(3), n_i)
            * pow(&int(2), 6 * n_i)
            * pow(&big_m.hi, n_i)
            * pow(&int(2), 2 * m_i);
        num / den * pow(&aq, 6 * n_i) / pow(&big_q, 6 * n_i)
    });
    let p = ParamSet {
        case: b.case,
        q: q.clone(),
        n,
        m,
        k,
        chi: b.chi,
        eta: b.eta,
        y_star: b.y_star,
        a_minus: b.a_minus,
        a_plus: b.a_plus,
        b_minus: b.b_minus,
        b_plus: b.b_plus,
        a_star,
        big_q,
        mu,
        tau,
        big_m,
        nu,
        eps,
        big_l,
        big_r,
        delta,
        relaxed,
    };
    p.check()?;
    Ok(p)
}

/// Paper-grade constants for an instance with `n` vertices, `m` edges and
/// independent-set size `K`.
pub fn param_set(q: &Rational, n: usize, m: usize, k: usize) -> Result<ParamSet, GadgetError> {
    assemble(q, n, m, k, None, None)
}

/// Caller-chosen ε and δ, subject to `δ ≤ εη/(6A*)` and `0 < δ < ε < χ ≤ 1`.
pub fn param_set_relaxed(q: &Rational, n: usize, m: usize, k: usize, eps: Rational, delta: Rational) -> Result<ParamSet, GadgetError> {
    assemble(q, n, m, k, Some(eps), Some(delta))
}

impl ParamSet {
    /// `εη/(6A*)` at the safe ends.
    pub fn delta_cap(&self) -> Rational {
        Rational::from(&self.eps * &self.eta.lo) / (Rational::from(&self.a_star.hi * 6u32))
    }

    pub fn check(&self) -> Result<(), GadgetError> {
        let fail = |s: String| Err(GadgetError::Constraint(s));
        if self.delta > self.delta_cap() {
            return fail(format!("δ = {} exceeds εη/(6A*) = {}", self.delta, self.delta_cap()));
        }
        if !(self.delta > 0 && self.delta < self.eps && self.eps < self.chi && self.chi <= 1) {
            return fail("0 < δ < ε < χ ≤ 1 fails".into());
        }
        if self.nu < 1 {
            return fail(format!("ν = {} < 1", self.nu));
        }
        // L and R only feed the closed-form δ-bounds; relaxed runs recompute
        // every bound they rely on.
        if !self.relaxed && self.big_l.hi > 1 {
            return fail(format!("L = {} > 1", self.big_l.hi));
        }
        if !self.relaxed && self.big_r < 1 {
            return fail(format!("R = {} < 1", self.big_r));
        }
        Ok(())
    }

    /// `q + ε < f(a) ≤ q + 2ε`, `A⁻ ≤ |a| ≤ A⁺` and `|a²(a+3)| ≥ η`, at the safe ends.
    pub fn accepts_a(&self, a: &Rational) -> bool {
        let f = super::implement::cubic_f(a);
        let lo = Rational::from(&self.q + &self.eps);
        let hi = Rational::from(&self.eps * 2u32) + &self.q;
        let aa = abs(a);
        let g = abs(&(Rational::from(a * a) * Rational::from(a + 3u32)));
        f > lo && f <= hi && aa >= self.a_minus.lo && aa <= self.a_plus.hi && g >= self.eta.lo
    }

    /// `−c − δ ≤ b ≤ −c + δ` and `B⁻ ≤ |b| ≤ B⁺`, with `c = a² + 3a + q`.
    pub fn accepts_b(&self, a: &Rational, b: &Rational) -> bool {
        let c = Rational::from(a * a) + Rational::from(a * 3u32) + &self.q;
        let d = abs(&(Rational::from(b + &c)));
        let ab = abs(b);
        d <= self.delta && ab >= self.b_minus && ab <= self.b_plus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_case_constants() {
        let p = param_set(&int(7), 16, 18, 7).unwrap();
        assert_eq!(p.chi, rat(1, 3));
        assert_eq!(p.eta, Interval::point(rat(3, 4)));
        assert_eq!((p.a_minus.lo.clone(), p.a_plus.hi.clone()), (rat(1, 2), int(7)));
        assert_eq!((p.b_minus.clone(), p.b_plus.clone()), (int(7), int(3430)));
        assert_eq!(p.nu, 16);
        assert!(!p.relaxed);
        assert!(p.delta <= p.delta_cap());
    }

    #[test]
    fn negative_case_enclosures() {
        let p = param_set(&int(-1), 16, 18, 7).unwrap();
        assert!(p.eta.lo > rat(53, 1000) && p.eta.hi < rat(55, 1000));
        let ys = p.y_star.unwrap();
        assert!(ys.lo > rat(103, 1000) && ys.hi < rat(105, 1000));
        assert_eq!((p.b_minus, p.b_plus), (rat(1, 3), rat(10, 3)));
    }

    #[test]
    fn rejections() {
        assert!(matches!(param_set(&int(3), 16, 18, 7), Err(GadgetError::QInExcludedRange(_))));
        assert!(matches!(param_set(&int(6), 16, 18, 11), Err(GadgetError::Constraint(_))));
        let bad = param_set_relaxed(&int(6), 16, 18, 7, rat(1, 10), rat(1, 20));
        assert!(matches!(bad, Err(GadgetError::Constraint(_))));
    }
}
