//! Shift certificates: from a single weight α = y − 1, gadgets reaching
//! points with `y₁ ∉ [−1, 1]`, `y₂ ∈ (−1, 1)` and `y₃ < 0`.

use std::fmt;

use crate::rational::{int, pow, rat, Interval, Rational};

use super::compose::Implementation;
use super::sp::SpGadget;
use super::walk::{hyperbola_walk, WalkBase};
use super::GadgetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftRegion {
    /// x < −1, y < −1, q > 5
    BothBelowMinusOne,
    /// −1 ≤ x < 0, y ≤ −3/2, q > 5
    XInMinusOneZero,
    /// x > 1, y < −1
    XAboveOne,
}

impl fmt::Display for ShiftRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShiftRegion::BothBelowMinusOne => "x<-1,y<-1,q>5",
            ShiftRegion::XInMinusOneZero => "-1<=x<0,y<=-3/2,q>5",
            ShiftRegion::XAboveOne => "x>1,y<-1",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ShiftCertificate {
    /// The point requested.
    pub x: Rational,
    pub y: Rational,
    pub q: Rational,
    /// When set, the shifts below are for the dual point `(y, x)`.
    pub dual: bool,
    pub region: ShiftRegion,
    /// Implementations of `y₁`, `y₂`, `y₃` (in weight form) built from
    /// edges of weight `α` of the certified point.
    pub shifts: [Implementation; 3],
}

impl ShiftCertificate {
    /// The point whose weight the gadgets use.
    pub fn base_point(&self) -> (Rational, Rational) {
        if self.dual { (self.y.clone(), self.x.clone()) } else { (self.x.clone(), self.y.clone()) }
    }

    /// Recompute all three y-values and check their ranges exactly.
    pub fn verify(&self) -> Result<bool, GadgetError> {
        let ys: Vec<Rational> = self
            .shifts
            .iter()
            .map(|s| s.gadget.eval(&self.q).map(|v| v.y()))
            .collect::<Result<_, _>>()?;
        let matches = self.shifts.iter().zip(&ys).all(|(s, y)| *y == s.y());
        Ok(matches && (ys[0] < -1 || ys[0] > 1) && ys[1] > -1 && ys[1] < 1 && ys[2] < 0)
    }
}

fn exact(g: SpGadget, q: &Rational) -> Result<Implementation, GadgetError> {
    let w = g.eval(q)?.weight;
    Implementation::new(g, q, w, Interval::point(int(0)))
}

/// Smallest odd (or any, when `odd` is false) k with `q/(x^k − 1) + 1 ∈ (−1, 1)`.
fn stretch_into_unit(q: &Rational, x: &Rational, odd: bool) -> Option<u64> {
    let mut k = 1u64;
    while k < 1 << 16 {
        let d = pow(x, k as i64) - 1u32;
        if d != 0 {
            let y = Rational::from(q / &d) + 1u32;
            if y > -1 && y < 1 {
                return Some(k);
            }
        }
        k += if odd { 2 } else { 1 };
    }
    None
}

fn direct(x: &Rational, y: &Rational) -> Result<Option<(ShiftRegion, [Implementation; 3])>, GadgetError> {
    let q = Rational::from(x - 1u32) * Rational::from(y - 1u32);
    let alpha = Rational::from(y - 1u32);
    let unit = SpGadget::edge(alpha);
    if *x < -1 && *y < -1 && q > 5 {
        let k = stretch_into_unit(&q, x, true).ok_or_else(|| GadgetError::WalkFailed("no odd stretch".into()))?;
        let s = [exact(unit.clone(), &q)?, exact(unit.stretch(k), &q)?, exact(unit, &q)?];
        return Ok(Some((ShiftRegion::BothBelowMinusOne, s)));
    }
    if *x >= -1 && *x < 0 && *y <= rat(-3, 2) && q > 5 {
        let base = WalkBase::from_ys(Some(y.clone()), None, Some(y.clone()));
        let (_, mid) = hyperbola_walk(&q, &base, &rat(-5, 4), &rat(1, 8))?;
        let y_mid = mid.y();
        let x_mid = Rational::from(&q / Rational::from(&y_mid - 1u32)) + 1u32;
        if !(x_mid < -1 && y_mid < -1) {
            return Err(GadgetError::WalkFailed(format!("intermediate point ({x_mid}, {y_mid}) not below −1")));
        }
        let k = stretch_into_unit(&q, &x_mid, true).ok_or_else(|| GadgetError::WalkFailed("no odd stretch".into()))?;
        let s = [exact(unit.clone(), &q)?, exact(mid.gadget.stretch(k), &q)?, exact(unit, &q)?];
        return Ok(Some((ShiftRegion::XInMinusOneZero, s)));
    }
    if *x > 1 && *y < -1 {
        let k = stretch_into_unit(&q, x, false).ok_or_else(|| GadgetError::WalkFailed("no stretch".into()))?;
        let s = [exact(unit.clone(), &q)?, exact(unit.stretch(k), &q)?, exact(unit, &q)?];
        return Ok(Some((ShiftRegion::XAboveOne, s)));
    }
    Ok(None)
}

/// Certificate for `(x, y)`, directly or via the dual point `(y, x)`.
pub fn shift_certificate(x: &Rational, y: &Rational) -> Result<ShiftCertificate, GadgetError> {
    let q = Rational::from(x - 1u32) * Rational::from(y - 1u32);
    if q >= 0 && q <= 5 {
        return Err(GadgetError::NoCertificate(format!("q = {q} lies in [0, 5]")));
    }
    for dual in [false, true] {
        let (a, b) = if dual { (y, x) } else { (x, y) };
        if let Some((region, shifts)) = direct(a, b)? {
            let cert = ShiftCertificate { x: x.clone(), y: y.clone(), q: q.clone(), dual, region, shifts };
            return Ok(cert);
        }
    }
    Err(GadgetError::NoCertificate(format!("({x}, {y}) is outside the certified regions")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_below() {
        let c = shift_certificate(&int(-2), &int(-2)).unwrap();
        assert_eq!(c.q, int(9));
        assert_eq!(c.shifts[1].y(), int(0));
        assert_eq!(c.shifts[1].edge_count(), 3);
        assert!(c.verify().unwrap());
    }

    #[test]
    fn x_above_one_and_dual() {
        let c = shift_certificate(&int(3), &int(-2)).unwrap();
        assert_eq!(c.shifts[1].y(), rat(1, 4));
        assert!(!c.dual && c.verify().unwrap());
        let d = shift_certificate(&int(-2), &int(3)).unwrap();
        assert!(d.dual && d.verify().unwrap());
        assert_eq!(d.shifts[1].y(), rat(1, 4));
    }

    #[test]
    fn x_between_minus_one_and_zero() {
        let c = shift_certificate(&rat(-1, 2), &int(-3)).unwrap();
        assert_eq!(c.region, ShiftRegion::XInMinusOneZero);
        assert!(c.verify().unwrap());
        assert!(c.shifts[1].verify_explicit(200_000).unwrap());
    }

    #[test]
    fn outside() {
        assert!(matches!(shift_certificate(&int(2), &int(2)), Err(GadgetError::NoCertificate(_))));
        assert!(matches!(shift_certificate(&int(-3), &int(0)), Err(GadgetError::NoCertificate(_))));
    }
}
