//! Implementations of the three reduction weights β, a and b.

use crate::rational::{abs, bisect_increasing, int, min, Interval, Rational};

use super::compose::Implementation;
use super::params::{Case, ParamSet};
use super::walk::{hyperbola_walk, BasePoint, WalkBase};
use super::GadgetError;

/// `f(x) = x³ + 3x²`.
pub fn cubic_f(x: &Rational) -> Rational {
    let x2 = Rational::from(x * x);
    Rational::from(&x2 * x) + x2 * 3u32
}

/// β with `|1 + β| < δ`: the k-thickening of `y′₂ ∈ (−1, 1)` with minimal k.
pub fn implement_beta(q: &Rational, p2: &BasePoint, delta: &Rational) -> Result<Implementation, GadgetError> {
    if !(p2.y > -1 && p2.y < 1) {
        return Err(GadgetError::MissingBase(format!("y′₂ = {} is not in (−1, 1)", p2.y)));
    }
    if *delta <= 0 {
        return Err(GadgetError::Constraint("δ must be positive".into()));
    }
    let ay = abs(&p2.y);
    let mut k = 1u64;
    let mut p = ay.clone();
    while p >= *delta {
        k += 1;
        p *= &ay;
    }
    Implementation::new(p2.gadget.thicken(k), q, int(-1), Interval::ball(&int(0), delta))
}

/// Maximum number of tolerance halvings before giving up on a or b.
const MAX_HALVINGS: u32 = 64;

/// `a` with `q + ε < f(a) ≤ q + 2ε` (plus the range conditions of `params`).
pub fn implement_a(params: &ParamSet, base: &WalkBase) -> Result<Implementation, GadgetError> {
    let q = &params.q;
    let eps = &params.eps;
    let eps2 = Rational::from(eps * eps);
    let width = Rational::from(&eps2 / 4u32);
    let target_a = match params.case {
        Case::Large => {
            let goal = Rational::from(eps * 2u32) + q;
            let (lo, _) = bisect_increasing(cubic_f, Rational::from((1, 2)), q.clone(), &goal, &width);
            lo
        }
        Case::Negative => {
            let goal = Rational::from(q + eps);
            let ys = params.y_star.as_ref().expect("negative case has y*");
            let lo = Rational::from(-&ys.hi) - 4u32;
            let (_, hi) = bisect_increasing(cubic_f, lo, int(-3), &goal, &width);
            hi
        }
    };
    let target_y = Rational::from(&target_a + 1u32);
    let mut pi = min(&eps2, &int(1));
    for _ in 0..MAX_HALVINGS {
        let (_, imp) = hyperbola_walk(q, base, &target_y, &pi)?;
        if params.accepts_a(&imp.effective_weight) {
            return Ok(imp);
        }
        pi /= 2u32;
    }
    Err(GadgetError::WalkFailed("no tolerance produced an acceptable a".into()))
}

/// `b` with `−c − δ ≤ b ≤ −c + δ`, `c = a² + 3a + q`.
pub fn implement_b(q: &Rational, a: &Rational, delta: &Rational, base: &WalkBase) -> Result<Implementation, GadgetError> {
    let c = Rational::from(a * a) + Rational::from(a * 3u32) + q;
    let target_y = Rational::from(1 - c.clone());
    let pi = min(delta, &int(1));
    let (_, imp) = hyperbola_walk(q, base, &target_y, &pi)?;
    let err = Rational::from(&imp.effective_weight + &c);
    if abs(&err) > *delta {
        return Err(GadgetError::WalkFailed(format!("b misses [−c − δ, −c + δ] by {err}")));
    }
    Ok(imp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::param_set_relaxed;
    use crate::rational::rat;

    #[test]
    fn beta_thickening() {
        let imp = implement_beta(&int(6), &BasePoint::edge(rat(1, 2)), &rat(1, 100)).unwrap();
        assert_eq!(imp.effective_weight, rat(-127, 128));
        let imp = implement_beta(&int(6), &BasePoint::edge(int(0)), &rat(1, 100)).unwrap();
        assert_eq!((imp.effective_weight.clone(), imp.edge_count()), (int(-1), 1));
        let imp = implement_beta(&int(6), &BasePoint::edge(rat(-1, 2)), &rat(1, 100)).unwrap();
        assert_eq!(imp.edge_count(), 7);
        assert_eq!(abs(&(imp.effective_weight + 1u32)), rat(1, 128));
    }

    #[test]
    fn a_and_b_large_case() {
        let q = int(6);
        let eps = rat(1, 10);
        let p = param_set_relaxed(&q, 16, 18, 7, eps.clone(), rat(1, 10_000_000)).unwrap();
        let base = WalkBase::from_ys(Some(int(2)), Some(rat(1, 2)), Some(int(-2)));
        let a = implement_a(&p, &base).unwrap().effective_weight.clone();
        assert!(p.accepts_a(&a));
        assert!(a > rat(120, 100) && a < rat(1215, 1000));
        let b = implement_b(&q, &a, &p.delta, &base).unwrap().effective_weight.clone();
        assert!(p.accepts_b(&a, &b));
    }

    #[test]
    fn a_and_b_negative_case() {
        let q = int(-1);
        let p = param_set_relaxed(&q, 16, 18, 7, rat(1, 100), rat(1, 10_000_000)).unwrap();
        let base = WalkBase::from_ys(Some(int(2)), Some(rat(-1, 2)), Some(int(-2)));
        let a = implement_a(&p, &base).unwrap().effective_weight.clone();
        assert!(p.accepts_a(&a));
        assert!(a < -3);
        let b = implement_b(&q, &a, &p.delta, &base).unwrap().effective_weight.clone();
        assert!(p.accepts_b(&a, &b));
    }

    #[test]
    fn f_boundary_is_rejected() {
        let mut p = param_set_relaxed(&int(6), 16, 18, 7, rat(1, 10), rat(1, 10_000_000)).unwrap();
        let a = rat(3, 2);
        // f(a) = q + ε exactly sits on the excluded end.
        p.q = cubic_f(&a) - &p.eps;
        assert!(!p.accepts_a(&a));
        p.q -= rat(1, 1000);
        assert!(p.accepts_a(&a));
    }
}
