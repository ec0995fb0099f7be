//! Synthesis of a target y-value to within a tolerance by walking along the
//! hyperbola: stretches of one base point give a decreasing sequence
//! `y_j → 1`, and a greedy product `Π y_j^{d_j}` approaches the target from
//! below.

use crate::rational::{abs, int, is_zero, pow, Interval, Rational};

use super::compose::Implementation;
use super::sp::SpGadget;
use super::GadgetError;

/// A gadget available to the walk, with its y-coordinate.
#[derive(Clone, Debug)]
pub struct BasePoint {
    pub y: Rational,
    pub gadget: SpGadget,
}

impl BasePoint {
    /// A single edge of weight `y − 1`.
    pub fn edge(y: Rational) -> Self {
        let gadget = SpGadget::edge_y(&y);
        BasePoint { y, gadget }
    }

    pub fn from_gadget(gadget: SpGadget, q: &Rational) -> Result<Self, GadgetError> {
        let y = gadget.eval(q)?.y();
        Ok(BasePoint { y, gadget })
    }
}

/// Base points `y′₁` (|y′₁| > 1), `y′₂` (in (−1, 1)) and `y′₃` (< 0).
#[derive(Clone, Debug, Default)]
pub struct WalkBase {
    pub p1: Option<BasePoint>,
    pub p2: Option<BasePoint>,
    pub p3: Option<BasePoint>,
}

impl WalkBase {
    pub fn from_ys(y1: Option<Rational>, y2: Option<Rational>, y3: Option<Rational>) -> Self {
        WalkBase { p1: y1.map(BasePoint::edge), p2: y2.map(BasePoint::edge), p3: y3.map(BasePoint::edge) }
    }
}

/// How a point with `x₁ < −1` was reached when `y′₁² ≥ 1 + |q|/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bootstrap {
    pub xi: Rational,
    pub j: u64,
    pub y_hat: Rational,
    pub k: u64,
}

/// A factor `y_D^r` with `0 < y_D < 1` used to bring sub-unit targets above 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Damper {
    pub y: Rational,
    pub r: u64,
    pub source: &'static str,
}

#[derive(Clone, Debug)]
pub struct WalkPlan {
    pub q: Rational,
    pub target: Rational,
    pub tolerance: Rational,
    /// `y′₃` placed in parallel to reach a negative target.
    pub negated_by: Option<Rational>,
    pub damper: Option<Damper>,
    /// Target and tolerance handed to the greedy walk (> 1 and ≤ 1).
    pub inner_target: Rational,
    pub inner_tolerance: Rational,
    pub x1: Option<Rational>,
    pub y1: Option<Rational>,
    pub bootstrap: Option<Bootstrap>,
    pub m: u64,
    /// Stretch lengths `j` used (all of `1..=m`, or the odd ones when `x₁ < −1`).
    pub steps: Vec<u64>,
    pub digits: Vec<u64>,
    pub y_values: Vec<Rational>,
    /// `Π y_j^{d_j}`.
    pub y_product: Rational,
    pub y: Rational,
    pub edge_count: u64,
}

struct Start {
    gadget: SpGadget,
    x1: Rational,
    y1: Rational,
    bootstrap: Option<Bootstrap>,
}

struct Greedy {
    gadget: SpGadget,
    m: u64,
    steps: Vec<u64>,
    digits: Vec<u64>,
    y_values: Vec<Rational>,
    y_product: Rational,
}

fn x_of(q: &Rational, y: &Rational) -> Rational {
    Rational::from(q / Rational::from(y - 1u32)) + 1u32
}

fn gt_one_abs(y: &Rational) -> bool {
    abs(y) > 1
}

/// Smallest `k ≥ from` (stepping by `step`) with `pred(k)`; `None` past `limit`.
fn first_k(from: u64, step: u64, limit: u64, mut pred: impl FnMut(u64) -> bool) -> Option<u64> {
    let mut k = from;
    while k <= limit {
        if pred(k) {
            return Some(k);
        }
        k += step;
    }
    None
}

/// Largest `d ≥ 0` with `y^d ≤ r`, for `y > 1` and `r ≥ 1`.
fn max_digit(y: &Rational, r: &Rational) -> u64 {
    let mut hi = 1u64;
    while pow(y, hi as i64) <= *r {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // pow(y, lo) ≤ r < pow(y, hi)
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if pow(y, mid as i64) <= *r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

const SEARCH_LIMIT: u64 = 1 << 20;

fn start_point(q: &Rational, base: &WalkBase) -> Result<Start, GadgetError> {
    let p1 = base.p1.as_ref().ok_or_else(|| GadgetError::MissingBase("y′₁ with |y′₁| > 1".into()))?;
    if !gt_one_abs(&p1.y) {
        return Err(GadgetError::MissingBase(format!("|y′₁| = |{}| must exceed 1", p1.y)));
    }
    let sq = Rational::from(&p1.y * &p1.y);
    let thick = p1.gadget.thicken(2);
    if *q > 0 {
        let x1 = x_of(q, &sq);
        return Ok(Start { gadget: thick, x1, y1: sq, bootstrap: None });
    }
    let half = Rational::from(abs(q) / 2u32) + 1u32; // 1 + |q|/2
    if sq < half {
        let x1 = x_of(q, &sq);
        return Ok(Start { gadget: thick, x1, y1: sq, bootstrap: None });
    }
    let p2 = base
        .p2
        .as_ref()
        .ok_or_else(|| GadgetError::Bootstrap("y′₁² ≥ 1 + |q|/2 and no y′₂ in (−1, 1) supplied".into()))?;
    if !(p2.y > -1 && p2.y < 1) {
        return Err(GadgetError::Bootstrap(format!("y′₂ = {} is not in (−1, 1)", p2.y)));
    }
    let xi = Rational::from(abs(q) / 2u32) / &half;
    let x2 = x_of(q, &p2.y);
    let bound = abs(q) + 3u32;
    let j = first_k(1, 1, SEARCH_LIMIT, |j| pow(&x2, j as i64) > bound)
        .ok_or_else(|| GadgetError::Bootstrap("no stretch of y′₂ lands in (1 − ξ, 1)".into()))?;
    let y_hat = Rational::from(q / (pow(&x2, j as i64) - 1u32)) + 1u32;
    let k = first_k(1, 1, SEARCH_LIMIT, |k| pow(&y_hat, k as i64) * &sq < half)
        .ok_or_else(|| GadgetError::Bootstrap("no thickening brings y₁ below 1 + |q|/2".into()))?;
    let y1 = pow(&y_hat, k as i64) * &sq;
    let x1 = x_of(q, &y1);
    if x1 >= -1 {
        return Err(GadgetError::Bootstrap(format!("x₁ = {x1} is not below −1")));
    }
    let gadget = SpGadget::parallel(vec![thick, p2.gadget.stretch(j).thicken(k)]);
    Ok(Start { gadget, x1, y1, bootstrap: Some(Bootstrap { xi, j, y_hat, k }) })
}

fn greedy(q: &Rational, start: &Start, t: &Rational, tol: &Rational) -> Result<Greedy, GadgetError> {
    let odd = start.x1 < 0;
    let m = if odd {
        let need = Rational::from(abs(q) * t) / tol;
        let ax = abs(&start.x1);
        first_k(1, 2, SEARCH_LIMIT, |m| pow(&ax, m as i64) >= need)
    } else {
        let need = Rational::from(q * t) / tol + 1u32;
        first_k(1, 1, SEARCH_LIMIT, |m| pow(&start.x1, m as i64) >= need)
    }
    .ok_or_else(|| GadgetError::WalkFailed("walk length m out of range".into()))?;
    let step = if odd { 2 } else { 1 };
    let mut remaining = t.clone();
    let mut y_product = int(1);
    let (mut steps, mut digits, mut y_values, mut parts) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut x_pow = start.x1.clone();
    let x_step = if odd { Rational::from(&start.x1 * &start.x1) } else { start.x1.clone() };
    let mut j = 1;
    while j <= m {
        let yj = Rational::from(q / Rational::from(&x_pow - 1u32)) + 1u32;
        let d = max_digit(&yj, &remaining);
        if d > 0 {
            let f = pow(&yj, d as i64);
            remaining /= &f;
            y_product *= f;
            parts.push(start.gadget.stretch(j).thicken(d));
        }
        steps.push(j);
        digits.push(d);
        y_values.push(yj);
        x_pow *= &x_step;
        j += step;
    }
    Ok(Greedy { gadget: SpGadget::parallel(parts), m, steps, digits, y_values, y_product })
}

/// Damper point `0 < y_D < 1`: from `y′₂` (squared if negative), else a
/// long stretch of the start point in series with `y′₃` when `x′₃ < 0`.
fn damper(q: &Rational, base: &WalkBase, start: Option<&Start>) -> Result<(SpGadget, Rational, &'static str), GadgetError> {
    if let Some(p2) = &base.p2 {
        if p2.y > 0 && p2.y < 1 {
            return Ok((p2.gadget.clone(), p2.y.clone(), "y′₂"));
        }
        if p2.y < 0 && p2.y > -1 {
            return Ok((p2.gadget.thicken(2), Rational::from(&p2.y * &p2.y), "y′₂ squared"));
        }
    }
    if let (Some(p3), Some(st)) = (&base.p3, start) {
        if *q > 0 && st.x1 > 1 && p3.y != 1 {
            let x3 = x_of(q, &p3.y);
            if x3 < 0 {
                let bound = Rational::from(1 - q.clone());
                let k = first_k(1, 1, SEARCH_LIMIT, |k| pow(&st.x1, k as i64) * &x3 < bound)
                    .ok_or_else(|| GadgetError::WalkFailed("damper stretch out of range".into()))?;
                let x = pow(&st.x1, k as i64) * &x3;
                let y = Rational::from(q / (x - 1u32)) + 1u32;
                let g = SpGadget::series(vec![st.gadget.stretch(k), p3.gadget.clone()]);
                return Ok((g, y, "stretch in series with y′₃"));
            }
        }
    }
    Err(GadgetError::MissingBase("a point with 0 < y < 1 (needs y′₂ ∈ (−1, 1) or x′₃ < 0 with q > 0)".into()))
}

/// Implement `y ∈ [T − π, T]` for `T > 0`, or `y ∈ [T, T + π]` for `T < 0`
/// (negative targets use `y′₃` in parallel). `0 < π ≤ 1`.
pub fn hyperbola_walk(q: &Rational, base: &WalkBase, target: &Rational, tol: &Rational) -> Result<(WalkPlan, Implementation), GadgetError> {
    if is_zero(q) {
        return Err(GadgetError::ZeroQ);
    }
    if !(*tol > 0 && *tol <= 1) {
        return Err(GadgetError::BadTolerance);
    }
    if is_zero(target) {
        return Err(GadgetError::ZeroTarget);
    }
    let (mut t, mut pi, negated_by, outer) = if *target > 0 {
        (target.clone(), tol.clone(), None, None)
    } else {
        let p3 = base.p3.as_ref().ok_or_else(|| GadgetError::MissingBase("y′₃ < 0 for a negative target".into()))?;
        if p3.y >= 0 {
            return Err(GadgetError::MissingBase(format!("y′₃ = {} must be negative", p3.y)));
        }
        let a3 = abs(&p3.y);
        (Rational::from(abs(target) / &a3), Rational::from(tol / &a3), Some(p3.y.clone()), Some(p3.gadget.clone()))
    };
    if pi > 1 {
        pi = int(1);
    }

    let start = if t == 1 { None } else { Some(start_point(q, base)) };
    let mut damper_info = None;
    let mut damper_gadget = None;
    if t < 1 {
        let st = start.as_ref().and_then(|s| s.as_ref().ok());
        let (g, yd, source) = damper(q, base, st)?;
        let r = first_k(1, 1, SEARCH_LIMIT, |r| pow(&yd, r as i64) < t)
            .ok_or_else(|| GadgetError::WalkFailed("damper power out of range".into()))?;
        let f = pow(&yd, r as i64);
        t /= &f;
        pi /= &f;
        if pi > 1 {
            pi = int(1);
        }
        damper_gadget = Some(g.thicken(r));
        damper_info = Some(Damper { y: yd, r, source });
    }

    let mut plan = WalkPlan {
        q: q.clone(),
        target: target.clone(),
        tolerance: tol.clone(),
        negated_by,
        damper: damper_info,
        inner_target: t.clone(),
        inner_tolerance: pi.clone(),
        x1: None,
        y1: None,
        bootstrap: None,
        m: 0,
        steps: Vec::new(),
        digits: Vec::new(),
        y_values: Vec::new(),
        y_product: int(1),
        y: int(1),
        edge_count: 0,
    };
    let inner = if t == 1 {
        SpGadget::open()
    } else {
        let st = start.expect("start computed when t ≠ 1")?;
        let gr = greedy(q, &st, &t, &pi)?;
        plan.x1 = Some(st.x1.clone());
        plan.y1 = Some(st.y1.clone());
        plan.bootstrap = st.bootstrap.clone();
        plan.m = gr.m;
        plan.steps = gr.steps;
        plan.digits = gr.digits;
        plan.y_values = gr.y_values;
        plan.y_product = gr.y_product;
        gr.gadget
    };
    let mut parts = vec![inner];
    parts.extend(damper_gadget);
    parts.extend(outer);
    let gadget = SpGadget::parallel(parts);

    let target_w = Rational::from(target - 1u32);
    let window = if *target > 0 {
        Interval::new(-tol.clone(), int(0))
    } else {
        Interval::new(int(0), tol.clone())
    };
    let imp = Implementation::new(gadget, q, target_w, window)?;
    plan.y = imp.y();
    plan.edge_count = imp.edge_count();
    Ok((plan, imp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn base6() -> WalkBase {
        WalkBase::from_ys(Some(int(2)), None, Some(int(-2)))
    }

    #[test]
    fn q6_positive_target() {
        let (plan, imp) = hyperbola_walk(&int(6), &base6(), &int(5), &rat(1, 10)).unwrap();
        assert_eq!(plan.m, 6);
        assert_eq!(plan.digits, vec![1, 0, 1, 0, 0, 1]);
        assert_eq!((plan.x1.unwrap(), plan.y1.unwrap()), (int(3), int(4)));
        assert!(imp.y() >= rat(49, 10) && imp.y() <= 5);
        assert!(imp.verify_explicit(10_000).unwrap());
    }

    #[test]
    fn q6_negative_target() {
        let (plan, imp) = hyperbola_walk(&int(6), &base6(), &int(-5), &rat(1, 10)).unwrap();
        assert_eq!(plan.inner_target, rat(5, 2));
        assert!(imp.y() >= -5 && imp.y() <= rat(-49, 10));
    }

    #[test]
    fn negative_target_below_base_uses_damper() {
        let (plan, imp) = hyperbola_walk(&int(6), &base6(), &rat(-3, 2), &rat(1, 100)).unwrap();
        assert!(plan.damper.is_some());
        assert!(imp.y() >= rat(-3, 2) && imp.y() <= rat(-149, 100));
        assert!(imp.verify_explicit(100_000).unwrap());
    }

    #[test]
    fn q_minus_one_bootstrap() {
        let base = WalkBase::from_ys(Some(int(2)), Some(rat(-1, 2)), Some(int(-2)));
        let (plan, imp) = hyperbola_walk(&int(-1), &base, &int(5), &rat(1, 100)).unwrap();
        let b = plan.bootstrap.unwrap();
        assert_eq!((b.xi, b.j, b.y_hat, b.k), (rat(1, 3), 3, rat(71, 98), 4));
        assert!(plan.x1.unwrap() < -1);
        assert!(plan.steps.iter().all(|j| j % 2 == 1));
        assert!(imp.y() >= rat(499, 100) && imp.y() <= 5);
    }

    #[test]
    fn unit_target_is_open() {
        let (_, imp) = hyperbola_walk(&int(6), &base6(), &int(1), &rat(1, 2)).unwrap();
        assert!(imp.gadget.is_open());
    }

    #[test]
    fn errors() {
        assert_eq!(hyperbola_walk(&int(6), &base6(), &int(5), &int(2)).unwrap_err(), GadgetError::BadTolerance);
        assert_eq!(hyperbola_walk(&int(6), &base6(), &int(0), &int(1)).unwrap_err(), GadgetError::ZeroTarget);
        let no3 = WalkBase::from_ys(Some(int(2)), None, None);
        assert!(matches!(hyperbola_walk(&int(6), &no3, &int(-5), &int(1)), Err(GadgetError::MissingBase(_))));
        let boot = WalkBase::from_ys(Some(int(2)), None, None);
        assert!(matches!(hyperbola_walk(&int(-1), &boot, &int(5), &int(1)), Err(GadgetError::Bootstrap(_))));
    }
}
