//! Two-terminal calculus: composition closed forms, effective weights and
//! edge substitution with scale tracking.

use crate::graph::{Dart, Rotation, WeightedMultigraph};
use crate::rational::{is_zero, pow, Interval, Rational};
use crate::tutte::z_terminal_partitions;

use super::sp::{SpGadget, TwoTerminalGadget, DEFAULT_MATERIALIZE_CAP};
use super::GadgetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    Parallel,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repetition {
    Thicken,
    Stretch,
}

/// A point on the hyperbola `(x−1)(y−1) = q`, with `α = y − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftPoint {
    pub x: Rational,
    pub y: Rational,
    pub q: Rational,
    pub alpha: Rational,
}

impl ShiftPoint {
    pub fn from_xy(x: Rational, y: Rational) -> Self {
        let q = Rational::from(&x - 1u32) * Rational::from(&y - 1u32);
        let alpha = Rational::from(&y - 1u32);
        ShiftPoint { x, y, q, alpha }
    }

    /// Requires `α ≠ 0` so that `x = q/α + 1` is defined.
    pub fn from_q_alpha(q: Rational, alpha: Rational) -> Result<Self, GadgetError> {
        if is_zero(&alpha) {
            return Err(GadgetError::Constraint("α = 0 has no x-coordinate".into()));
        }
        let x = Rational::from(&q / &alpha) + 1u32;
        let y = Rational::from(&alpha + 1u32);
        Ok(ShiftPoint { x, y, q, alpha })
    }

    pub fn is_consistent(&self) -> bool {
        self.alpha == Rational::from(&self.y - 1u32)
            && self.q == Rational::from(&self.x - 1u32) * Rational::from(&self.y - 1u32)
    }
}

/// Two weights composed in parallel or series: `(w*, scale)`.
pub fn parallel_series_weight(kind: Composition, w1: &Rational, w2: &Rational, q: &Rational) -> Result<(Rational, Rational), GadgetError> {
    match kind {
        Composition::Parallel => {
            let w = Rational::from(w1 + 1u32) * Rational::from(w2 + 1u32) - 1u32;
            Ok((w, Rational::from(1)))
        }
        Composition::Series => {
            let s = Rational::from(q + w1) + w2;
            if is_zero(&s) {
                return Err(GadgetError::DegenerateSeries);
            }
            Ok((Rational::from(w1 * w2) / &s, s))
        }
    }
}

/// k-thickening (`y′ = y^k`) or k-stretch (`x′ = x^k`) of weight `α`.
/// Returns `α′` and the shifted point `(x′, y′)`; `x′` is `None` when `α′ = 0`.
pub fn thicken_stretch_weight(kind: Repetition, alpha: &Rational, q: &Rational, k: u64) -> Result<(Rational, (Option<Rational>, Rational)), GadgetError> {
    if k == 0 {
        return Err(GadgetError::BadMultiplicity);
    }
    let a = match kind {
        Repetition::Thicken => pow(&Rational::from(alpha + 1u32), k as i64) - 1u32,
        Repetition::Stretch => {
            if is_zero(alpha) || is_zero(q) {
                return Err(GadgetError::DegenerateStretch);
            }
            let x = Rational::from(q / alpha) + 1u32;
            let d = pow(&x, k as i64) - 1u32;
            if is_zero(&d) {
                return Err(GadgetError::DegenerateStretch);
            }
            Rational::from(q / &d)
        }
    };
    let y = Rational::from(&a + 1u32);
    let x = if is_zero(&a) { None } else { Some(Rational::from(q / &a) + 1u32) };
    Ok((a, (x, y)))
}

/// `w* = q·Z_st/Z_s|t` and `scale = Z_s|t/q²`, from the terminal-partition split.
pub fn effective_weight(gadget: &TwoTerminalGadget, q: &Rational) -> Result<(Rational, Rational), GadgetError> {
    if is_zero(q) {
        return Err(GadgetError::ZeroQ);
    }
    let table = z_terminal_partitions(&gadget.graph, q, &[gadget.s, gadget.t])?;
    let z_st = table.by_name("01");
    let z_sep = table.by_name("0|1");
    if is_zero(&z_sep) {
        return Err(GadgetError::NonImplementing);
    }
    let w = Rational::from(q * &z_st) / &z_sep;
    let scale = z_sep / Rational::from(q * q);
    Ok((w, scale))
}

/// A gadget together with what it implements at a given q.
#[derive(Clone, Debug)]
pub struct Implementation {
    pub gadget: SpGadget,
    pub q: Rational,
    pub effective_weight: Rational,
    pub scale: Rational,
    /// Target weight (not y-coordinate).
    pub target: Rational,
    /// Guaranteed window for `effective_weight − target`.
    pub error_interval: Interval,
}

impl Implementation {
    /// Evaluate `gadget` in closed form; `window` bounds `w* − target`.
    pub fn new(gadget: SpGadget, q: &Rational, target: Rational, window: Interval) -> Result<Self, GadgetError> {
        let v = gadget.eval(q)?;
        let diff = Rational::from(&v.weight - &target);
        if !window.contains(&diff) {
            return Err(GadgetError::WalkFailed(format!("weight misses target window {window}")));
        }
        Ok(Implementation { gadget, q: q.clone(), effective_weight: v.weight, scale: v.scale, target, error_interval: window })
    }

    pub fn y(&self) -> Rational {
        Rational::from(&self.effective_weight + 1u32)
    }

    pub fn edge_count(&self) -> u64 {
        self.gadget.edge_count()
    }

    /// Recompute `(w*, scale)` on the explicit graph and compare.
    pub fn verify_explicit(&self, cap: u64) -> Result<bool, GadgetError> {
        let g = self.gadget.materialize(cap)?;
        let (w, s) = effective_weight(&g, &self.q)?;
        Ok(w == self.effective_weight && s == self.scale)
    }
}

/// Replace edges of `g` by gadgets (`s` ↦ tail, `t` ↦ head). Unreplaced edges
/// keep their relative order and come first; gadget edges follow. When `g`
/// carries a rotation, each gadget's terminal rotations are spliced in place
/// of the replaced edge-ends, so a plane host stays plane.
pub fn splice_gadgets(g: &WeightedMultigraph, gadgets: &[Option<&TwoTerminalGadget>]) -> Result<WeightedMultigraph, GadgetError> {
    assert_eq!(gadgets.len(), g.edge_count());
    let mut out = WeightedMultigraph::new(g.vertex_count());
    let mut new_id = vec![usize::MAX; g.edge_count()];
    for (i, e) in g.edges().iter().enumerate() {
        if gadgets[i].is_none() {
            new_id[i] = out.add_edge(e.u, e.v, e.weight.clone())?;
        }
    }
    let mut extra_rot: Vec<Vec<Dart>> = Vec::new();
    // For each replaced edge: darts at the tail side and at the head side.
    let mut ends: Vec<Option<(Vec<Dart>, Vec<Dart>)>> = vec![None; g.edge_count()];
    for (i, gad) in gadgets.iter().enumerate() {
        let Some(gad) = gad else { continue };
        let e = g.edge(i);
        let gv = gad.graph.vertex_count();
        let mut map = vec![usize::MAX; gv];
        map[gad.s] = e.u;
        map[gad.t] = e.v;
        for (v, slot) in map.iter_mut().enumerate() {
            if v != gad.s && v != gad.t {
                *slot = out.add_vertex();
            }
        }
        let base = out.edge_count();
        for ge in gad.graph.edges() {
            out.add_edge(map[ge.u], map[ge.v], ge.weight.clone())?;
        }
        if let Some(rot) = gad.graph.rotation() {
            let shift = |d: &Dart| Dart::new(d.edge + base, d.side);
            for (v, cyc) in rot.cycles.iter().enumerate() {
                if v != gad.s && v != gad.t {
                    extra_rot.push(cyc.iter().map(shift).collect());
                }
            }
            ends[i] = Some((rot.cycles[gad.s].iter().map(shift).collect(), rot.cycles[gad.t].iter().map(shift).collect()));
        }
    }
    let Some(rot) = g.rotation() else { return Ok(out) };
    if gadgets.iter().flatten().any(|gd| gd.graph.rotation().is_none()) {
        return Ok(out);
    }
    let mut cycles: Vec<Vec<Dart>> = rot
        .cycles
        .iter()
        .map(|cyc| {
            let mut c = Vec::new();
            for d in cyc {
                match &ends[d.edge] {
                    None => c.push(Dart::new(new_id[d.edge], d.side)),
                    Some((at_s, at_t)) => c.extend(if d.side == 0 { at_s.iter() } else { at_t.iter() }.copied()),
                }
            }
            c
        })
        .collect();
    cycles.extend(extra_rot);
    Ok(out.with_rotation(Rotation { cycles })?)
}

/// Replace edge `f` by the implementation's gadget. Returns `g′` and `scale`
/// with `Z(g′) = scale · Z(g with w(f) = w*)`.
pub fn substitute_edge(g: &WeightedMultigraph, f: usize, imp: &Implementation) -> Result<(WeightedMultigraph, Rational), GadgetError> {
    if f >= g.edge_count() {
        return Err(GadgetError::MissingEdge(f));
    }
    let gad = imp.gadget.materialize(DEFAULT_MATERIALIZE_CAP)?;
    let mut slots: Vec<Option<&TwoTerminalGadget>> = vec![None; g.edge_count()];
    slots[f] = Some(&gad);
    Ok((splice_gadgets(g, &slots)?, imp.scale.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{euler_check, planarity_embed};
    use crate::rational::{int, rat};
    use crate::tutte::z_bruteforce;

    #[test]
    fn pair_closed_forms() {
        assert_eq!(parallel_series_weight(Composition::Parallel, &int(1), &int(1), &int(5)).unwrap(), (int(3), int(1)));
        assert_eq!(parallel_series_weight(Composition::Series, &int(2), &int(2), &int(2)).unwrap(), (rat(2, 3), int(6)));
        assert_eq!(parallel_series_weight(Composition::Series, &int(-2), &int(-2), &int(4)), Err(GadgetError::DegenerateSeries));
    }

    #[test]
    fn repetition_closed_forms() {
        assert_eq!(thicken_stretch_weight(Repetition::Thicken, &int(1), &int(3), 3).unwrap().0, int(7));
        let (a, (x, _)) = thicken_stretch_weight(Repetition::Stretch, &int(2), &int(2), 2).unwrap();
        assert_eq!((a, x), (rat(2, 3), Some(int(4))));
        assert_eq!(thicken_stretch_weight(Repetition::Thicken, &rat(-1, 2), &int(3), 7).unwrap().0, rat(-127, 128));
    }

    #[test]
    fn explicit_effective_weights() {
        let q = int(2);
        let par = SpGadget::edge(int(1)).thicken(2).materialize(10).unwrap();
        assert_eq!(effective_weight(&par, &q).unwrap(), (int(3), int(1)));
        let ser = SpGadget::edge(int(2)).stretch(2).materialize(10).unwrap();
        assert_eq!(effective_weight(&ser, &q).unwrap(), (rat(2, 3), int(6)));
    }

    #[test]
    fn substitution_scales() {
        let q = int(2);
        let g = WeightedMultigraph::uniform(2, &[(0, 1)], &rat(2, 3)).unwrap();
        let g = g.clone().with_rotation(planarity_embed(&g).unwrap()).unwrap();
        let imp = Implementation::new(SpGadget::edge(int(2)).stretch(2), &q, rat(2, 3), Interval::point(int(0))).unwrap();
        let (g2, s) = substitute_edge(&g, 0, &imp).unwrap();
        assert_eq!(z_bruteforce(&g2, &q).unwrap(), int(32));
        assert_eq!(s * z_bruteforce(&g, &q).unwrap(), int(32));
    }

    #[test]
    fn splice_keeps_planarity() {
        let k4 = WeightedMultigraph::complete(4, &int(1));
        let k4 = k4.clone().with_rotation(planarity_embed(&k4).unwrap()).unwrap();
        let e = SpGadget::edge(int(1));
        let gad = SpGadget::parallel(vec![e.stretch(2), SpGadget::series(vec![e.thicken(2), e.clone()])])
            .materialize(100)
            .unwrap();
        let slots: Vec<Option<&TwoTerminalGadget>> = vec![Some(&gad); 6];
        let out = splice_gadgets(&k4, &slots).unwrap();
        assert!(euler_check(&out, out.rotation().unwrap()));
    }
}
