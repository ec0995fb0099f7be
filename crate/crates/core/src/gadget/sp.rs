//! Lazily represented series–parallel two-terminal gadgets.
//!
//! Walk gadgets reach 10⁵ edges; the tree shares subtrees and stores
//! repetition counts, so weights are evaluated in closed form and the graph
//! is only built on demand.

use std::sync::Arc;

use crate::graph::{Dart, Rotation, WeightedMultigraph};
use crate::rational::{is_zero, pow, Rational};

use super::GadgetError;

pub const DEFAULT_MATERIALIZE_CAP: u64 = 2_000_000;

#[derive(Clone, Debug)]
pub struct SpGadget(Arc<Node>);

#[derive(Debug)]
enum Node {
    /// `s` and `t` with nothing between them.
    Open,
    Edge(Rational),
    Series(Vec<SpGadget>),
    Parallel(Vec<SpGadget>),
    Stretch(SpGadget, u64),
    Thicken(SpGadget, u64),
}

/// A gadget's behaviour as an edge: `Z_st = scale·q·w`, `Z_s|t = scale·q²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpValue {
    pub weight: Rational,
    pub scale: Rational,
}

impl SpValue {
    pub fn y(&self) -> Rational {
        Rational::from(&self.weight + 1u32)
    }
}

/// An explicit gadget: a plane graph with terminals on a common face.
#[derive(Clone, Debug)]
pub struct TwoTerminalGadget {
    pub graph: WeightedMultigraph,
    pub s: usize,
    pub t: usize,
}

impl SpGadget {
    pub fn open() -> Self {
        SpGadget(Arc::new(Node::Open))
    }

    pub fn edge(w: Rational) -> Self {
        SpGadget(Arc::new(Node::Edge(w)))
    }

    /// Edge whose weight is `y − 1`.
    pub fn edge_y(y: &Rational) -> Self {
        Self::edge(Rational::from(y - 1u32))
    }

    pub fn series(children: Vec<SpGadget>) -> Self {
        match children.len() {
            0 => panic!("series composition needs at least one part"),
            1 => children.into_iter().next().unwrap(),
            _ => SpGadget(Arc::new(Node::Series(children))),
        }
    }

    pub fn parallel(children: Vec<SpGadget>) -> Self {
        let children: Vec<SpGadget> = children.into_iter().filter(|c| !c.is_open()).collect();
        match children.len() {
            0 => Self::open(),
            1 => children.into_iter().next().unwrap(),
            _ => SpGadget(Arc::new(Node::Parallel(children))),
        }
    }

    /// `k` copies in series (k ≥ 1).
    pub fn stretch(&self, k: u64) -> Self {
        assert!(k >= 1, "stretch needs k ≥ 1");
        if k == 1 {
            self.clone()
        } else {
            SpGadget(Arc::new(Node::Stretch(self.clone(), k)))
        }
    }

    /// `k` copies in parallel; `k = 0` is the open gadget.
    pub fn thicken(&self, k: u64) -> Self {
        match k {
            0 => Self::open(),
            1 => self.clone(),
            _ if self.is_open() => Self::open(),
            _ => SpGadget(Arc::new(Node::Thicken(self.clone(), k))),
        }
    }

    pub fn is_open(&self) -> bool {
        matches!(*self.0, Node::Open)
    }

    pub fn edge_count(&self) -> u64 {
        match &*self.0 {
            Node::Open => 0,
            Node::Edge(_) => 1,
            Node::Series(c) | Node::Parallel(c) => c.iter().map(|g| g.edge_count()).fold(0, u64::saturating_add),
            Node::Stretch(c, k) | Node::Thicken(c, k) => c.edge_count().saturating_mul(*k),
        }
    }

    /// Vertices excluding the two terminals.
    pub fn internal_vertex_count(&self) -> u64 {
        match &*self.0 {
            Node::Open | Node::Edge(_) => 0,
            Node::Parallel(c) => c.iter().map(|g| g.internal_vertex_count()).sum(),
            Node::Series(c) => c.iter().map(|g| g.internal_vertex_count()).sum::<u64>() + c.len() as u64 - 1,
            Node::Stretch(c, k) => c.internal_vertex_count() * k + (k - 1),
            Node::Thicken(c, k) => c.internal_vertex_count() * k,
        }
    }

    /// Effective weight and scale in closed form. Parts are combined in
    /// homogeneous form `(Z_st/q, Z_s|t/q²)`, so a part that implements no
    /// finite weight on its own does not poison the whole.
    pub fn eval(&self, q: &Rational) -> Result<SpValue, GadgetError> {
        if is_zero(q) {
            return Err(GadgetError::ZeroQ);
        }
        let (u, v) = self.eval_homogeneous(q);
        if is_zero(&v) {
            return Err(GadgetError::NonImplementing);
        }
        Ok(SpValue { weight: u / &v, scale: v })
    }

    fn eval_homogeneous(&self, q: &Rational) -> (Rational, Rational) {
        let one = || Rational::from(1);
        match &*self.0 {
            Node::Open => (Rational::new(), one()),
            Node::Edge(w) => (w.clone(), one()),
            Node::Parallel(cs) => {
                let (mut t, mut v) = (one(), one());
                for c in cs {
                    let (cu, cv) = c.eval_homogeneous(q);
                    t *= Rational::from(&cu + &cv);
                    v *= cv;
                }
                (t - &v, v)
            }
            Node::Thicken(c, k) => {
                let (cu, cv) = c.eval_homogeneous(q);
                let k = *k as i64;
                let v = pow(&cv, k);
                (pow(&(cu + &cv), k) - &v, v)
            }
            Node::Series(cs) => {
                let (mut p, mut u) = (one(), one());
                for c in cs {
                    let (cu, cv) = c.eval_homogeneous(q);
                    p *= Rational::from(q * &cv) + &cu;
                    u *= cu;
                }
                let v = (p - &u) / q;
                (u, v)
            }
            Node::Stretch(c, k) => {
                let (cu, cv) = c.eval_homogeneous(q);
                let k = *k as i64;
                let u = pow(&cu, k);
                let v = (pow(&(Rational::from(q * &cv) + &cu), k) - &u) / q;
                (u, v)
            }
        }
    }

    /// Build the explicit plane gadget with `s = 0`, `t = 1`.
    pub fn materialize(&self, cap: u64) -> Result<TwoTerminalGadget, GadgetError> {
        let m = self.edge_count();
        if m > cap {
            return Err(GadgetError::Graph(crate::graph::GraphError::CapExceeded {
                what: "gadget edges",
                cap: cap as usize,
                actual: m.min(usize::MAX as u64) as usize,
            }));
        }
        let mut b = Builder { graph: WeightedMultigraph::new(2), rot: vec![Vec::new(), Vec::new()] };
        let (ls, lt) = b.build(self, 0, 1);
        b.rot[0] = ls;
        b.rot[1] = lt.into_iter().rev().collect();
        let graph = b.graph.with_rotation(Rotation { cycles: b.rot })?;
        Ok(TwoTerminalGadget { graph, s: 0, t: 1 })
    }
}

/// Chain with `p = Π(q + wᵢ)`, `w = Π wᵢ`, `s = Π scaleᵢ`:
/// `Z_s|t = s·q·(p − w)` and `Z_st = s·q·w`.
struct Builder {
    graph: WeightedMultigraph,
    rot: Vec<Vec<Dart>>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.rot.push(Vec::new());
        self.graph.add_vertex()
    }

    /// Lay out `g` between existing vertices `s` and `t`, drawn left to right.
    /// Returns the darts at `s` and at `t`, each listed top to bottom.
    fn build(&mut self, g: &SpGadget, s: usize, t: usize) -> (Vec<Dart>, Vec<Dart>) {
        match &*g.0 {
            Node::Open => (Vec::new(), Vec::new()),
            Node::Edge(w) => {
                let e = self.graph.add_edge(s, t, w.clone()).expect("endpoints exist");
                (vec![Dart::new(e, 0)], vec![Dart::new(e, 1)])
            }
            Node::Parallel(cs) => self.parallel(cs.iter().cloned(), s, t),
            Node::Thicken(c, k) => self.parallel(std::iter::repeat(c.clone()).take(*k as usize), s, t),
            Node::Series(cs) => self.series(cs.iter().cloned(), s, t),
            Node::Stretch(c, k) => self.series(std::iter::repeat(c.clone()).take(*k as usize), s, t),
        }
    }

    fn parallel(&mut self, parts: impl Iterator<Item = SpGadget>, s: usize, t: usize) -> (Vec<Dart>, Vec<Dart>) {
        let (mut ls, mut lt) = (Vec::new(), Vec::new());
        for c in parts {
            let (a, b) = self.build(&c, s, t);
            ls.extend(a);
            lt.extend(b);
        }
        (ls, lt)
    }

    fn series(&mut self, parts: impl Iterator<Item = SpGadget>, s: usize, t: usize) -> (Vec<Dart>, Vec<Dart>) {
        let parts: Vec<SpGadget> = parts.collect();
        let mut left = s;
        let mut first_ls = Vec::new();
        let mut prev_lt: Vec<Dart> = Vec::new();
        for (i, c) in parts.iter().enumerate() {
            let right = if i + 1 == parts.len() { t } else { self.vertex() };
            let (ls, lt) = self.build(c, left, right);
            if i == 0 {
                first_ls = ls;
            } else {
                // Clockwise at a junction: right side downwards, then left side upwards.
                let mut r = ls;
                r.extend(prev_lt.iter().rev().copied());
                self.rot[left] = r;
            }
            prev_lt = lt;
            left = right;
        }
        (first_ls, prev_lt)
    }
}

impl TwoTerminalGadget {
    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{euler_check, is_planar};
    use crate::rational::{int, rat};

    #[test]
    fn closed_forms() {
        let q = int(2);
        let e = SpGadget::edge(int(2));
        let s = SpGadget::series(vec![e.clone(), e.clone()]).eval(&q).unwrap();
        assert_eq!(s, SpValue { weight: rat(2, 3), scale: int(6) });
        assert_eq!(e.stretch(2).eval(&q).unwrap(), s);
        let p = SpGadget::edge(int(1)).thicken(3).eval(&q).unwrap();
        assert_eq!(p.weight, int(7));
        assert!(matches!(SpGadget::edge(int(-2)).stretch(2).eval(&int(4)), Err(GadgetError::NonImplementing)));
    }

    #[test]
    fn materialized_layout_is_plane() {
        let e = SpGadget::edge(int(1));
        let g = SpGadget::parallel(vec![
            SpGadget::series(vec![e.thicken(2), e.stretch(3)]),
            e.clone(),
            SpGadget::series(vec![SpGadget::parallel(vec![e.stretch(2), e.clone()]), e.clone()]).thicken(2),
        ]);
        let m = g.materialize(1000).unwrap();
        assert_eq!(m.edge_count() as u64, g.edge_count());
        assert_eq!(m.graph.vertex_count() as u64, g.internal_vertex_count() + 2);
        assert!(euler_check(&m.graph, m.graph.rotation().unwrap()));
        assert!(is_planar(&m.graph));
    }
}
