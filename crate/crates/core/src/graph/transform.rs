//! Cubicization by T-gadget padding, and 3-stretching.

use super::{planarity_embed, Dart, GraphError, Rotation, WeightedMultigraph};
use crate::rational::Rational;

/// Edges of the T-gadget on local vertices `r=0, v=1, a=2, b=3, c=4, d=5`.
pub const T_GADGET_EDGES: [(usize, usize); 8] = [(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)];

/// The T-gadget alone (degree sequence 1,3,3,3,3,3), unit weights.
pub fn t_gadget() -> WeightedMultigraph {
    WeightedMultigraph::uniform(6, &T_GADGET_EDGES, &Rational::from(1)).expect("valid gadget")
}

/// Result of [`three_stretch`]: `origin[e']` is the source edge of new edge `e'`.
#[derive(Clone, Debug)]
pub struct Stretched {
    pub graph: WeightedMultigraph,
    pub origin: Vec<usize>,
}

/// Result of [`cubicize`]; `attachments` lists `(host vertex, first new vertex)`
/// per T copy, the copy occupying five consecutive vertices.
#[derive(Clone, Debug)]
pub struct Cubicized {
    pub graph: WeightedMultigraph,
    pub mis_offset: usize,
    pub attachments: Vec<(usize, usize)>,
}

/// 3-stretch of a cubic graph. Edge `e = (u, v)` becomes the path
/// `u — n+2e — n+2e+1 — v` with edge ids `3e, 3e+1, 3e+2`.
pub fn three_stretch(h: &WeightedMultigraph) -> Result<Stretched, GraphError> {
    for (v, &d) in h.degrees().iter().enumerate() {
        if d != 3 {
            return Err(GraphError::NotCubic { vertex: v, degree: d });
        }
    }
    Ok(three_stretch_any(h))
}

/// 3-stretch without the cubic precondition.
pub fn three_stretch_any(h: &WeightedMultigraph) -> Stretched {
    let n = h.vertex_count();
    let m = h.edge_count();
    let mut g = WeightedMultigraph::new(n + 2 * m);
    let mut origin = Vec::with_capacity(3 * m);
    for (i, e) in h.edges().iter().enumerate() {
        let (p, q) = (n + 2 * i, n + 2 * i + 1);
        for (a, b) in [(e.u, p), (p, q), (q, e.v)] {
            g.add_edge(a, b, e.weight.clone()).expect("in range");
            origin.push(i);
        }
    }
    if let Some(rot) = h.rotation() {
        let mut cycles: Vec<Vec<Dart>> = rot
            .cycles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|d| if d.side == 0 { Dart::new(3 * d.edge, 0) } else { Dart::new(3 * d.edge + 2, 1) })
                    .collect()
            })
            .collect();
        for i in 0..m {
            cycles.push(vec![Dart::new(3 * i, 1), Dart::new(3 * i + 1, 0)]);
            cycles.push(vec![Dart::new(3 * i + 1, 1), Dart::new(3 * i + 2, 0)]);
        }
        g = g.with_rotation(Rotation { cycles }).expect("stretched rotation is valid");
    }
    Stretched { graph: g, origin }
}

/// Pad every vertex of degree `d < 3` with `3 − d` T-gadget copies whose
/// degree-1 vertex is identified with it. Each copy raises the maximum
/// independent set by exactly 2. The copy's edge to the host is inserted at the
/// end of the host's rotation (one fixed face corner).
pub fn cubicize(g: &WeightedMultigraph) -> Result<Cubicized, GraphError> {
    let deg = g.degrees();
    if let Some((v, &d)) = deg.iter().enumerate().find(|(_, &d)| d > 3) {
        return Err(GraphError::DegreeTooLarge { vertex: v, degree: d });
    }
    let rot = match g.rotation() {
        Some(r) => r.clone(),
        None => planarity_embed(g).ok_or(GraphError::NotPlanar)?,
    };
    let mut out = g.clone().without_rotation();
    let mut cycles = rot.cycles.clone();
    let mut attachments = Vec::new();
    let one = Rational::from(1);
    for (x, &d) in deg.iter().enumerate() {
        for _ in d..3 {
            let base = out.vertex_count();
            for _ in 0..5 {
                out.add_vertex();
                cycles.push(Vec::new());
            }
            let local = |i: usize| if i == 0 { x } else { base + i - 1 };
            let first = out.edge_count();
            for &(a, b) in &T_GADGET_EDGES {
                out.add_edge(local(a), local(b), one.clone())?;
            }
            // Local edge indices: rv=0 va=1 vb=2 ac=3 ad=4 bc=5 bd=6 cd=7.
            let de = |k: usize, side: u8| Dart::new(first + k, side);
            cycles[x].push(de(0, 0));
            cycles[base] = vec![de(0, 1), de(2, 0), de(1, 0)]; // v: r, b, a
            cycles[base + 1] = vec![de(1, 1), de(3, 0), de(4, 0)]; // a: v, c, d
            cycles[base + 2] = vec![de(2, 1), de(6, 0), de(5, 0)]; // b: v, d, c
            cycles[base + 3] = vec![de(3, 1), de(5, 1), de(7, 0)]; // c: a, b, d
            cycles[base + 4] = vec![de(7, 1), de(6, 1), de(4, 1)]; // d: c, b, a
            attachments.push((x, base));
        }
    }
    let out = out.with_rotation(Rotation { cycles })?;
    Ok(Cubicized { graph: out, mis_offset: 2 * attachments.len(), attachments })
}
