//! Weighted multigraphs with loops, parallel edges and optional rotation
//! systems, plus the combinatorial pre-transformations used by the reductions.

mod codec;
mod mis;
mod planar;
mod transform;

use std::collections::VecDeque;

use thiserror::Error;

use crate::rational::Rational;

pub use codec::{parse_graph, serialize_graph, ParseError};
pub use mis::{independent_sets, mis_oracle, mis_size, MisInstance, MisReport, DEFAULT_MIS_CAP};
pub use planar::{euler_check, faces, is_planar, planar_dual, planarity_embed};
pub use transform::{
    cubicize, three_stretch, three_stretch_any, t_gadget, Cubicized, Stretched, T_GADGET_EDGES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("endpoint {endpoint} out of range for {vertices} vertices")]
    EndpointOutOfRange { endpoint: usize, vertices: usize },
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no rotation system")]
    NoRotation,
    #[error("vertex {vertex} has degree {degree} (maximum 3)")]
    DegreeTooLarge { vertex: usize, degree: usize },
    #[error("vertex {vertex} has degree {degree}, expected a cubic graph")]
    NotCubic { vertex: usize, degree: usize },
    #[error("{what}: size {actual} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize, actual: usize },
    #[error("bound K={k} invalid: {reason}")]
    BadBound { k: usize, reason: String },
    #[error("edge {0} does not exist")]
    MissingEdge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint at `side` (0 = `u`, 1 = `v`).
    pub fn end(&self, side: u8) -> usize {
        if side == 0 { self.u } else { self.v }
    }
}

/// One end of an edge: `side` 0 sits at `u`, 1 at `v`. Also read as the
/// directed half-edge leaving that end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub side: u8,
}

impl Dart {
    pub fn new(edge: usize, side: u8) -> Self {
        Dart { edge, side }
    }

    pub fn rev(self) -> Self {
        Dart { edge: self.edge, side: 1 - self.side }
    }

    pub fn index(self) -> usize {
        2 * self.edge + self.side as usize
    }
}

/// Clockwise cyclic order of darts around each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub cycles: Vec<Vec<Dart>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMultigraph {
    n: usize,
    edges: Vec<Edge>,
    rotation: Option<Rotation>,
}

impl WeightedMultigraph {
    pub fn new(n: usize) -> Self {
        WeightedMultigraph { n, edges: Vec::new(), rotation: None }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut g = WeightedMultigraph::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Same weight on every edge.
    pub fn uniform(n: usize, pairs: &[(usize, usize)], w: &Rational) -> Result<Self, GraphError> {
        Self::from_edges(n, pairs.iter().map(|&(u, v)| (u, v, w.clone())))
    }

    pub fn cycle(n: usize, w: &Rational) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::uniform(n, &pairs, w).expect("valid cycle")
    }

    pub fn path(n: usize, w: &Rational) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::uniform(n, &pairs, w).expect("valid path")
    }

    pub fn complete(n: usize, w: &Rational) -> Self {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        Self::uniform(n, &pairs, w).expect("valid complete graph")
    }

    /// Appends an edge and returns its id. Drops any stored rotation.
    pub fn add_edge(&mut self, u: usize, v: usize, w: Rational) -> Result<usize, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::EndpointOutOfRange { endpoint: x, vertices: self.n });
            }
        }
        self.rotation = None;
        self.edges.push(Edge { u, v, weight: w });
        Ok(self.edges.len() - 1)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.rotation = None;
        self.n += 1;
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn weight(&self, id: usize) -> &Rational {
        &self.edges[id].weight
    }

    pub fn rotation(&self) -> Option<&Rotation> {
        self.rotation.as_ref()
    }

    pub fn with_rotation(mut self, rot: Rotation) -> Result<Self, GraphError> {
        self.validate_rotation(&rot)?;
        self.rotation = Some(rot);
        Ok(self)
    }

    pub fn without_rotation(mut self) -> Self {
        self.rotation = None;
        self
    }

    pub fn set_weight(&mut self, id: usize, w: Rational) {
        self.edges[id].weight = w;
    }

    /// Copy with every weight replaced by `f(edge_id, old)`.
    pub fn map_weights<F: Fn(usize, &Rational) -> Rational>(&self, f: F) -> Self {
        let mut g = self.clone();
        for (i, e) in g.edges.iter_mut().enumerate() {
            e.weight = f(i, &e.weight);
        }
        g
    }

    pub fn with_uniform_weight(&self, w: &Rational) -> Self {
        self.map_weights(|_, _| w.clone())
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.edges[d.edge].end(d.side)
    }

    pub fn head(&self, d: Dart) -> usize {
        self.edges[d.edge].end(1 - d.side)
    }

    /// Loops count twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Darts incident to each vertex in edge-id order.
    pub fn darts_at(&self) -> Vec<Vec<Dart>> {
        let mut at = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            at[e.u].push(Dart::new(i, 0));
            at[e.v].push(Dart::new(i, 1));
        }
        at
    }

    pub fn validate_rotation(&self, rot: &Rotation) -> Result<(), GraphError> {
        if rot.cycles.len() != self.n {
            return Err(GraphError::InvalidRotation(format!(
                "{} cycles for {} vertices",
                rot.cycles.len(),
                self.n
            )));
        }
        let mut seen = vec![false; 2 * self.edges.len()];
        for (v, cyc) in rot.cycles.iter().enumerate() {
            for &d in cyc {
                if d.edge >= self.edges.len() || d.side > 1 {
                    return Err(GraphError::InvalidRotation(format!("unknown edge-end {}.{}", d.edge, d.side)));
                }
                if self.tail(d) != v {
                    return Err(GraphError::InvalidRotation(format!(
                        "edge-end {}.{} is not incident to vertex {v}",
                        d.edge, d.side
                    )));
                }
                if std::mem::replace(&mut seen[d.index()], true) {
                    return Err(GraphError::InvalidRotation(format!("edge-end {}.{} repeated", d.edge, d.side)));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(GraphError::InvalidRotation(format!("edge-end {}.{} missing", i / 2, i % 2)));
        }
        Ok(())
    }

    /// Component label per vertex and the number of components κ(V, E).
    pub fn components(&self) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Neighbour lists with multiplicity (a loop lists its vertex twice).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn has_loop_at(&self) -> Vec<bool> {
        let mut l = vec![false; self.n];
        for e in &self.edges {
            if e.is_loop() {
                l[e.u] = true;
            }
        }
        l
    }

    /// Disjoint union; vertices and edges of `other` are shifted.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut g = self.clone();
        g.rotation = None;
        let off = self.n;
        g.n += other.n;
        for e in &other.edges {
            g.edges.push(Edge { u: e.u + off, v: e.v + off, weight: e.weight.clone() });
        }
        if let (Some(a), Some(b)) = (&self.rotation, &other.rotation) {
            let shift = self.edges.len();
            let mut cycles = a.cycles.clone();
            cycles.extend(
                b.cycles
                    .iter()
                    .map(|c| c.iter().map(|d| Dart::new(d.edge + shift, d.side)).collect()),
            );
            g.rotation = Some(Rotation { cycles });
        }
        g
    }

    /// Each edge repeated `k` times in parallel (the k-thickening).
    pub fn thicken(&self, k: usize) -> Self {
        let mut g = WeightedMultigraph::new(self.n);
        for e in &self.edges {
            for _ in 0..k {
                g.edges.push(e.clone());
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn basic_counts() {
        let g = WeightedMultigraph::complete(4, &int(1));
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degrees(), vec![3; 4]);
        assert!(g.is_connected());
        let two = g.disjoint_union(&WeightedMultigraph::new(2));
        assert_eq!(two.component_count(), 3);
    }

    #[test]
    fn endpoints_checked() {
        let mut g = WeightedMultigraph::new(2);
        assert!(g.add_edge(0, 2, int(1)).is_err());
        assert_eq!(g.add_edge(1, 1, int(1)).unwrap(), 0);
        assert_eq!(g.degrees(), vec![0, 2]);
    }

    #[test]
    fn rotation_validation() {
        let g = WeightedMultigraph::path(3, &int(1));
        let ok = Rotation { cycles: vec![vec![Dart::new(0, 0)], vec![Dart::new(0, 1), Dart::new(1, 0)], vec![Dart::new(1, 1)]] };
        assert!(g.clone().with_rotation(ok).is_ok());
        let bad = Rotation { cycles: vec![vec![Dart::new(0, 1)], vec![Dart::new(0, 0), Dart::new(1, 0)], vec![Dart::new(1, 1)]] };
        assert!(g.with_rotation(bad).is_err());
    }
}
