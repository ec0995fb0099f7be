//! Assemblies of Y gadgets glued at terminals and linked by β edges, and the
//! instance Ĝ built from a cubic plane graph.

use crate::gadget::ParamSet;
use crate::graph::{euler_check, planarity_embed, three_stretch, Dart, MisInstance, Stretched, WeightedMultigraph};
use crate::rational::Rational;

use super::certify::psi_from_params;
use super::ygadget::y_closed_forms;
use super::ReductionError;

/// Terminal `terminal ∈ {0,1,2}` of Y gadget `gadget`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub gadget: usize,
    pub terminal: usize,
}

impl Port {
    pub fn new(gadget: usize, terminal: usize) -> Self {
        Port { gadget, terminal }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    /// Inner triangle edge of a gadget.
    A,
    /// Spoke of a gadget.
    B,
    /// Link edge between gadgets.
    Beta,
}

/// Gadgets are glued by identifying terminals pairwise; every glued pair of
/// gadgets must also be joined by at least one link, and each terminal takes
/// part in at most one identification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assembly {
    gadgets: usize,
    identifications: Vec<(Port, Port)>,
    links: Vec<(Port, Port)>,
}

impl Assembly {
    pub fn new(gadgets: usize) -> Self {
        Assembly { gadgets, ..Default::default() }
    }

    fn check_port(&self, p: Port) -> Result<(), ReductionError> {
        if p.gadget >= self.gadgets || p.terminal >= 3 {
            return Err(ReductionError::BadAssembly(format!("port {p:?} out of range")));
        }
        Ok(())
    }

    pub fn identify(&mut self, p: Port, q: Port) -> Result<(), ReductionError> {
        self.check_port(p)?;
        self.check_port(q)?;
        if p.gadget == q.gadget {
            return Err(ReductionError::BadAssembly(format!("{p:?} and {q:?} lie in one gadget")));
        }
        let used = |x: Port| self.identifications.iter().any(|&(a, b)| a == x || b == x);
        if used(p) || used(q) {
            return Err(ReductionError::BadAssembly("terminal identified twice".into()));
        }
        if self.identifications.iter().any(|&(a, b)| {
            (a.gadget, b.gadget) == (p.gadget, q.gadget) || (a.gadget, b.gadget) == (q.gadget, p.gadget)
        }) {
            return Err(ReductionError::BadAssembly("two gadgets glued twice".into()));
        }
        self.identifications.push((p, q));
        Ok(())
    }

    pub fn link(&mut self, p: Port, q: Port) -> Result<(), ReductionError> {
        self.check_port(p)?;
        self.check_port(q)?;
        if p.gadget == q.gadget {
            return Err(ReductionError::BadAssembly(format!("link {p:?}–{q:?} inside one gadget")));
        }
        self.links.push((p, q));
        Ok(())
    }

    pub fn gadget_count(&self) -> usize {
        self.gadgets
    }

    pub fn identifications(&self) -> &[(Port, Port)] {
        &self.identifications
    }

    pub fn links(&self) -> &[(Port, Port)] {
        &self.links
    }

    /// Every glued pair also carries a link.
    pub fn validate(&self) -> Result<(), ReductionError> {
        for &(p, q) in &self.identifications {
            let linked = self.links.iter().any(|&(a, b)| {
                (a.gadget, b.gadget) == (p.gadget, q.gadget) || (a.gadget, b.gadget) == (q.gadget, p.gadget)
            });
            if !linked {
                return Err(ReductionError::BadAssembly(format!("gadgets {} and {} are glued but not linked", p.gadget, q.gadget)));
            }
        }
        Ok(())
    }

    /// One vertex per gadget, one edge per identification.
    pub fn gadget_graph(&self) -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new(self.gadgets);
        for &(p, q) in &self.identifications {
            g.add_edge(p.gadget, q.gadget, Rational::from(1)).expect("in range");
        }
        g
    }

    /// Vertex of each terminal after identification; terminal vertices are
    /// numbered `0..count` in order of first appearance.
    pub fn terminal_vertices(&self) -> (Vec<[usize; 3]>, usize) {
        let mut id = vec![[usize::MAX; 3]; self.gadgets];
        let mut partner = std::collections::HashMap::new();
        for &(p, q) in &self.identifications {
            partner.insert(p, q);
            partner.insert(q, p);
        }
        let mut next = 0;
        for x in 0..self.gadgets {
            for t in 0..3 {
                if id[x][t] != usize::MAX {
                    continue;
                }
                id[x][t] = next;
                if let Some(o) = partner.get(&Port::new(x, t)) {
                    id[o.gadget][o.terminal] = next;
                }
                next += 1;
            }
        }
        (id, next)
    }

    /// The explicit weighted graph. Gadget `x` owns edges `6x..6x+6` (three
    /// spokes, then the triangle); links follow in insertion order.
    pub fn build(&self, q: &Rational, a: &Rational, b: &Rational, beta: &Rational) -> Result<Assembled, ReductionError> {
        self.validate()?;
        let (term, t) = self.terminal_vertices();
        let n = self.gadgets;
        let mut g = WeightedMultigraph::new(t + 3 * n);
        let mut roles = Vec::with_capacity(6 * n + self.links.len());
        let mut local = Vec::with_capacity(n);
        for (x, tv) in term.iter().enumerate() {
            let inner = [t + 3 * x, t + 3 * x + 1, t + 3 * x + 2];
            for i in 0..3 {
                g.add_edge(tv[i], inner[i], b.clone())?;
                roles.push(EdgeRole::B);
            }
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                g.add_edge(inner[i], inner[j], a.clone())?;
                roles.push(EdgeRole::A);
            }
            local.push([tv[0], tv[1], tv[2], inner[0], inner[1], inner[2]]);
        }
        for &(p, r) in &self.links {
            g.add_edge(term[p.gadget][p.terminal], term[r.gadget][r.terminal], beta.clone())?;
            roles.push(EdgeRole::Beta);
        }
        Ok(Assembled {
            assembly: self.clone(),
            graph: g,
            roles,
            local,
            terminal_count: t,
            q: q.clone(),
            a: a.clone(),
            b: b.clone(),
            beta: beta.clone(),
        })
    }

    /// Γ_S: the terminal vertices with the links, after merging the three
    /// terminals of every gadget in `s`. Loops are kept.
    pub fn gamma(&self, s: &[bool], beta: &Rational) -> WeightedMultigraph {
        let (term, t) = self.terminal_vertices();
        let mut parent: Vec<usize> = (0..t).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (x, tv) in term.iter().enumerate() {
            if s.get(x).copied().unwrap_or(false) {
                for &v in &tv[1..] {
                    let (r0, r1) = (find(&mut parent, tv[0]), find(&mut parent, v));
                    parent[r1] = r0;
                }
            }
        }
        let mut idx = vec![usize::MAX; t];
        let mut count = 0;
        for v in 0..t {
            let r = find(&mut parent, v);
            if idx[r] == usize::MAX {
                idx[r] = count;
                count += 1;
            }
        }
        let mut g = WeightedMultigraph::new(count);
        for &(p, r) in &self.links {
            let u = idx[find(&mut parent, term[p.gadget][p.terminal])];
            let v = idx[find(&mut parent, term[r.gadget][r.terminal])];
            g.add_edge(u, v, beta.clone()).expect("in range");
        }
        g
    }
}

/// An assembly with weights attached.
#[derive(Clone, Debug)]
pub struct Assembled {
    pub assembly: Assembly,
    pub graph: WeightedMultigraph,
    pub roles: Vec<EdgeRole>,
    /// Vertices of gadget `x`: terminals 0,1,2 then inner 0̄,1̄,2̄.
    pub local: Vec<[usize; 6]>,
    pub terminal_count: usize,
    pub q: Rational,
    pub a: Rational,
    pub b: Rational,
    pub beta: Rational,
}

impl Assembled {
    pub fn role_census(&self) -> (usize, usize, usize) {
        let c = |r: EdgeRole| self.roles.iter().filter(|&&x| x == r).count();
        (c(EdgeRole::A), c(EdgeRole::B), c(EdgeRole::Beta))
    }
}

/// Ĝ for a cubic plane graph `h` and bound `K`.
#[derive(Clone, Debug)]
pub struct GhatInstance {
    pub assembled: Assembled,
    /// `h` with the rotation the port indices were read from.
    pub host: WeightedMultigraph,
    pub stretched: Stretched,
    pub source: MisInstance,
    /// `ports[e] = (i_{u,v}, i_{v,u})` for host edge `e = (u, v)`.
    pub ports: Vec<(usize, usize)>,
    /// Ports were read counter-clockwise because the clockwise reading was not planar.
    pub mirrored: bool,
    pub params: Option<ParamSet>,
    pub psi: Option<Rational>,
}

impl GhatInstance {
    pub fn k(&self) -> usize {
        self.source.bound_k
    }

    /// `(n, m)` of the stretched graph.
    pub fn nm(&self) -> (usize, usize) {
        (self.stretched.graph.vertex_count(), self.stretched.graph.edge_count())
    }
}

fn port_assembly(h: &WeightedMultigraph, ports: &[(usize, usize)]) -> Result<Assembly, ReductionError> {
    let nh = h.vertex_count();
    let mut asm = Assembly::new(nh + 2 * h.edge_count());
    for (e, edge) in h.edges().iter().enumerate() {
        let (u, v) = (edge.u, edge.v);
        let (uv, vu) = (nh + 2 * e, nh + 2 * e + 1);
        let (i, j) = ports[e];
        asm.identify(Port::new(u, i), Port::new(uv, 0))?;
        asm.identify(Port::new(uv, 2), Port::new(vu, 1))?;
        asm.identify(Port::new(vu, 0), Port::new(v, j))?;
        asm.link(Port::new(u, (i + 2) % 3), Port::new(uv, 1))?;
        asm.link(Port::new(uv, 1), Port::new(vu, 2))?;
        asm.link(Port::new(vu, 1), Port::new(v, (j + 2) % 3))?;
    }
    Ok(asm)
}

/// Build Ĝ: one Y gadget per vertex of the 3-stretch of `h`, ports read from
/// the rotation of `h`, planarity confirmed on the output.
pub fn assemble_ghat(
    h: &WeightedMultigraph,
    k: usize,
    q: &Rational,
    beta: &Rational,
    a: &Rational,
    b: &Rational,
    params: Option<&ParamSet>,
) -> Result<GhatInstance, ReductionError> {
    if let Some(e) = h.edges().iter().find(|e| e.is_loop()) {
        return Err(ReductionError::LoopInHost(e.u));
    }
    for (v, &d) in h.degrees().iter().enumerate() {
        if d != 3 {
            return Err(ReductionError::NotCubic { vertex: v, degree: d });
        }
    }
    let rot = match h.rotation() {
        Some(r) if euler_check(h, r) => r.clone(),
        Some(_) => return Err(ReductionError::NotPlanar),
        None => planarity_embed(h).ok_or(ReductionError::NotPlanar)?,
    };
    let host = h.clone().with_rotation(rot.clone())?;
    let stretched = three_stretch(&host)?;
    let n = stretched.graph.vertex_count();
    if k == 0 || 8 * k > 5 * n {
        return Err(ReductionError::BadBound { k, reason: format!("need 0 < K ≤ 5n/8 with n = {n}") });
    }
    let source = MisInstance::new(stretched.graph.clone(), k)?;
    let pos = |v: usize, d: Dart| rot.cycles[v].iter().position(|&x| x == d).expect("dart in rotation");
    let clockwise: Vec<(usize, usize)> = host
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| (pos(edge.u, Dart::new(e, 0)), pos(edge.v, Dart::new(e, 1))))
        .collect();
    for mirrored in [false, true] {
        let ports: Vec<(usize, usize)> = if mirrored {
            clockwise.iter().map(|&(i, j)| ((3 - i) % 3, (3 - j) % 3)).collect()
        } else {
            clockwise.clone()
        };
        let asm = port_assembly(&host, &ports)?;
        let mut built = asm.build(q, a, b, beta)?;
        let Some(r) = planarity_embed(&built.graph) else { continue };
        built.graph = built.graph.with_rotation(r)?;
        let psi = match params {
            Some(p) => Some(psi_from_params(&y_closed_forms(q, a, b)?, p)?),
            None => None,
        };
        return Ok(GhatInstance {
            assembled: built,
            host,
            stretched,
            source,
            ports,
            mirrored,
            params: params.cloned(),
            psi,
        });
    }
    Err(ReductionError::NotPlanar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn k4() -> WeightedMultigraph {
        WeightedMultigraph::complete(4, &int(1))
    }

    #[test]
    fn k4_sizes_and_roles() {
        let g = assemble_ghat(&k4(), 7, &int(6), &rat(-1, 10), &rat(6, 5), &rat(-11, 1), None).unwrap();
        let (n, m) = g.nm();
        assert_eq!((n, m), (16, 18));
        assert_eq!(g.assembled.graph.vertex_count(), 6 * n - m);
        assert_eq!(g.assembled.graph.edge_count(), 6 * n + m);
        assert_eq!(g.assembled.role_census(), (48, 48, 18));
        assert!(!g.mirrored);
        assert!(euler_check(&g.assembled.graph, g.assembled.graph.rotation().unwrap()));
        for (e, r) in g.assembled.graph.edges().iter().zip(&g.assembled.roles) {
            let want = match r {
                EdgeRole::A => rat(6, 5),
                EdgeRole::B => int(-11),
                EdgeRole::Beta => rat(-1, 10),
            };
            assert_eq!(e.weight, want);
        }
    }

    #[test]
    fn gamma_sizes() {
        let g = assemble_ghat(&k4(), 7, &int(6), &rat(-1, 10), &int(1), &int(1), None).unwrap();
        let asm = &g.assembled.assembly;
        let none = asm.gamma(&[false; 16], &rat(-1, 10));
        assert_eq!((none.vertex_count(), none.edge_count()), (30, 18));
        let mut s = [false; 16];
        s[0] = true;
        s[5] = true;
        assert_eq!(asm.gamma(&s, &rat(-1, 10)).vertex_count(), 30 - 4);
    }

    #[test]
    fn rejections() {
        let c4 = WeightedMultigraph::cycle(4, &int(1));
        assert!(matches!(assemble_ghat(&c4, 1, &int(6), &int(-1), &int(1), &int(1), None), Err(ReductionError::NotCubic { .. })));
        assert!(matches!(assemble_ghat(&k4(), 11, &int(6), &int(-1), &int(1), &int(1), None), Err(ReductionError::BadBound { .. })));
        let mut asm = Assembly::new(2);
        asm.identify(Port::new(0, 0), Port::new(1, 0)).unwrap();
        assert!(asm.build(&int(2), &int(1), &int(1), &int(1)).is_err());
        assert!(asm.identify(Port::new(0, 0), Port::new(1, 1)).is_err());
    }
}
