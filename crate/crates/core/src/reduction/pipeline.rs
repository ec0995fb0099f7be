//! Replace every edge of a multi-weight instance by the gadget implementing
//! its weight from a single base weight.

use crate::gadget::{splice_gadgets, Implementation, TwoTerminalGadget, DEFAULT_MATERIALIZE_CAP};
use crate::graph::{euler_check, WeightedMultigraph};
use crate::rational::{pow, Rational};

use super::ReductionError;

#[derive(Clone, Debug)]
pub struct ShiftPipeline {
    pub graph: WeightedMultigraph,
    pub q: Rational,
    /// `Z(graph) = aggregate_scale · Z(original)`.
    pub aggregate_scale: Rational,
    /// Edges replaced per implementation.
    pub replaced: Vec<usize>,
    /// The common weight of every output edge, if there is one.
    pub base_weight: Option<Rational>,
}

/// Every edge weight must equal some implementation's effective weight.
pub fn shift_pipeline(g: &WeightedMultigraph, imps: &[Implementation]) -> Result<ShiftPipeline, ReductionError> {
    let q = match imps.first() {
        Some(i) => i.q.clone(),
        None => return Err(ReductionError::Precondition("no implementations given".into())),
    };
    if imps.iter().any(|i| i.q != q) {
        return Err(ReductionError::Precondition("implementations disagree on q".into()));
    }
    let gadgets: Vec<TwoTerminalGadget> =
        imps.iter().map(|i| i.gadget.materialize(DEFAULT_MATERIALIZE_CAP)).collect::<Result<_, _>>()?;
    let mut replaced = vec![0usize; imps.len()];
    let mut slots = Vec::with_capacity(g.edge_count());
    for (id, e) in g.edges().iter().enumerate() {
        let i = imps
            .iter()
            .position(|imp| imp.effective_weight == e.weight)
            .ok_or_else(|| ReductionError::WeightMismatch(format!("edge {id} has weight {} with no implementation", e.weight)))?;
        replaced[i] += 1;
        slots.push(Some(&gadgets[i]));
    }
    let graph = splice_gadgets(g, &slots)?;
    if g.rotation().is_some() {
        let rot = graph.rotation().expect("plane host and plane gadgets give a plane result");
        assert!(euler_check(&graph, rot), "splice broke planarity");
    }
    let aggregate_scale = imps.iter().zip(&replaced).map(|(imp, &c)| pow(&imp.scale, c as i64)).product();
    let base_weight = match graph.edges().first() {
        Some(e0) if graph.edges().iter().all(|e| e.weight == e0.weight) => Some(e0.weight.clone()),
        _ => None,
    };
    Ok(ShiftPipeline { graph, q, aggregate_scale, replaced, base_weight })
}

/// `T(G; x, y) = Z / ((y−1)ⁿ (x−1)^κ)` for a graph with `n` vertices and `κ` components.
pub fn t_from_z(z: &Rational, x: &Rational, y: &Rational, n: usize, kappa: usize) -> Rational {
    Rational::from(z / &pow(&(Rational::from(y - 1u32)), n as i64)) / pow(&(Rational::from(x - 1u32)), kappa as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::SpGadget;
    use crate::rational::{int, rat, Interval};
    use crate::tutte::{tutte_eval, z_bruteforce};

    fn imp(g: SpGadget, q: &Rational) -> Implementation {
        let w = g.eval(q).unwrap().weight;
        Implementation::new(g, q, w, Interval::point(int(0))).unwrap()
    }

    #[test]
    fn identity_and_parallel() {
        let q = rat(7, 3);
        let g = WeightedMultigraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(3)), (0, 2, int(1))]).unwrap();
        let one = imp(SpGadget::edge(int(1)), &q);
        let three = imp(SpGadget::parallel(vec![SpGadget::edge(int(1)), SpGadget::edge(int(1))]), &q);
        assert_eq!(three.effective_weight, int(3));
        let out = shift_pipeline(&g, &[one, three]).unwrap();
        assert_eq!(out.aggregate_scale, int(1));
        assert_eq!(out.base_weight, Some(int(1)));
        assert_eq!(z_bruteforce(&out.graph, &q).unwrap(), z_bruteforce(&g, &q).unwrap());
    }

    #[test]
    fn series_scale() {
        let q = int(2);
        let g = WeightedMultigraph::from_edges(3, [(0, 1, rat(2, 3)), (1, 2, rat(2, 3))]).unwrap();
        let s = imp(SpGadget::series(vec![SpGadget::edge(int(2)), SpGadget::edge(int(2))]), &q);
        assert_eq!((s.effective_weight.clone(), s.scale.clone()), (rat(2, 3), int(6)));
        let out = shift_pipeline(&g, &[s]).unwrap();
        assert_eq!(out.aggregate_scale, int(36));
        assert_eq!(z_bruteforce(&out.graph, &q).unwrap(), z_bruteforce(&g, &q).unwrap() * 36u32);
        // T at (3, 3): q = 4, w = y − 1 = 2.
        let h = WeightedMultigraph::cycle(3, &int(2));
        let z = z_bruteforce(&h, &int(4)).unwrap();
        assert_eq!(t_from_z(&z, &int(3), &int(3), 3, 1), tutte_eval(&h, &int(3), &int(3)).unwrap());
    }

    #[test]
    fn mismatch() {
        let q = int(2);
        let g = WeightedMultigraph::from_edges(2, [(0, 1, int(5))]).unwrap();
        assert!(matches!(shift_pipeline(&g, &[imp(SpGadget::edge(int(1)), &q)]), Err(ReductionError::WeightMismatch(_))));
    }
}
