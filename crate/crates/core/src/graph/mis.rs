//! Independent-set oracles.

use super::{GraphError, WeightedMultigraph};

pub const DEFAULT_MIS_CAP: usize = 32;

/// A planar MIS decision instance: is there an independent set of size ≥ K?
#[derive(Clone, Debug)]
pub struct MisInstance {
    pub graph: WeightedMultigraph,
    pub bound_k: usize,
}

impl MisInstance {
    /// Accepts `K ≤ ⌈5n/8⌉`, which always holds for answers on 3-stretched cubic graphs.
    pub fn new(graph: WeightedMultigraph, bound_k: usize) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        if bound_k == 0 {
            return Err(GraphError::BadBound { k: bound_k, reason: "must be positive".into() });
        }
        if 8 * bound_k > 5 * n + 7 {
            return Err(GraphError::BadBound { k: bound_k, reason: format!("exceeds ⌈5n/8⌉ for n={n}") });
        }
        Ok(MisInstance { graph, bound_k })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisReport {
    pub max_size: usize,
    pub count_at_max: u64,
    /// `counts[k]` = number of independent sets of size k (including the empty set).
    pub counts: Vec<u64>,
}

fn masks(g: &WeightedMultigraph) -> (Vec<u64>, u64) {
    let n = g.vertex_count();
    let mut adj = vec![0u64; n];
    let mut looped = 0u64;
    for e in g.edges() {
        if e.is_loop() {
            looped |= 1 << e.u;
        } else {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
    }
    (adj, looped)
}

fn check_cap(g: &WeightedMultigraph, cap: usize) -> Result<(), GraphError> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(GraphError::CapExceeded { what: "independent-set enumeration", cap: cap.min(64), actual: n });
    }
    Ok(())
}

/// Visit every independent set (as a bitmask), lowest vertices decided first.
fn for_each_independent<F: FnMut(u64)>(adj: &[u64], looped: u64, f: &mut F) {
    fn rec<F: FnMut(u64)>(adj: &[u64], i: usize, chosen: u64, blocked: u64, f: &mut F) {
        if i == adj.len() {
            f(chosen);
            return;
        }
        rec(adj, i + 1, chosen, blocked, f);
        if blocked & (1 << i) == 0 {
            rec(adj, i + 1, chosen | (1 << i), blocked | adj[i], f);
        }
    }
    rec(adj, 0, 0, looped, f);
}

/// Exact MIS statistics by enumerating every independent set.
pub fn mis_oracle(g: &WeightedMultigraph, cap: usize) -> Result<MisReport, GraphError> {
    check_cap(g, cap)?;
    let (adj, looped) = masks(g);
    let mut counts = vec![0u64; g.vertex_count() + 1];
    for_each_independent(&adj, looped, &mut |s| counts[s.count_ones() as usize] += 1);
    let max_size = counts.iter().rposition(|&c| c > 0).unwrap_or(0);
    counts.truncate(max_size + 1);
    Ok(MisReport { max_size, count_at_max: counts[max_size], counts })
}

/// All independent sets as bitmasks, in a fixed deterministic order.
pub fn independent_sets(g: &WeightedMultigraph, cap: usize) -> Result<Vec<u64>, GraphError> {
    check_cap(g, cap)?;
    let (adj, looped) = masks(g);
    let mut out = Vec::new();
    for_each_independent(&adj, looped, &mut |s| out.push(s));
    Ok(out)
}

/// Maximum independent set size by branch and reduce (up to 128 vertices).
pub fn mis_size(g: &WeightedMultigraph) -> Result<usize, GraphError> {
    let n = g.vertex_count();
    if n > 128 {
        return Err(GraphError::CapExceeded { what: "branch-and-reduce MIS", cap: 128, actual: n });
    }
    let mut adj = vec![0u128; n];
    let mut avail: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    for e in g.edges() {
        if e.is_loop() {
            avail &= !(1u128 << e.u);
        } else {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
    }
    Ok(mis_rec(&adj, avail))
}

fn mis_rec(adj: &[u128], avail: u128) -> usize {
    if avail == 0 {
        return 0;
    }
    // Split into components.
    let start = avail.trailing_zeros() as usize;
    let mut comp = 1u128 << start;
    let mut frontier = comp;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & avail & !comp;
        comp |= new;
        frontier |= new;
    }
    if comp != avail {
        return mis_rec(adj, comp) + mis_rec(adj, avail & !comp);
    }
    let mut best_min = (usize::MAX, 0);
    let mut best_max = (0, 0);
    let mut rest = avail;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & avail).count_ones() as usize;
        if d < best_min.0 {
            best_min = (d, v);
        }
        if d > best_max.0 {
            best_max = (d, v);
        }
    }
    let (d, v) = best_min;
    if d <= 1 {
        // Some maximum independent set contains a vertex of degree ≤ 1.
        return 1 + mis_rec(adj, avail & !(1 << v) & !adj[v]);
    }
    let u = best_max.1;
    let with = 1 + mis_rec(adj, avail & !(1 << u) & !adj[u]);
    let without = mis_rec(adj, avail & !(1 << u));
    with.max(without)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn small_oracles() {
        let k4 = WeightedMultigraph::complete(4, &int(1));
        let r = mis_oracle(&k4, DEFAULT_MIS_CAP).unwrap();
        assert_eq!((r.max_size, r.count_at_max), (1, 4));
        let tri = WeightedMultigraph::cycle(3, &int(1));
        let r = mis_oracle(&tri, DEFAULT_MIS_CAP).unwrap();
        assert_eq!((r.max_size, r.count_at_max), (1, 3));
        assert_eq!(r.counts, vec![1, 3]);
    }

    #[test]
    fn loops_exclude_vertices() {
        let mut g = WeightedMultigraph::new(2);
        g.add_edge(0, 0, int(1)).unwrap();
        assert_eq!(mis_oracle(&g, 32).unwrap().max_size, 1);
        assert_eq!(mis_size(&g).unwrap(), 1);
    }

    #[test]
    fn cap_enforced() {
        let g = WeightedMultigraph::new(40);
        assert!(mis_oracle(&g, DEFAULT_MIS_CAP).is_err());
        assert_eq!(mis_size(&g).unwrap(), 40);
    }

    #[test]
    fn bound_checked() {
        let g = WeightedMultigraph::new(16);
        assert!(MisInstance::new(g.clone(), 10).is_ok());
        assert!(MisInstance::new(g, 11).is_err());
    }
}
