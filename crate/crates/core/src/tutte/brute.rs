//! Subset enumeration with a rollback union-find.

use crate::graph::WeightedMultigraph;
use crate::par::Exec;
use crate::rational::{is_zero, pow, Rational};

use super::{EvalReport, Method, TutteError};

pub const DEFAULT_BRUTE_CAP: usize = 24;

/// Union-find without path compression so unions can be undone.
pub(crate) struct RollbackDsu {
    parent: Vec<u32>,
    size: Vec<u32>,
    history: Vec<(u32, u32)>,
}

impl RollbackDsu {
    pub(crate) fn new(n: usize) -> Self {
        RollbackDsu { parent: (0..n as u32).collect(), size: vec![1; n], history: Vec::new() }
    }

    pub(crate) fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.history.push((rb, ra));
        true
    }

    pub(crate) fn mark(&self) -> usize {
        self.history.len()
    }

    pub(crate) fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            let (child, root) = self.history.pop().unwrap();
            self.parent[child as usize] = child;
            self.size[root as usize] -= self.size[child as usize];
        }
    }
}

fn check_cap(g: &WeightedMultigraph, cap: usize) -> Result<(), TutteError> {
    if g.edge_count() > cap {
        return Err(TutteError::CapExceeded { what: "subset enumeration", cap, actual: g.edge_count() });
    }
    Ok(())
}

/// Number of leading edges fixed per parallel task.
fn split_bits(m: usize, exec: Exec) -> usize {
    if exec.is_parallel() { m.min(10) } else { 0 }
}

/// Walk every subset `A`, calling `leaf(dsu, κ(V,A), w(A))`. Zero-weight
/// edges are never included (their subsets contribute nothing).
pub(crate) fn enumerate_weighted<S, L>(g: &WeightedMultigraph, exec: Exec, init: impl Fn() -> S + Sync, leaf: L) -> Vec<S>
where
    S: Send,
    L: Fn(&mut S, &RollbackDsu, usize, &Rational) + Sync,
{
    let n = g.vertex_count();
    let edges: Vec<(u32, u32, Rational)> = g.edges().iter().map(|e| (e.u as u32, e.v as u32, e.weight.clone())).collect();
    let t = split_bits(edges.len(), exec);

    fn rec<S, L>(edges: &[(u32, u32, Rational)], i: usize, dsu: &mut RollbackDsu, comps: usize, prod: &Rational, st: &mut S, leaf: &L)
    where
        L: Fn(&mut S, &RollbackDsu, usize, &Rational),
    {
        if i == edges.len() {
            leaf(st, dsu, comps, prod);
            return;
        }
        rec(edges, i + 1, dsu, comps, prod, st, leaf);
        let (a, b, ref w) = edges[i];
        if is_zero(w) {
            return;
        }
        let p = Rational::from(prod * w);
        let mark = dsu.mark();
        let merged = dsu.union(a, b);
        rec(edges, i + 1, dsu, comps - merged as usize, &p, st, leaf);
        dsu.rollback(mark);
    }

    exec.map_range(1usize << t, |mask| {
        let mut st = init();
        let mut dsu = RollbackDsu::new(n);
        let mut comps = n;
        let mut prod = Rational::from(1);
        for (i, (a, b, w)) in edges.iter().enumerate().take(t) {
            if mask >> i & 1 == 1 {
                if is_zero(w) {
                    return st;
                }
                prod *= w;
                comps -= dsu.union(*a, *b) as usize;
            }
        }
        rec(&edges, t, &mut dsu, comps, &prod, &mut st, &leaf);
        st
    })
}

/// `S[κ] = Σ_{A : κ(V,A)=κ} w(A)`, so that Z = Σ_κ S[κ] q^κ.
pub fn kappa_sums(g: &WeightedMultigraph, cap: usize, exec: Exec) -> Result<Vec<Rational>, TutteError> {
    check_cap(g, cap)?;
    let n = g.vertex_count();
    let parts = enumerate_weighted(
        g,
        exec,
        || vec![Rational::new(); n + 1],
        |s, _, k, w| s[k] += w,
    );
    let mut total = vec![Rational::new(); n + 1];
    for p in parts {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    Ok(total)
}

/// `counts[κ][|A|]` over all subsets, ignoring weights.
pub fn rank_counts(g: &WeightedMultigraph, cap: usize, exec: Exec) -> Result<Vec<Vec<u64>>, TutteError> {
    check_cap(g, cap)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.u as u32, e.v as u32)).collect();
    let t = split_bits(m, exec);

    fn rec(edges: &[(u32, u32)], i: usize, size: usize, dsu: &mut RollbackDsu, comps: usize, out: &mut [Vec<u64>]) {
        if i == edges.len() {
            out[comps][size] += 1;
            return;
        }
        rec(edges, i + 1, size, dsu, comps, out);
        let mark = dsu.mark();
        let merged = dsu.union(edges[i].0, edges[i].1);
        rec(edges, i + 1, size + 1, dsu, comps - merged as usize, out);
        dsu.rollback(mark);
    }

    let parts = exec.map_range(1usize << t, |mask| {
        let mut out = vec![vec![0u64; m + 1]; n + 1];
        let mut dsu = RollbackDsu::new(n);
        let mut comps = n;
        let mut size = 0;
        for (i, &(a, b)) in edges.iter().enumerate().take(t) {
            if mask >> i & 1 == 1 {
                size += 1;
                comps -= dsu.union(a, b) as usize;
            }
        }
        rec(&edges, t, size, &mut dsu, comps, &mut out);
        out
    });
    let mut total = vec![vec![0u64; m + 1]; n + 1];
    for p in parts {
        for (row, prow) in total.iter_mut().zip(p) {
            for (c, pc) in row.iter_mut().zip(prow) {
                *c += pc;
            }
        }
    }
    Ok(total)
}

/// Z(G; q, w) by enumerating all 2^|E| subsets (weights taken from `g`).
pub fn z_bruteforce(g: &WeightedMultigraph, q: &Rational) -> Result<Rational, TutteError> {
    z_bruteforce_report(g, q, DEFAULT_BRUTE_CAP, Exec::default()).map(|r| r.value)
}

pub fn z_bruteforce_report(g: &WeightedMultigraph, q: &Rational, cap: usize, exec: Exec) -> Result<EvalReport, TutteError> {
    let sums = kappa_sums(g, cap, exec)?;
    let mut value = Rational::new();
    for (k, s) in sums.iter().enumerate() {
        if !is_zero(s) {
            value += Rational::from(s * &pow(q, k as i64));
        }
    }
    Ok(EvalReport { value, method: Method::SubsetEnumeration, work: 1u64 << g.edge_count(), memo_hits: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn single_edge_and_loop() {
        let e = WeightedMultigraph::from_edges(2, [(0, 1, int(3))]).unwrap();
        assert_eq!(z_bruteforce(&e, &int(2)).unwrap(), int(10));
        let l = WeightedMultigraph::from_edges(1, [(0, 0, int(3))]).unwrap();
        assert_eq!(z_bruteforce(&l, &int(2)).unwrap(), int(8));
    }

    #[test]
    fn triangle_potts() {
        // 2-state Potts: Σ_σ 2^{#mono} = 2·8 + 6·2 = 28.
        let t = WeightedMultigraph::cycle(3, &int(1));
        assert_eq!(z_bruteforce(&t, &int(2)).unwrap(), int(28));
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(z_bruteforce_report(&t, &rat(1, 3), 24, exec).unwrap().value, z_bruteforce_report(&t, &rat(1, 3), 24, Exec::Sequential).unwrap().value);
        }
    }

    #[test]
    fn cap_enforced() {
        let g = WeightedMultigraph::cycle(30, &int(1));
        assert!(matches!(z_bruteforce(&g, &int(2)), Err(TutteError::CapExceeded { .. })));
    }

    #[test]
    fn rank_counts_total() {
        let g = WeightedMultigraph::complete(4, &int(1));
        let c = rank_counts(&g, 24, Exec::Parallel).unwrap();
        let total: u64 = c.iter().flatten().sum();
        assert_eq!(total, 64);
        // Spanning trees of K4: 16 subsets with κ=1 and |A|=3.
        assert_eq!(c[1][3], 16);
    }

    #[test]
    fn rollback_restores() {
        let mut d = RollbackDsu::new(4);
        let m = d.mark();
        assert!(d.union(0, 1));
        assert!(d.union(1, 2));
        assert!(!d.union(0, 2));
        d.rollback(m);
        assert_ne!(d.find(0), d.find(1));
    }
}
