//! Tutte-plane evaluation, chromatic/flow specialisations and Potts colour sums.

use std::collections::HashMap;

use crate::graph::WeightedMultigraph;
use crate::par::Exec;
use crate::rational::{is_zero, pow, Rational};

use super::brute::{rank_counts, DEFAULT_BRUTE_CAP};
use super::delcon::{z_delcon, DEFAULT_DELCON_BUDGET};
use super::{EvalReport, Method, TutteError};

/// Maximum number of colourings `colour_sum` will enumerate by default.
pub const DEFAULT_COLOUR_BUDGET: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Chromatic,
    Flow,
}

/// T(G; x, y) as the rank-generating subset sum
/// `Σ_A (x−1)^{r(E)−r(A)} (y−1)^{|A|−r(A)}`.
pub fn tutte_subset_sum(g: &WeightedMultigraph, x: &Rational, y: &Rational) -> Result<Rational, TutteError> {
    let counts = rank_counts(g, DEFAULT_BRUTE_CAP, Exec::default())?;
    let n = g.vertex_count() as i64;
    let k_full = g.component_count() as i64;
    let xm = Rational::from(x - 1u32);
    let ym = Rational::from(y - 1u32);
    let mut total = Rational::new();
    for (k, row) in counts.iter().enumerate() {
        for (a, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let rank = n - k as i64;
            let term = pow(&xm, k as i64 - k_full) * pow(&ym, a as i64 - rank);
            total += term * c;
        }
    }
    Ok(total)
}

/// T(G; x, y). Uses Z(G; (x−1)(y−1), y−1) when x ≠ 1 and y ≠ 1, and the
/// memoised loop/bridge recursion otherwise.
pub fn tutte_eval(g: &WeightedMultigraph, x: &Rational, y: &Rational) -> Result<Rational, TutteError> {
    tutte_eval_report(g, x, y).map(|r| r.value)
}

pub fn tutte_eval_report(g: &WeightedMultigraph, x: &Rational, y: &Rational) -> Result<EvalReport, TutteError> {
    let xm = Rational::from(x - 1u32);
    let ym = Rational::from(y - 1u32);
    if !is_zero(&xm) && !is_zero(&ym) {
        let q = Rational::from(&xm * &ym);
        let z = z_delcon(&g.with_uniform_weight(&ym), &q)?;
        let n = g.vertex_count() as i64;
        let k = g.component_count() as i64;
        let value = z * pow(&ym, -n) * pow(&xm, -k);
        return Ok(EvalReport { value, method: Method::DeletionContraction, work: 0, memo_hits: 0 });
    }
    let mut rec = TutteRec { x, y, memo: HashMap::new(), nodes: 0, hits: 0, budget: DEFAULT_DELCON_BUDGET };
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let value = rec.eval(g.vertex_count(), edges)?;
    Ok(EvalReport { value, method: Method::TutteRecursion, work: rec.nodes, memo_hits: rec.hits })
}

struct TutteRec<'a> {
    x: &'a Rational,
    y: &'a Rational,
    memo: HashMap<(usize, Vec<(usize, usize)>), Rational>,
    nodes: u64,
    hits: u64,
    budget: u64,
}

impl TutteRec<'_> {
    fn eval(&mut self, n: usize, mut edges: Vec<(usize, usize)>) -> Result<Rational, TutteError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(TutteError::BudgetExceeded(self.budget));
        }
        let loops = edges.iter().filter(|(a, b)| a == b).count();
        edges.retain(|(a, b)| a != b);
        let mut factor = pow(self.y, loops as i64);
        if edges.is_empty() {
            return Ok(factor);
        }
        let key = canonical(n, &edges);
        if let Some(v) = self.memo.get(&key) {
            self.hits += 1;
            return Ok(Rational::from(&factor * v));
        }
        let e = pick_edge(n, &edges);
        let (a, b) = edges[e];
        let rest: Vec<(usize, usize)> = edges.iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &p)| p).collect();
        let con = contract(n, &rest, a, b);
        let value = if is_bridge(n, &rest, a, b) {
            Rational::from(self.x * &self.eval(n - 1, con)?)
        } else {
            self.eval(n, rest)? + self.eval(n - 1, con)?
        };
        self.memo.insert(key, value.clone());
        factor *= value;
        Ok(factor)
    }
}

fn canonical(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<(usize, usize)>) {
    let mut deg = vec![0usize; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (deg[v], v));
    let mut label = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        label[v] = i;
    }
    let mut es: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
        .collect();
    es.sort_unstable();
    (n, es)
}

/// An edge at a minimum-degree non-isolated vertex.
fn pick_edge(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut deg = vec![0usize; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    (0..edges.len())
        .min_by_key(|&i| deg[edges[i].0].min(deg[edges[i].1]))
        .expect("non-empty")
}

fn is_bridge(n: usize, rest: &[(usize, usize)], a: usize, b: usize) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in rest {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![a];
    seen[a] = true;
    while let Some(u) = stack.pop() {
        if u == b {
            return false;
        }
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    true
}

fn contract(_n: usize, rest: &[(usize, usize)], a: usize, b: usize) -> Vec<(usize, usize)> {
    let (keep, gone) = (a.min(b), a.max(b));
    let remap = |x: usize| {
        let x = if x == gone { keep } else { x };
        if x > gone { x - 1 } else { x }
    };
    rest.iter().map(|&(u, v)| (remap(u), remap(v))).collect()
}

/// Chromatic polynomial `(−1)^{n−k} λ^k T(1−λ, 0)` or flow polynomial
/// `(−1)^{m−n+k} T(0, 1−λ)`.
pub fn chromatic_flow_eval(g: &WeightedMultigraph, lambda: &Rational, which: Which) -> Result<Rational, TutteError> {
    let n = g.vertex_count() as i64;
    let m = g.edge_count() as i64;
    let k = g.component_count() as i64;
    let one_minus = Rational::from(1 - lambda.clone());
    let zero = Rational::new();
    Ok(match which {
        Which::Chromatic => {
            let t = tutte_eval(g, &one_minus, &zero)?;
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            t * pow(lambda, k) * sign
        }
        Which::Flow => {
            let t = tutte_eval(g, &zero, &one_minus)?;
            let sign = if (m - n + k) % 2 == 0 { 1 } else { -1 };
            t * sign
        }
    })
}

/// `Σ_σ y^{mono(σ)}` over all `q^n` colourings; loops are always monochromatic.
pub fn colour_sum(g: &WeightedMultigraph, q: u64, y: &Rational) -> Result<Rational, TutteError> {
    colour_sum_with(g, q, y, DEFAULT_COLOUR_BUDGET, Exec::default())
}

pub fn colour_sum_with(g: &WeightedMultigraph, q: u64, y: &Rational, budget: u64, exec: Exec) -> Result<Rational, TutteError> {
    if q == 0 {
        return Err(TutteError::BadColourCount);
    }
    let n = g.vertex_count();
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(TutteError::CapExceeded { what: "colourings", cap: budget as usize, actual: total.min(usize::MAX as u128) as usize });
    }
    let m = g.edge_count();
    // back[v] = neighbours u < v (with multiplicity); loops counted once per colouring.
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut loops = 0usize;
    for e in g.edges() {
        if e.is_loop() {
            loops += 1;
        } else {
            let (lo, hi) = (e.u.min(e.v), e.u.max(e.v));
            back[hi].push(lo);
        }
    }

    fn rec(v: usize, q: usize, back: &[Vec<usize>], col: &mut [usize], mono: usize, hist: &mut [u64]) {
        if v == back.len() {
            hist[mono] += 1;
            return;
        }
        for c in 0..q {
            col[v] = c;
            let add = back[v].iter().filter(|&&u| col[u] == c).count();
            rec(v + 1, q, back, col, mono + add, hist);
        }
    }

    // Fix the colours of a prefix of vertices per task.
    let mut t = 0;
    let mut tasks = 1usize;
    if exec.is_parallel() {
        while t < n && tasks < 256 {
            tasks *= q as usize;
            t += 1;
        }
    }
    let back_ref = &back;
    let parts = exec.map_range(tasks, |mut idx| {
        let mut hist = vec![0u64; m + 1];
        let mut col = vec![0usize; n];
        let mut mono = 0;
        for v in 0..t {
            col[v] = idx % q as usize;
            idx /= q as usize;
            mono += back_ref[v].iter().filter(|&&u| col[u] == col[v]).count();
        }
        rec(t, q as usize, back_ref, &mut col, mono, &mut hist);
        hist
    });
    let mut hist = vec![0u64; m + 1];
    for p in parts {
        for (h, c) in hist.iter_mut().zip(p) {
            *h += c;
        }
    }
    let mut sum = Rational::new();
    for (k, &c) in hist.iter().enumerate() {
        if c != 0 {
            sum += pow(y, (k + loops) as i64) * c;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn c3() -> WeightedMultigraph {
        WeightedMultigraph::cycle(3, &int(1))
    }

    #[test]
    fn triangle_values() {
        assert_eq!(tutte_eval(&c3(), &int(1), &int(1)).unwrap(), int(3));
        assert_eq!(tutte_eval(&c3(), &int(2), &int(0)).unwrap(), int(6));
        assert_eq!(tutte_eval(&c3(), &int(2), &int(2)).unwrap(), int(8));
        assert_eq!(tutte_subset_sum(&c3(), &int(2), &int(2)).unwrap(), int(8));
    }

    #[test]
    fn routes_agree_off_the_lines() {
        let mut g = WeightedMultigraph::complete(4, &int(1));
        g.add_edge(0, 1, int(1)).unwrap();
        g.add_edge(2, 2, int(1)).unwrap();
        for (x, y) in [(rat(3, 2), rat(-1, 3)), (int(1), int(5)), (int(-2), int(1)), (int(1), int(1))] {
            assert_eq!(tutte_eval(&g, &x, &y).unwrap(), tutte_subset_sum(&g, &x, &y).unwrap(), "{x} {y}");
        }
    }

    #[test]
    fn chromatic_and_flow() {
        let k2 = WeightedMultigraph::complete(2, &int(1));
        assert_eq!(chromatic_flow_eval(&k2, &int(3), Which::Chromatic).unwrap(), int(6));
        assert_eq!(chromatic_flow_eval(&c3(), &int(3), Which::Chromatic).unwrap(), int(6));
        assert_eq!(chromatic_flow_eval(&c3(), &int(2), Which::Flow).unwrap(), int(1));
    }

    #[test]
    fn colour_sums() {
        assert_eq!(colour_sum(&c3(), 3, &rat(1, 2)).unwrap(), rat(123, 8));
        let k8 = c3().thicken(8);
        let expect = int(6) + rat(18, 256) + rat(3, 1 << 24);
        assert_eq!(colour_sum(&k8, 3, &rat(1, 2)).unwrap(), expect);
        let g = WeightedMultigraph::complete(4, &int(1));
        assert_eq!(colour_sum(&g, 3, &int(1)).unwrap(), int(81));
        assert_eq!(
            colour_sum_with(&g, 3, &rat(2, 7), 1000, Exec::Sequential).unwrap(),
            colour_sum_with(&g, 3, &rat(2, 7), 1000, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn colour_budget() {
        let g = WeightedMultigraph::new(30);
        assert!(matches!(colour_sum(&g, 3, &int(2)), Err(TutteError::CapExceeded { .. })));
    }
}
