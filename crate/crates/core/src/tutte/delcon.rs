//! Memoised deletion–contraction with series/parallel pre-reductions.
//!
//! Reductions applied until none fire (each with its exact scale factor):
//! loop `(1+w)`, parallel merge `(1+w₁)(1+w₂)−1`, zero-weight deletion,
//! isolated vertex `q`, pendant edge `(q+w)`, and series contraction
//! `w₁w₂/(q+w₁+w₂)` with factor `(q+w₁+w₂)` whenever that factor is non-zero.

use std::collections::HashMap;

use crate::graph::WeightedMultigraph;
use crate::rational::{is_zero, pow, Rational};

use super::{EvalReport, Method, TutteError};

pub const DEFAULT_DELCON_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug)]
struct Work {
    n: usize,
    edges: Vec<(usize, usize, Rational)>,
}

type Key = (usize, Vec<(u32, u32, Rational)>);

struct Ctx<'a> {
    q: &'a Rational,
    memo: HashMap<Key, Rational>,
    nodes: u64,
    hits: u64,
    budget: u64,
}

pub fn z_delcon(g: &WeightedMultigraph, q: &Rational) -> Result<Rational, TutteError> {
    z_delcon_report(g, q, DEFAULT_DELCON_BUDGET).map(|r| r.value)
}

pub fn z_delcon_report(g: &WeightedMultigraph, q: &Rational, budget: u64) -> Result<EvalReport, TutteError> {
    let work = Work {
        n: g.vertex_count(),
        edges: g.edges().iter().map(|e| (e.u, e.v, e.weight.clone())).collect(),
    };
    let mut ctx = Ctx { q, memo: HashMap::new(), nodes: 0, hits: 0, budget };
    let value = eval(&mut ctx, work)?;
    Ok(EvalReport { value, method: Method::DeletionContraction, work: ctx.nodes, memo_hits: ctx.hits })
}

fn eval(ctx: &mut Ctx<'_>, w: Work) -> Result<Rational, TutteError> {
    ctx.nodes += 1;
    if ctx.nodes > ctx.budget {
        return Err(TutteError::BudgetExceeded(ctx.budget));
    }
    let (mut factor, w) = reduce(ctx.q, w);
    if is_zero(&factor) {
        return Ok(factor);
    }
    for comp in split_components(w) {
        let v = if comp.edges.is_empty() { pow(ctx.q, comp.n as i64) } else { branch(ctx, comp)? };
        factor *= v;
        if is_zero(&factor) {
            break;
        }
    }
    Ok(factor)
}

fn branch(ctx: &mut Ctx<'_>, w: Work) -> Result<Rational, TutteError> {
    let (key, w) = canonical(w);
    if let Some(v) = ctx.memo.get(&key) {
        ctx.hits += 1;
        return Ok(v.clone());
    }
    let mut deg = vec![0usize; w.n];
    for &(a, b, _) in &w.edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let v = (0..w.n).min_by_key(|&v| (deg[v], v)).expect("non-empty");
    let ei = w.edges.iter().position(|&(a, b, _)| a == v || b == v).expect("vertex has an edge");
    let (a, b, we) = w.edges[ei].clone();

    let mut del = w.clone();
    del.edges.swap_remove(ei);

    // Contract: merge b into a, then close the gap left by b.
    let (keep, gone) = (a.min(b), a.max(b));
    let remap = |x: usize| {
        let x = if x == gone { keep } else { x };
        if x > gone { x - 1 } else { x }
    };
    let con = Work {
        n: w.n - 1,
        edges: w
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ei)
            .map(|(_, (x, y, wt))| (remap(*x), remap(*y), wt.clone()))
            .collect(),
    };

    let mut value = eval(ctx, del)?;
    let c = eval(ctx, con)?;
    value += c * we;
    ctx.memo.insert(key, value.clone());
    Ok(value)
}

/// Apply reductions to a fixpoint; returns the accumulated factor and the
/// compacted remainder (every remaining vertex has ≥3 distinct neighbours
/// or sits on a degenerate series pair).
fn reduce(q: &Rational, w: Work) -> (Rational, Work) {
    let n = w.n;
    let mut edges: Vec<Option<(usize, usize, Rational)>> = w.edges.into_iter().map(Some).collect();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        let (a, b, _) = e.as_ref().unwrap();
        inc[*a].push(i);
        if a != b {
            inc[*b].push(i);
        }
    }
    let mut alive = vec![true; n];
    let mut factor = Rational::from(1);
    let mut queued = vec![true; n];
    let mut queue: Vec<usize> = (0..n).rev().collect();

    macro_rules! push {
        ($x:expr) => {{
            let x = $x;
            if alive[x] && !queued[x] {
                queued[x] = true;
                queue.push(x);
            }
        }};
    }

    while let Some(v) = queue.pop() {
        queued[v] = false;
        if !alive[v] {
            continue;
        }
        inc[v].retain(|&e| edges[e].is_some());

        // Loops.
        let mut i = 0;
        while i < inc[v].len() {
            let e = inc[v][i];
            let (a, b, _) = edges[e].as_ref().unwrap();
            if a == b {
                let (_, _, wt) = edges[e].take().unwrap();
                factor *= wt + 1u32;
                inc[v].swap_remove(i);
            } else {
                i += 1;
            }
        }

        // Parallel classes and zero weights.
        let mut first: HashMap<usize, usize> = HashMap::new();
        let list = std::mem::take(&mut inc[v]);
        let mut kept = Vec::with_capacity(list.len());
        for e in list {
            let (a, b, wt) = edges[e].clone().unwrap();
            let other = if a == v { b } else { a };
            if let Some(&f) = first.get(&other) {
                let wf = &mut edges[f].as_mut().unwrap().2;
                let merged = Rational::from(&*wf + 1u32) * (wt + 1u32) - 1u32;
                *wf = merged;
                edges[e] = None;
                push!(other);
            } else {
                first.insert(other, e);
                kept.push(e);
            }
        }
        kept.retain(|&e| {
            let (a, b, wt) = edges[e].as_ref().unwrap();
            if is_zero(wt) {
                let other = if *a == v { *b } else { *a };
                edges[e] = None;
                push!(other);
                false
            } else {
                true
            }
        });
        inc[v] = kept;

        match inc[v].len() {
            0 => {
                factor *= q;
                alive[v] = false;
            }
            1 => {
                let (a, b, wt) = edges[inc[v][0]].take().unwrap();
                let other = if a == v { b } else { a };
                factor *= Rational::from(q + &wt);
                alive[v] = false;
                inc[v].clear();
                push!(other);
            }
            2 => {
                let (e1, e2) = (inc[v][0], inc[v][1]);
                let (a1, b1, w1) = edges[e1].clone().unwrap();
                let (a2, b2, w2) = edges[e2].clone().unwrap();
                let u = if a1 == v { b1 } else { a1 };
                let x = if a2 == v { b2 } else { a2 };
                let s = Rational::from(q + &w1) + &w2;
                if !is_zero(&s) {
                    let nw = Rational::from(&w1 * &w2) / &s;
                    factor *= s;
                    edges[e1] = None;
                    edges[e2] = None;
                    alive[v] = false;
                    inc[v].clear();
                    let id = edges.len();
                    edges.push(Some((u, x, nw)));
                    inc[u].push(id);
                    inc[x].push(id);
                    push!(u);
                    push!(x);
                }
            }
            _ => {}
        }
        if is_zero(&factor) {
            return (factor, Work { n: 0, edges: Vec::new() });
        }
    }

    let mut index = vec![usize::MAX; n];
    let mut m = 0;
    for v in 0..n {
        if alive[v] {
            index[v] = m;
            m += 1;
        }
    }
    let edges = edges
        .into_iter()
        .flatten()
        .map(|(a, b, wt)| (index[a], index[b], wt))
        .collect();
    (factor, Work { n: m, edges })
}

fn split_components(w: Work) -> Vec<Work> {
    let n = w.n;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b, _) in &w.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut local = vec![0; n];
    let mut comps: Vec<Work> = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        if comp_of[r] == usize::MAX {
            comp_of[r] = comps.len();
            comps.push(Work { n: 0, edges: Vec::new() });
        }
        let c = comp_of[r];
        local[v] = comps[c].n;
        comps[c].n += 1;
    }
    for (a, b, wt) in w.edges {
        let c = comp_of[find(&mut parent, a)];
        comps[c].edges.push((local[a], local[b], wt));
    }
    comps
}

/// Relabel vertices by (degree, old index) and sort edges; the key is the full
/// encoding, so equal keys mean equal weighted graphs.
fn canonical(w: Work) -> (Key, Work) {
    let mut deg = vec![0usize; w.n];
    for &(a, b, _) in &w.edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut order: Vec<usize> = (0..w.n).collect();
    order.sort_by_key(|&v| (deg[v], v));
    let mut label = vec![0usize; w.n];
    for (i, &v) in order.iter().enumerate() {
        label[v] = i;
    }
    let mut edges: Vec<(usize, usize, Rational)> = w
        .edges
        .into_iter()
        .map(|(a, b, wt)| {
            let (x, y) = (label[a], label[b]);
            (x.min(y), x.max(y), wt)
        })
        .collect();
    edges.sort();
    let key = (w.n, edges.iter().map(|(a, b, wt)| (*a as u32, *b as u32, wt.clone())).collect());
    (key, Work { n: w.n, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::three_stretch;
    use crate::rational::{int, rat};
    use crate::tutte::z_bruteforce;

    #[test]
    fn triangle_and_edgeless() {
        assert_eq!(z_delcon(&WeightedMultigraph::cycle(3, &int(1)), &int(2)).unwrap(), int(28));
        assert_eq!(z_delcon(&WeightedMultigraph::new(5), &int(3)).unwrap(), int(243));
    }

    #[test]
    fn stretched_k4_matches_enumeration() {
        let k4 = WeightedMultigraph::complete(4, &int(1));
        let s = three_stretch(&k4).unwrap().graph;
        assert_eq!(z_delcon(&s, &int(2)).unwrap(), z_bruteforce(&s, &int(2)).unwrap());
    }

    #[test]
    fn degenerate_series_falls_back_to_branching() {
        // q + w1 + w2 = 0 on every series pair of the 4-cycle.
        let g = WeightedMultigraph::cycle(4, &rat(-1, 2));
        assert_eq!(z_delcon(&g, &int(1)).unwrap(), z_bruteforce(&g, &int(1)).unwrap());
    }

    #[test]
    fn k5_with_loops_and_parallels() {
        let mut g = WeightedMultigraph::complete(5, &rat(2, 3));
        g.add_edge(0, 1, rat(-1, 4)).unwrap();
        g.add_edge(2, 2, rat(5, 1)).unwrap();
        let q = rat(7, 3);
        assert_eq!(z_delcon(&g, &q).unwrap(), z_bruteforce(&g, &q).unwrap());
    }

    #[test]
    fn budget_error() {
        let g = WeightedMultigraph::complete(6, &int(1));
        assert_eq!(z_delcon_report(&g, &int(2), 3), Err(TutteError::BudgetExceeded(3)));
    }
}
