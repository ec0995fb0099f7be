//! Exact univariate interpolation and Z as a polynomial in q.

use crate::graph::WeightedMultigraph;
use crate::par::Exec;
use std::collections::BTreeMap;

use crate::rational::Rational;

use super::brute::{kappa_sums, DEFAULT_BRUTE_CAP};
use super::delcon::z_delcon;
use super::TutteError;

/// Monomial coefficients (constant first) of the unique polynomial of degree
/// `< points.len()` through `points`. Abscissae must be distinct.
pub fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    // Newton divided differences.
    let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = Rational::from(&dd[i] - &dd[i - 1]);
            let den = Rational::from(&points[i].0 - &points[i - j].0);
            dd[i] = num / den;
        }
    }
    // Horner expansion of the Newton form.
    let mut coeffs = vec![Rational::new(); n];
    for i in (0..n).rev() {
        // coeffs ← coeffs·(X − x_i) + dd[i]
        let xi = &points[i].0;
        let mut next = vec![Rational::new(); n];
        for k in 0..n {
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= Rational::from(&coeffs[k] * xi);
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

pub fn poly_eval(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

/// Coefficients of Z(G; q, w) in q (constant first, length n+1).
///
/// Loops, parallel classes, isolated vertices and pendant edges are peeled
/// off as exact polynomial factors; only the remaining core is enumerated
/// (or interpolated from deletion–contraction values if it is too large).
pub fn z_coeffs_in_q(g: &WeightedMultigraph) -> Result<Vec<Rational>, TutteError> {
    let n = g.vertex_count();
    let mut scalar = Rational::from(1);
    let mut merged: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for e in g.edges() {
        if e.is_loop() {
            scalar *= Rational::from(&e.weight + 1u32);
            continue;
        }
        let key = (e.u.min(e.v), e.u.max(e.v));
        let y = Rational::from(&e.weight + 1u32);
        let slot = merged.entry(key).or_insert_with(|| Rational::from(1));
        *slot *= y;
    }
    let mut adj: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
    for ((u, v), y) in merged {
        let w = y - 1u32;
        if w != 0 {
            adj[u].insert(v, w.clone());
            adj[v].insert(u, w);
        }
    }
    let mut alive = vec![true; n];
    let mut poly = vec![scalar];
    let mut stack: Vec<usize> = (0..n).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || adj[v].len() > 1 {
            continue;
        }
        alive[v] = false;
        match adj[v].pop_first() {
            None => poly.insert(0, Rational::new()),
            Some((u, w)) => {
                adj[u].remove(&v);
                poly = poly_mul(&poly, &[w, Rational::from(1)]);
                stack.push(u);
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if core.is_empty() {
        return Ok(poly);
    }
    let mut idx = vec![usize::MAX; n];
    for (i, &v) in core.iter().enumerate() {
        idx[v] = i;
    }
    let mut h = WeightedMultigraph::new(core.len());
    for &v in &core {
        for (&u, w) in &adj[v] {
            if v < u {
                h.add_edge(idx[v], idx[u], w.clone())?;
            }
        }
    }
    let core_poly = if h.edge_count() <= DEFAULT_BRUTE_CAP {
        kappa_sums(&h, DEFAULT_BRUTE_CAP, Exec::Sequential)?
    } else {
        let k = h.vertex_count();
        let mut pts = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let q = Rational::from(i as u32 + 1);
            let z = z_delcon(&h, &q)?;
            pts.push((q, z));
        }
        interpolate(&pts)
    };
    let mut out = poly_mul(&poly, &core_poly);
    out.truncate(n + 1);
    out.resize(n + 1, Rational::new());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn recovers_cubic() {
        let c = vec![int(3), rat(-1, 2), int(0), int(2)];
        let pts: Vec<_> = [-1, 0, 2, 5].iter().map(|&x| (int(x), poly_eval(&c, &int(x)))).collect();
        assert_eq!(interpolate(&pts), c);
    }

    #[test]
    fn triangle_coeffs() {
        // Z(C3; q, 1) = q^3 + 3q^2 + 3q + q = q^3 + 3q^2 + 4q.
        let g = WeightedMultigraph::cycle(3, &int(1));
        assert_eq!(z_coeffs_in_q(&g).unwrap(), vec![int(0), int(4), int(3), int(1)]);
    }

    #[test]
    fn peeling_matches_enumeration() {
        let mut g = WeightedMultigraph::cycle(4, &rat(-1, 2));
        for (u, v, w) in [(0, 4, rat(2, 3)), (4, 5, int(-1)), (1, 1, rat(1, 3)), (2, 3, int(2)), (0, 2, rat(-3, 4))] {
            while g.vertex_count() <= v.max(u) {
                g.add_vertex();
            }
            g.add_edge(u, v, w).unwrap();
        }
        g.add_vertex();
        let direct = kappa_sums(&g, 24, Exec::Sequential).unwrap();
        assert_eq!(z_coeffs_in_q(&g).unwrap(), direct);
    }
}
