//! Z split by the partition that a subset induces on a set of terminals.

use std::collections::HashMap;
use std::fmt;

use crate::graph::WeightedMultigraph;
use crate::par::Exec;
use crate::rational::{is_zero, pow, Rational};

use super::brute::{enumerate_weighted, DEFAULT_BRUTE_CAP};
use super::delcon::z_delcon;
use super::poly::{interpolate, poly_eval};
use super::TutteError;

/// A set partition of terminal positions `0..k`, stored as restricted-growth
/// labels (`labels[0] = 0`, each label at most one more than any before it).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TerminalPartition {
    labels: Vec<u8>,
}

impl TerminalPartition {
    /// Normalise arbitrary block ids into restricted-growth form.
    pub fn from_ids<T: Eq + Copy>(ids: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let labels = ids
            .iter()
            .map(|id| match seen.iter().position(|s| s == id) {
                Some(p) => p as u8,
                None => {
                    seen.push(*id);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        TerminalPartition { labels }
    }

    /// Parse block notation such as `"0|12"`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut ids: Vec<Option<usize>> = Vec::new();
        for (b, block) in s.split('|').enumerate() {
            if block.is_empty() {
                return None;
            }
            for ch in block.chars() {
                let t = ch.to_digit(10)? as usize;
                if ids.len() <= t {
                    ids.resize(t + 1, None);
                }
                if ids[t].is_some() {
                    return None;
                }
                ids[t] = Some(b);
            }
        }
        let ids: Option<Vec<usize>> = ids.into_iter().collect();
        Some(Self::from_ids(&ids?))
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Self) -> Self {
        let k = self.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for part in [self, other] {
            for block in part.blocks() {
                for w in block.windows(2) {
                    let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                    parent[a] = b;
                }
            }
        }
        let ids: Vec<usize> = (0..k).map(|i| find(&mut parent, i)).collect();
        Self::from_ids(&ids)
    }

    /// All set partitions of `k` terminals in lexicographic label order.
    pub fn all(k: usize) -> Vec<Self> {
        fn rec(cur: &mut Vec<u8>, k: usize, max: u8, out: &mut Vec<TerminalPartition>) {
            if cur.len() == k {
                out.push(TerminalPartition { labels: cur.clone() });
                return;
            }
            let top = if cur.is_empty() { 0 } else { max + 1 };
            for l in 0..=top {
                cur.push(l);
                rec(cur, k, max.max(l), out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k == 0 {
            out.push(TerminalPartition { labels: Vec::new() });
        } else {
            rec(&mut Vec::new(), k, 0, &mut out);
        }
        out
    }
}

impl fmt::Display for TerminalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|t| t.to_string()).collect())
            .collect();
        write!(f, "{}", blocks.join("|"))
    }
}

/// Values for every partition of the terminals (zeros included), in
/// `TerminalPartition::all` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    pub terminals: Vec<usize>,
    pub entries: Vec<(TerminalPartition, Rational)>,
}

impl PartitionTable {
    pub fn get(&self, p: &TerminalPartition) -> Rational {
        self.entries.iter().find(|(q, _)| q == p).map(|(_, v)| v.clone()).unwrap_or_default()
    }

    /// Look up by block notation, e.g. `"0|12"`. Unknown names give zero.
    pub fn by_name(&self, name: &str) -> Rational {
        TerminalPartition::parse(name).map(|p| self.get(&p)).unwrap_or_default()
    }

    pub fn total(&self) -> Rational {
        self.entries.iter().map(|(_, v)| v).sum()
    }
}

/// Split Z(G; q, w) by induced terminal partition. Uses subset enumeration
/// within the enumeration cap; otherwise solves the identification system
/// `Z(G/π) = Σ_σ q^{|σ∨π|−|σ|} Z_σ` with deletion–contraction.
pub fn z_terminal_partitions(g: &WeightedMultigraph, q: &Rational, terminals: &[usize]) -> Result<PartitionTable, TutteError> {
    check_terminals(g, terminals)?;
    if g.edge_count() <= DEFAULT_BRUTE_CAP {
        partitions_brute(g, q, terminals, Exec::default())
    } else {
        partitions_identify(g, q, terminals)
    }
}

fn check_terminals(g: &WeightedMultigraph, terminals: &[usize]) -> Result<(), TutteError> {
    if terminals.len() > 8 {
        return Err(TutteError::BadTerminals(format!("{} terminals (at most 8 supported)", terminals.len())));
    }
    for (i, &t) in terminals.iter().enumerate() {
        if t >= g.vertex_count() {
            return Err(TutteError::BadTerminals(format!("terminal {t} is not a vertex")));
        }
        if terminals[..i].contains(&t) {
            return Err(TutteError::BadTerminals(format!("terminal {t} repeated")));
        }
    }
    Ok(())
}

pub(crate) fn partitions_brute(g: &WeightedMultigraph, q: &Rational, terminals: &[usize], exec: Exec) -> Result<PartitionTable, TutteError> {
    let n = g.vertex_count();
    let qpow: Vec<Rational> = (0..=n).map(|k| pow(q, k as i64)).collect();
    let parts = enumerate_weighted(g, exec, HashMap::<TerminalPartition, Rational>::new, |acc, dsu, k, w| {
        let ids: Vec<u32> = terminals.iter().map(|&t| dsu.find(t as u32)).collect();
        let key = TerminalPartition::from_ids(&ids);
        *acc.entry(key).or_default() += Rational::from(w * &qpow[k]);
    });
    let mut total: HashMap<TerminalPartition, Rational> = HashMap::new();
    for p in parts {
        for (k, v) in p {
            *total.entry(k).or_default() += v;
        }
    }
    let entries = TerminalPartition::all(terminals.len())
        .into_iter()
        .map(|p| {
            let v = total.remove(&p).unwrap_or_default();
            (p, v)
        })
        .collect();
    Ok(PartitionTable { terminals: terminals.to_vec(), entries })
}

fn identify(g: &WeightedMultigraph, terminals: &[usize], p: &TerminalPartition) -> WeightedMultigraph {
    let n = g.vertex_count();
    let mut rep: Vec<usize> = (0..n).collect();
    for block in p.blocks() {
        for &i in &block[1..] {
            rep[terminals[i]] = terminals[block[0]];
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut m = 0;
    for v in 0..n {
        if rep[v] == v {
            index[v] = m;
            m += 1;
        }
    }
    let mut out = WeightedMultigraph::new(m);
    for e in g.edges() {
        out.add_edge(index[rep[e.u]], index[rep[e.v]], e.weight.clone()).expect("in range");
    }
    out
}

fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !is_zero(&a[r][col]))?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !is_zero(&a[r][col]) {
                let f = Rational::from(&a[r][col] / &a[col][col]);
                for c in col..n {
                    let d = Rational::from(&f * &a[col][c]);
                    a[r][c] -= d;
                }
                let d = Rational::from(&f * &b[col]);
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| Rational::from(&b[i] / &a[i][i])).collect())
}

fn identify_at(q: &Rational, parts: &[TerminalPartition], quotients: &[WeightedMultigraph]) -> Result<Option<Vec<Rational>>, TutteError> {
    if is_zero(q) {
        return Ok(None);
    }
    let mut rhs = Vec::with_capacity(parts.len());
    for h in quotients {
        rhs.push(z_delcon(h, q)?);
    }
    let a: Vec<Vec<Rational>> = parts
        .iter()
        .map(|pi| {
            parts
                .iter()
                .map(|s| pow(q, s.join(pi).block_count() as i64 - s.block_count() as i64))
                .collect()
        })
        .collect();
    Ok(solve(a, rhs))
}

fn partitions_identify(g: &WeightedMultigraph, q: &Rational, terminals: &[usize]) -> Result<PartitionTable, TutteError> {
    let parts = TerminalPartition::all(terminals.len());
    let quotients: Vec<WeightedMultigraph> = parts.iter().map(|p| identify(g, terminals, p)).collect();
    if let Some(v) = identify_at(q, &parts, &quotients)? {
        let entries = parts.into_iter().zip(v).collect();
        return Ok(PartitionTable { terminals: terminals.to_vec(), entries });
    }
    // Singular at q: Z_σ / q^{|σ|} is a polynomial of degree ≤ n − |σ| in q,
    // so interpolate it from nearby regular points.
    let n = g.vertex_count();
    let mut samples: Vec<(Rational, Vec<Rational>)> = Vec::new();
    let mut j: i64 = 1;
    while samples.len() <= n {
        if j > 64 * (n as i64 + 1) {
            return Err(TutteError::Singular);
        }
        let qs = Rational::from(q + Rational::from((j, 7)));
        j += 1;
        if let Some(v) = identify_at(&qs, &parts, &quotients)? {
            samples.push((qs, v));
        }
    }
    let entries = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let b = p.block_count() as i64;
            let pts: Vec<(Rational, Rational)> = samples
                .iter()
                .map(|(qs, v)| (qs.clone(), Rational::from(&v[i] * &pow(qs, -b))))
                .collect();
            let c = interpolate(&pts);
            (p.clone(), poly_eval(&c, q) * pow(q, b))
        })
        .collect();
    Ok(PartitionTable { terminals: terminals.to_vec(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn y_gadget(a: &Rational, b: &Rational) -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new(6);
        for (u, v) in [(0, 3), (1, 4), (2, 5)] {
            g.add_edge(u, v, b.clone()).unwrap();
        }
        for (u, v) in [(3, 4), (4, 5), (3, 5)] {
            g.add_edge(u, v, a.clone()).unwrap();
        }
        g
    }

    #[test]
    fn partition_basics() {
        assert_eq!(TerminalPartition::all(3).len(), 5);
        assert_eq!(TerminalPartition::all(4).len(), 15);
        let p = TerminalPartition::parse("0|12").unwrap();
        assert_eq!(p.to_string(), "0|12");
        assert_eq!(TerminalPartition::parse("02|1").unwrap().labels(), &[0, 1, 0]);
        assert_eq!(p.join(&TerminalPartition::parse("01|2").unwrap()).to_string(), "012");
        assert!(TerminalPartition::parse("0|0").is_none());
    }

    #[test]
    fn single_edge_and_isolated() {
        let g = WeightedMultigraph::uniform(2, &[(0, 1)], &int(3)).unwrap();
        let t = z_terminal_partitions(&g, &int(2), &[0, 1]).unwrap();
        assert_eq!(t.by_name("01"), int(6));
        assert_eq!(t.by_name("0|1"), int(4));
        let e = WeightedMultigraph::new(2);
        let t = z_terminal_partitions(&e, &int(3), &[0, 1]).unwrap();
        assert_eq!(t.by_name("0|1"), int(9));
        assert_eq!(t.by_name("01"), int(0));
    }

    #[test]
    fn y_gadget_table() {
        let t = z_terminal_partitions(&y_gadget(&int(1), &int(1)), &int(2), &[0, 1, 2]).unwrap();
        assert_eq!(t.by_name("012"), int(8));
        for name in ["0|12", "1|02", "2|01"] {
            assert_eq!(t.by_name(name), int(28));
        }
        assert_eq!(t.by_name("0|1|2"), int(664));
        assert_eq!(t.total(), int(756));
    }

    #[test]
    fn identification_path_matches_enumeration() {
        let g = y_gadget(&rat(-2, 3), &rat(5, 2));
        for q in [rat(7, 3), int(2), int(1), int(0), rat(-1, 2)] {
            let brute = partitions_brute(&g, &q, &[0, 1, 2], Exec::Sequential).unwrap();
            let ident = partitions_identify(&g, &q, &[0, 1, 2]).unwrap();
            assert_eq!(brute, ident, "q = {q}");
        }
    }

    #[test]
    fn bad_terminals() {
        let g = WeightedMultigraph::new(3);
        assert!(z_terminal_partitions(&g, &int(2), &[0, 0]).is_err());
        assert!(z_terminal_partitions(&g, &int(2), &[5]).is_err());
    }
}
