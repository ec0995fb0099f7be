//! Splitting Z(Ĝ) by how each gadget's terminals are connected, by brute
//! force on toy assemblies, and the closed form for independent joined sets.

use std::fmt;

use crate::graph::independent_sets;
use crate::par::Exec;
use crate::rational::{is_zero, pow, Rational};
use crate::tutte::{z_delcon, DEFAULT_BRUTE_CAP};

use super::assembly::Assembled;
use super::ygadget::y_closed_forms;
use super::ReductionError;

/// How the three terminals of one gadget are connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// All three in one component (the set S).
    Joined,
    /// Exactly two components (D).
    Pair,
    /// Three components (T).
    Split,
}

/// An ordered partition (S, D, T) of the gadgets, stored per gadget.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SdtPartition {
    pub patterns: Vec<Pattern>,
}

impl SdtPartition {
    pub fn new(patterns: Vec<Pattern>) -> Self {
        SdtPartition { patterns }
    }

    /// Base-3 code: Joined = 0, Pair = 1, Split = 2, gadget 0 least significant.
    pub fn code(&self) -> usize {
        self.patterns.iter().rev().fold(0, |acc, p| acc * 3 + *p as usize)
    }

    pub fn from_code(mut code: usize, n: usize) -> Self {
        let mut patterns = Vec::with_capacity(n);
        for _ in 0..n {
            patterns.push([Pattern::Joined, Pattern::Pair, Pattern::Split][code % 3]);
            code /= 3;
        }
        SdtPartition { patterns }
    }

    /// All 3ⁿ partitions in code order.
    pub fn all(n: usize) -> Vec<Self> {
        (0..3usize.pow(n as u32)).map(|c| Self::from_code(c, n)).collect()
    }

    pub fn members(&self, p: Pattern) -> Vec<usize> {
        self.patterns.iter().enumerate().filter(|(_, &x)| x == p).map(|(i, _)| i).collect()
    }

    pub fn joined_mask(&self) -> Vec<bool> {
        self.patterns.iter().map(|&p| p == Pattern::Joined).collect()
    }
}

impl fmt::Display for SdtPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p| self.members(p).iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "S={{{}}} D={{{}}} T={{{}}}", show(Pattern::Joined), show(Pattern::Pair), show(Pattern::Split))
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// `Z_{S,D,T}` for every partition, by enumerating all `A ⊆ E` and `B ⊆ E′`.
/// Terminal connectivity is read in `(V̂, A)`.
pub fn z_sdt_all(asm: &Assembled) -> Result<Vec<(SdtPartition, Rational)>, ReductionError> {
    let g = &asm.graph;
    if g.edge_count() > DEFAULT_BRUTE_CAP {
        return Err(ReductionError::CapExceeded { what: "(S,D,T) enumeration", cap: DEFAULT_BRUTE_CAP, actual: g.edge_count() });
    }
    let n = asm.local.len();
    let nv = g.vertex_count();
    let inner = 6 * n;
    let edges: Vec<(usize, usize, Rational)> = g.edges().iter().map(|e| (e.u, e.v, e.weight.clone())).collect();
    let links = &edges[inner..];
    let q = &asm.q;
    let parts = Exec::default().map_range(1usize << inner, |amask| {
        let mut parent: Vec<usize> = (0..nv).collect();
        let mut wa = Rational::from(1);
        for (i, (u, v, w)) in edges[..inner].iter().enumerate() {
            if amask >> i & 1 == 1 {
                wa *= w;
                let (ru, rv) = (find(&mut parent, *u), find(&mut parent, *v));
                parent[ru] = rv;
            }
        }
        if is_zero(&wa) {
            return None;
        }
        let mut code = 0;
        for loc in asm.local.iter().rev() {
            let r: Vec<usize> = (0..3).map(|i| find(&mut parent, loc[i])).collect();
            let distinct = 1 + (r[1] != r[0]) as usize + (r[2] != r[0] && r[2] != r[1]) as usize;
            code = code * 3 + (distinct - 1);
        }
        let mut inner_sum = Rational::new();
        for bmask in 0..1usize << links.len() {
            let mut p = parent.clone();
            let mut wb = Rational::from(1);
            for (i, (u, v, w)) in links.iter().enumerate() {
                if bmask >> i & 1 == 1 {
                    wb *= w;
                    let (ru, rv) = (find(&mut p, *u), find(&mut p, *v));
                    p[ru] = rv;
                }
            }
            let kappa = (0..nv).filter(|&x| find(&mut p, x) == x).count();
            inner_sum += wb * pow(q, kappa as i64);
        }
        Some((code, wa * inner_sum))
    });
    let mut total = vec![Rational::new(); 3usize.pow(n as u32)];
    for (code, v) in parts.into_iter().flatten() {
        total[code] += v;
    }
    Ok(total.into_iter().enumerate().map(|(c, v)| (SdtPartition::from_code(c, n), v)).collect())
}

pub fn z_sdt_exact(asm: &Assembled, sdt: &SdtPartition) -> Result<Rational, ReductionError> {
    if sdt.patterns.len() != asm.local.len() {
        return Err(ReductionError::Precondition("partition size differs from gadget count".into()));
    }
    let all = z_sdt_all(asm)?;
    Ok(all.into_iter().find(|(p, _)| p == sdt).map(|(_, v)| v).unwrap_or_default())
}

/// Which power of the identification count multiplies the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefactorReading {
    /// `q^{−m}`: `(q²Z₀₁₂/Z₀|₁|₂)^k Z₀|₁|₂ⁿ q^{−3n} Z(Γ_S)`.
    QPower,
    /// `3^{−m}` in place of `q^{−m}`, i.e. the above times `(q/3)^m`.
    ThreePower,
}

/// Closed form of `Z_{S,∅,T}` for an independent joined set `s`.
pub fn independent_class_closed_form(asm: &Assembled, s: &[bool], reading: PrefactorReading) -> Result<Rational, ReductionError> {
    let n = asm.local.len();
    if s.len() != n {
        return Err(ReductionError::Precondition("joined set size differs from gadget count".into()));
    }
    let mask: u64 = s.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| 1u64 << i).sum();
    let gg = asm.assembly.gadget_graph();
    if !independent_sets(&gg, 64)?.contains(&mask) {
        return Err(ReductionError::Precondition("joined set is not independent".into()));
    }
    let y = y_closed_forms(&asm.q, &asm.a, &asm.b)?;
    let k = s.iter().filter(|&&b| b).count() as i64;
    let gamma = asm.assembly.gamma(s, &asm.beta);
    let zg = z_delcon(&gamma, &asm.q)?;
    let mut v = pow(&y.fugacity()?, k) * pow(&y.z0_1_2, n as i64) * pow(&asm.q, -3 * n as i64) * zg;
    if reading == PrefactorReading::ThreePower {
        let m = asm.assembly.identifications().len() as i64;
        v *= pow(&(Rational::from(&asm.q / 3u32)), m);
    }
    Ok(v)
}
