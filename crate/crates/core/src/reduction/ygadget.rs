//! The six-vertex Y gadget and its terminal-partition closed forms.

use crate::graph::WeightedMultigraph;
use crate::rational::{is_zero, Rational};
use crate::tutte::{z_bruteforce, z_terminal_partitions, PartitionTable, TutteError};

use super::ReductionError;

/// Y with terminals `0,1,2` and inner vertices `3,4,5` (`3` is 0̄ and so on).
/// Edges 0–2 are the spokes `(i, i+3)` of weight `b`; edges 3–5 the inner
/// triangle `(3,4), (4,5), (5,3)` of weight `a`.
pub fn y_gadget(a: &Rational, b: &Rational) -> WeightedMultigraph {
    let mut g = WeightedMultigraph::new(6);
    for i in 0..3 {
        g.add_edge(i, i + 3, b.clone()).expect("in range");
    }
    for (u, v) in [(3, 4), (4, 5), (5, 3)] {
        g.add_edge(u, v, a.clone()).expect("in range");
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YGadgetReport {
    pub q: Rational,
    pub a: Rational,
    pub b: Rational,
    /// `a² + 3a + q`
    pub c: Rational,
    /// `a³ + 3a² − q`
    pub e: Rational,
    /// `a² + 3a + q + b`
    pub d: Rational,
    pub z012: Rational,
    /// One of the three (symmetric) two-block classes.
    pub z0_12: Rational,
    pub z0_1_2: Rational,
}

pub fn y_closed_forms(q: &Rational, a: &Rational, b: &Rational) -> Result<YGadgetReport, ReductionError> {
    if is_zero(q) {
        return Err(ReductionError::ZeroQ);
    }
    let a2 = Rational::from(a * a);
    let a3 = Rational::from(&a2 * a);
    let b2 = Rational::from(b * b);
    let b3 = Rational::from(&b2 * b);
    let q2 = Rational::from(q * q);
    let q3 = Rational::from(&q2 * q);
    let c = Rational::from(&a2 + &(Rational::from(a * 3u32))) + q;
    let e = Rational::from(&a3 + &(Rational::from(&a2 * 3u32))) - q;
    let d = Rational::from(&c + b);
    let z012 = Rational::from(q * &a2) * Rational::from(a + 3u32) * &b3;
    let z0_12 = Rational::from(&q2 * a) * &b2 * &d;
    let inner = a3 + Rational::from(&a2 * 3u32) + Rational::from(a * q) * 3u32 + &q2;
    let z0_1_2 = (b3
        + b2 * 3u32 * (Rational::from(a * 2u32) + q)
        + (Rational::from(b * 3u32) + q) * inner)
        * q3;
    Ok(YGadgetReport { q: q.clone(), a: a.clone(), b: b.clone(), c, e, d, z012, z0_12, z0_1_2 })
}

impl YGadgetReport {
    /// `Z₀₁₂ + 3Z₀|₁₂ + Z₀|₁|₂ = Z(Y)`.
    pub fn total(&self) -> Rational {
        Rational::from(&self.z012 + &(Rational::from(&self.z0_12 * 3u32))) + &self.z0_1_2
    }

    /// `q²Z₀₁₂ / Z₀|₁|₂`, the weight of one more joined gadget.
    pub fn fugacity(&self) -> Result<Rational, ReductionError> {
        if is_zero(&self.z0_1_2) {
            return Err(ReductionError::DegenerateSeparated);
        }
        Ok(Rational::from(&self.q * &self.q) * &self.z012 / &self.z0_1_2)
    }

    pub fn enumerated(&self) -> Result<PartitionTable, TutteError> {
        z_terminal_partitions(&y_gadget(&self.a, &self.b), &self.q, &[0, 1, 2])
    }

    /// Closed forms against enumeration of all 64 subsets, all three
    /// two-block classes and the total.
    pub fn matches_enumeration(&self) -> Result<bool, TutteError> {
        let t = self.enumerated()?;
        let z = z_bruteforce(&y_gadget(&self.a, &self.b), &self.q)?;
        Ok(t.by_name("012") == self.z012
            && t.by_name("0|12") == self.z0_12
            && t.by_name("1|02") == self.z0_12
            && t.by_name("2|01") == self.z0_12
            && t.by_name("0|1|2") == self.z0_1_2
            && self.total() == z)
    }
}
