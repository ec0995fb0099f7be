//! Planar 3-colourability through Z on the k-thickening at a point of the
//! lower branch of (x−1)(y−1) = 3.

use crate::graph::WeightedMultigraph;
use crate::rational::{abs, int, is_zero, pow, Rational};
use crate::tutte::{colour_sum, tutte_eval};

use super::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColouringVerdict {
    Colourable,
    NotColourable,
    Indeterminate,
}

impl std::fmt::Display for ColouringVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ColouringVerdict::Colourable => "3-colourable",
            ColouringVerdict::NotColourable => "not 3-colourable",
            ColouringVerdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ColouringReduction {
    pub x: Rational,
    pub y: Rational,
    /// Smallest k with `|y|^{−k} ≥ 4·3ⁿ` before rounding to even.
    pub k_formula: u64,
    pub k: u64,
    pub n: usize,
    /// `3ⁿ y^k`, the ceiling on Σ when no proper colouring exists.
    pub ceiling: Rational,
    /// `Σ_σ y^{k·mono(σ)}` by enumerating colourings.
    pub colour_sum: Rational,
    /// The same sum as `(y−1)ⁿ(x−1)^κ T(G^k; x, y)`.
    pub tutte_route: Rational,
    pub agree: bool,
    pub verdict: ColouringVerdict,
}

pub fn reduce_colouring(g: &WeightedMultigraph, x: &Rational, y: &Rational) -> Result<ColouringReduction, ReductionError> {
    let xm = Rational::from(x - 1u32);
    let ym = Rational::from(y - 1u32);
    if Rational::from(&xm * &ym) != 3 {
        return Err(ReductionError::OffBranch(format!("(x−1)(y−1) = {} ≠ 3", Rational::from(&xm * &ym))));
    }
    if is_zero(y) || abs(y) >= 1 {
        return Err(ReductionError::OffBranch(format!("need −1 < y < 1 and y ≠ 0, got y = {y}")));
    }
    let n = g.vertex_count();
    let goal = pow(&int(3), n as i64) * 4u32;
    let inv = abs(y).recip();
    let mut k_formula = 0u64;
    let mut p = int(1);
    while p < goal {
        p *= &inv;
        k_formula += 1;
    }
    let k = k_formula + k_formula % 2;
    let yk = pow(y, k as i64);
    let ceiling = pow(&int(3), n as i64) * &yk;
    let cs = colour_sum(g, 3, &yk)?;
    let thick = g.thicken(k as usize).with_uniform_weight(&ym);
    let t = tutte_eval(&thick, x, y)?;
    let tutte_route = t * pow(&ym, n as i64) * pow(&xm, g.component_count() as i64);
    let agree = cs == tutte_route;
    let verdict = if cs >= 1 {
        ColouringVerdict::Colourable
    } else if cs <= ceiling && ceiling * 4u32 <= 1 {
        ColouringVerdict::NotColourable
    } else {
        ColouringVerdict::Indeterminate
    };
    Ok(ColouringReduction { x: x.clone(), y: y.clone(), k_formula, k, n, ceiling: pow(&int(3), n as i64) * yk, colour_sum: cs, tutte_route, agree, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn triangle_and_k4() {
        let (x, y) = (int(-5), rat(1, 2));
        let r = reduce_colouring(&WeightedMultigraph::cycle(3, &int(1)), &x, &y).unwrap();
        assert_eq!((r.k_formula, r.k), (7, 8));
        assert_eq!(r.colour_sum, int(6) + rat(18, 1 << 8) + rat(3, 1 << 24));
        assert!(r.agree);
        assert_eq!(r.verdict, ColouringVerdict::Colourable);

        let r = reduce_colouring(&WeightedMultigraph::complete(4, &int(1)), &x, &y).unwrap();
        assert_eq!((r.k_formula, r.k), (9, 10));
        assert_eq!(r.ceiling, rat(81, 1024));
        assert!(r.colour_sum <= rat(81, 1024));
        assert!(r.agree);
        assert_eq!(r.verdict, ColouringVerdict::NotColourable);
    }

    #[test]
    fn off_branch() {
        let g = WeightedMultigraph::cycle(3, &int(1));
        assert!(reduce_colouring(&g, &int(-2), &rat(1, 2)).is_err());
        assert!(reduce_colouring(&g, &rat(5, 2), &int(3)).is_err());
    }
}
