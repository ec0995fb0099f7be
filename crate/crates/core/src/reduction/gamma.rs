//! Sign and magnitude checks for Z(Γ_S; q, β) in the two parameter regimes.

use crate::gadget::Case;
use crate::graph::{independent_sets, WeightedMultigraph};
use crate::par::Exec;
use crate::rational::{abs, pow, Rational};
use crate::tutte::{poly_eval, z_coeffs_in_q, z_delcon};

use super::assembly::Assembly;
use super::ReductionError;

pub type GammaCase = Case;

#[derive(Clone, Debug)]
pub struct GammaReport {
    pub graph: WeightedMultigraph,
    /// Loops stripped before the checks; they contribute `(1+β)` each.
    pub loops: usize,
    pub case: GammaCase,
    /// `ν = |V(Γ_S)|`.
    pub vertices: usize,
    /// Coefficients of the loopless part in q, constant term first.
    pub coefficients: Vec<Rational>,
    /// Sign of each coefficient: −1, 0 or 1.
    pub signs: Vec<i8>,
    /// Z of the loopless part, from the coefficients.
    pub value: Rational,
    /// The same value by deletion–contraction.
    pub direct: Rational,
    /// Z including the loop factor.
    pub full_value: Rational,
    /// `(q − 5|β|)^ν` for q > 5, `|q|^ν` for q < 0.
    pub lower_bound: Rational,
    pub violations: Vec<String>,
}

impl GammaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check Z(Γ; q, β) against the positivity bound (q > 5|β|) or the
/// alternating-sign pattern (q < 0, β ∈ [−2, 0]). Every edge of `gamma` must
/// carry `beta`.
pub fn gamma_check(gamma: &WeightedMultigraph, q: &Rational, beta: &Rational) -> Result<GammaReport, ReductionError> {
    if gamma.edges().iter().any(|e| e.weight != *beta) {
        return Err(ReductionError::Precondition("every Γ edge must carry β".into()));
    }
    let case = if *q > 5 {
        if *q <= Rational::from(abs(beta) * 5u32) {
            return Err(ReductionError::Precondition(format!("q = {q} ≤ 5|β|")));
        }
        Case::Large
    } else if *q < 0 {
        if *beta < -2 || *beta > 0 {
            return Err(ReductionError::Precondition(format!("β = {beta} outside [−2, 0]")));
        }
        Case::Negative
    } else {
        return Err(ReductionError::Precondition(format!("q = {q} is in [0, 5]")));
    };
    let nu = gamma.vertex_count();
    let mut core = WeightedMultigraph::new(nu);
    let mut loops = 0;
    for e in gamma.edges() {
        if e.is_loop() {
            loops += 1;
        } else {
            core.add_edge(e.u, e.v, e.weight.clone())?;
        }
    }
    let coefficients = z_coeffs_in_q(&core)?;
    let signs: Vec<i8> = coefficients.iter().map(|c| c.cmp0() as i8).collect();
    let value = poly_eval(&coefficients, q);
    let direct = z_delcon(&core, q)?;
    let full_value = Rational::from(&value * &pow(&(Rational::from(beta + 1u32)), loops as i64));
    let mut violations = Vec::new();
    if value != direct {
        violations.push(format!("coefficient sum {value} ≠ direct value {direct}"));
    }
    let lower_bound = match case {
        Case::Large => {
            let lb = pow(&(Rational::from(q - &(abs(beta) * 5u32))), nu as i64);
            if value <= 0 {
                violations.push(format!("Z = {value} is not positive"));
            }
            if value < lb {
                violations.push(format!("Z = {value} < (q − 5|β|)^ν = {lb}"));
            }
            lb
        }
        Case::Negative => {
            for (j, &s) in signs.iter().enumerate() {
                let parity: i8 = if (nu - j) % 2 == 0 { 1 } else { -1 };
                if parity * s < 0 {
                    violations.push(format!("coefficient of q^{j} has the wrong sign"));
                }
            }
            if nu >= 1 && coefficients[nu] != 1 {
                violations.push(format!("leading coefficient {} ≠ 1", coefficients[nu]));
            }
            let signed = if nu % 2 == 0 { value.clone() } else { Rational::from(-&value) };
            if signed <= 0 {
                violations.push("(−1)^ν Z is not positive".into());
            }
            let lb = pow(&abs(q), nu as i64);
            if abs(&value) < lb {
                violations.push(format!("|Z| < |q|^ν = {lb}"));
            }
            lb
        }
    };
    Ok(GammaReport {
        graph: gamma.clone(),
        loops,
        case,
        vertices: nu,
        coefficients,
        signs,
        value,
        direct,
        full_value,
        lower_bound,
        violations,
    })
}

#[derive(Clone, Debug, Default)]
pub struct GammaSweep {
    pub checked: usize,
    pub with_loops: usize,
    /// `(S as a bitmask, violations)`.
    pub failures: Vec<(u64, Vec<String>)>,
}

/// Run [`gamma_check`] on Γ_S for every subset S of the gadgets (or only the
/// independent ones). Results are merged in mask order.
pub fn gamma_sweep(asm: &Assembly, q: &Rational, beta: &Rational, independent_only: bool, exec: Exec) -> Result<GammaSweep, ReductionError> {
    let n = asm.gadget_count();
    if n > 24 {
        return Err(ReductionError::CapExceeded { what: "Γ_S sweep", cap: 24, actual: n });
    }
    let masks: Vec<u64> = if independent_only {
        independent_sets(&asm.gadget_graph(), 64)?
    } else {
        (0..1u64 << n).collect()
    };
    let results = exec.map(&masks, |&mask| {
        let s: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        gamma_check(&asm.gamma(&s, beta), q, beta).map(|r| (mask, r.loops > 0, r.violations))
    });
    let mut out = GammaSweep::default();
    for r in results {
        let (mask, looped, violations) = r?;
        out.checked += 1;
        out.with_loops += looped as usize;
        if !violations.is_empty() {
            out.failures.push((mask, violations));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn path_large_case() {
        let g = WeightedMultigraph::path(3, &rat(-1, 10));
        let r = gamma_check(&g, &int(6), &rat(-1, 10)).unwrap();
        assert_eq!(r.value, rat(20886, 100));
        assert!(r.value > pow(&rat(11, 2), 3));
        assert!(r.holds());
    }

    #[test]
    fn triangle_negative_case() {
        let g = WeightedMultigraph::cycle(3, &rat(-1, 2));
        let r = gamma_check(&g, &int(-1), &rat(-1, 2)).unwrap();
        assert_eq!(r.coefficients, vec![int(0), rat(5, 8), rat(-3, 2), int(1)]);
        assert_eq!(Rational::from(-&r.value), rat(25, 8));
        assert!(r.holds());
    }

    #[test]
    fn edgeless() {
        let g = WeightedMultigraph::new(4);
        let r = gamma_check(&g, &int(-1), &rat(-1, 2)).unwrap();
        assert_eq!(r.coefficients, vec![int(0), int(0), int(0), int(0), int(1)]);
        assert_eq!(r.value, int(1));
        assert!(r.holds());
        assert!(gamma_check(&g, &int(3), &rat(-1, 2)).is_err());
        assert!(gamma_check(&WeightedMultigraph::path(2, &int(-2)), &int(6), &int(-2)).is_err());
    }
}
