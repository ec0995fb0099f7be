//! The threshold Ψ, a certified enclosure of Z(Ĝ), and the YES/NO decision.
//!
//! Z(Ĝ) splits by the connection pattern of each gadget's terminals in its
//! own edge set. For a fixed pattern vector p the edge sets contribute exactly
//! `Π_x Z_{p_x} q^{−blocks(p_x)} · Z(Q_p)`, where `Q_p` is the graph on pattern
//! blocks carrying the identifications and links. Independent joined sets with
//! no two-block gadget are summed exactly through Γ_S; every other pattern
//! vector is bounded with `|q|^{κ(Q)} ≤ Q^{#blocks}`.

use crate::gadget::{implement_a, implement_b, implement_beta, param_set_relaxed, Implementation, ParamSet, WalkBase};
use crate::graph::{independent_sets, three_stretch, WeightedMultigraph};
use crate::par::Exec;
use crate::rational::{abs, int, is_zero, max, pow, Interval, Rational};
use crate::tutte::z_delcon;

use super::assembly::{assemble_ghat, Assembled, GhatInstance};
use super::gamma::gamma_check;
use super::ygadget::{y_closed_forms, YGadgetReport};
use super::ReductionError;

/// `Ψ = |q²Z₀₁₂/Z₀|₁|₂|^{K−1} · R · |Z₀|₁|₂|ⁿ · |q|^{−3n} · χ^ν`.
pub fn psi_threshold(y: &YGadgetReport, big_r: &Rational, chi: &Rational, n: usize, k: usize, nu: i64) -> Result<Rational, ReductionError> {
    if k == 0 {
        return Err(ReductionError::BadBound { k, reason: "must be positive".into() });
    }
    let f = abs(&y.fugacity()?);
    Ok(pow(&f, k as i64 - 1) * big_r * pow(&abs(&y.z0_1_2), n as i64) * pow(&abs(&y.q), -3 * n as i64) * pow(chi, nu))
}

pub fn psi_from_params(y: &YGadgetReport, p: &ParamSet) -> Result<Rational, ReductionError> {
    psi_threshold(y, &p.big_r, &p.chi, p.n, p.k, p.nu)
}

/// Contribution of all independent joined sets of one size.
#[derive(Clone, Debug)]
pub struct SizeClass {
    pub size: usize,
    pub count: u64,
    /// `Σ Z(Γ_S)` over the class.
    pub gamma_sum: Rational,
    /// `F^size · Z₀|₁|₂ⁿ · q^{−3n} · gamma_sum`.
    pub contribution: Rational,
}

/// Bound on the total |contribution| of the pattern vectors that are not summed exactly.
#[derive(Clone, Debug)]
pub struct ClassBound {
    pub name: &'static str,
    /// Computed from the actual gadget values; always valid.
    pub rigorous: Rational,
    /// The closed bound in terms of δ, μ, τ (only with a parameter set).
    pub displayed: Option<Rational>,
    /// The displayed bound's premises (`|1+β| ≤ δ`, `|b+c| ≤ δ`) hold and it dominates `rigorous`.
    pub displayed_covers: Option<bool>,
    /// What enters the slack: the displayed bound when it covers, else the rigorous one.
    pub used: Rational,
}

#[derive(Clone, Debug)]
pub struct CertifiedZ {
    pub interval: Interval,
    pub exact_part: Rational,
    pub slack: Rational,
    pub y: YGadgetReport,
    pub fugacity: Rational,
    pub sizes: Vec<SizeClass>,
    pub bounds: Vec<ClassBound>,
    /// Crude bound on the independent classes of size below K (for comparison;
    /// those classes are summed exactly).
    pub small_bound: Option<Rational>,
    pub psi: Option<Rational>,
    /// Every bound that enters the slack is at most Ψ/16.
    pub bounds_within_sixteenth: Option<bool>,
    /// Γ_S checks that failed, as `(S bitmask, violations)`.
    pub gamma_failures: Vec<(u64, Vec<String>)>,
}

fn gamma_value(asm: &Assembled, s: &[bool], check: bool) -> Result<(Rational, Vec<String>), ReductionError> {
    let g = asm.assembly.gamma(s, &asm.beta);
    if check {
        let r = gamma_check(&g, &asm.q, &asm.beta)?;
        Ok((r.full_value, r.violations))
    } else {
        Ok((z_delcon(&g, &asm.q)?, Vec::new()))
    }
}

/// Certified enclosure of Z for any validated assembly. With a parameter set
/// the Γ_S values go through [`gamma_check`] and the displayed δ-bounds are
/// evaluated next to the rigorous ones.
pub fn z_assembled_certified(asm: &Assembled, params: Option<&ParamSet>, exec: Exec) -> Result<CertifiedZ, ReductionError> {
    asm.assembly.validate()?;
    let n = asm.local.len();
    let q = &asm.q;
    let y = y_closed_forms(q, &asm.a, &asm.b)?;
    let f = y.fugacity()?;
    let masks = independent_sets(&asm.assembly.gadget_graph(), 64)?;
    let values = exec.map(&masks, |&mask| {
        let s: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        gamma_value(asm, &s, params.is_some()).map(|v| (mask, v))
    });
    let mut counts = vec![0u64; n + 1];
    let mut gamma_sums = vec![Rational::new(); n + 1];
    let mut gamma_failures = Vec::new();
    for v in values {
        let (mask, (z, violations)) = v?;
        let k = mask.count_ones() as usize;
        counts[k] += 1;
        gamma_sums[k] += z;
        if !violations.is_empty() {
            gamma_failures.push((mask, violations));
        }
    }
    let prefactor = pow(&y.z0_1_2, n as i64) * pow(q, -3 * n as i64);
    let mut sizes = Vec::new();
    let mut exact_part = Rational::new();
    for k in 0..=n {
        if counts[k] == 0 {
            continue;
        }
        let contribution = pow(&f, k as i64) * &prefactor * &gamma_sums[k];
        exact_part += &contribution;
        sizes.push(SizeClass { size: k, count: counts[k], gamma_sum: gamma_sums[k].clone(), contribution });
    }

    // Rigorous bounds from per-pattern absolute values.
    let aq = abs(q);
    let big_q = max(&int(1), &aq);
    let r = Rational::from(&big_q / &aq);
    let s1 = abs(&y.z012) * &r;
    let d1 = abs(&y.z0_12) * pow(&r, 2);
    let t1 = abs(&y.z0_1_2) * pow(&r, 3);
    let links = asm.assembly.links().len() as i64;
    let bp = abs(&asm.beta) + 1u32;
    let st = Rational::from(&s1 + &t1);
    let all_d = pow(&(Rational::from(&st + &(Rational::from(&d1 * 3u32)))), n as i64);
    let no_d = pow(&st, n as i64);
    let rig5 = pow(&bp, links) * (all_d - &no_d);
    let mut indep_poly = Rational::new();
    for (k, &c) in counts.iter().enumerate() {
        if c > 0 {
            indep_poly += pow(&s1, k as i64) * pow(&t1, (n - k) as i64) * c;
        }
    }
    let bracket = no_d - indep_poly;
    let rig7 = if links == 0 {
        bracket
    } else {
        abs(&(Rational::from(&asm.beta + 1u32))) * pow(&bp, links - 1) * bracket
    };

    let psi = match params {
        Some(p) => Some(psi_from_params(&y, p)?),
        None => None,
    };
    let mut bounds = Vec::new();
    let mut small_bound = None;
    match params {
        Some(p) => {
            let (ni, mi) = (n as i64, links);
            let premises = abs(&(Rational::from(&asm.beta + 1u32))) <= p.delta && abs(&y.d) <= p.delta;
            let common = pow(&int(2), 6 * ni) * &p.delta * pow(&r, 6 * ni) * pow(&int(2), 2 * mi);
            let b5 = pow(&int(3), ni) * &common * &p.mu.hi * pow(&p.tau.hi, ni - 1);
            let b7 = pow(&int(2), ni) * &common * pow(&p.tau.hi, ni);
            for (name, rig, disp) in [("two-block gadget present", rig5, b5), ("joined set not independent", rig7, b7)] {
                let covers = premises && disp >= rig;
                let used = if covers { disp.clone() } else { rig.clone() };
                bounds.push(ClassBound { name, rigorous: rig, displayed: Some(disp), displayed_covers: Some(covers), used });
            }
            small_bound = Some(
                pow(&int(2), ni) * pow(&abs(&f), p.k as i64 - 1) * pow(&abs(&y.z0_1_2), ni) * pow(&aq, -3 * ni)
                    * pow(&int(2), 2 * mi)
                    * pow(&big_q, 3 * ni - mi),
            );
        }
        None => {
            for (name, rig) in [("two-block gadget present", rig5), ("joined set not independent", rig7)] {
                bounds.push(ClassBound { name, rigorous: rig.clone(), displayed: None, displayed_covers: None, used: rig });
            }
        }
    }
    let slack: Rational = bounds.iter().map(|b| &b.used).sum();
    let bounds_within_sixteenth = psi.as_ref().map(|psi| {
        let cap = Rational::from(psi / 16u32);
        bounds.iter().all(|b| b.used <= cap)
    });
    Ok(CertifiedZ {
        interval: Interval::ball(&exact_part, &slack),
        exact_part,
        slack,
        y,
        fugacity: f,
        sizes,
        bounds,
        small_bound,
        psi,
        bounds_within_sixteenth,
        gamma_failures,
    })
}

pub fn z_ghat_certified(ghat: &GhatInstance, exec: Exec) -> Result<CertifiedZ, ReductionError> {
    z_assembled_certified(&ghat.assembled, ghat.params.as_ref(), exec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MisVerdict {
    Yes,
    No,
    Indeterminate,
}

impl std::fmt::Display for MisVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MisVerdict::Yes => "YES",
            MisVerdict::No => "NO",
            MisVerdict::Indeterminate => "INDETERMINATE",
        })
    }
}

/// YES when |Z| ≥ 3Ψ/4 on the whole interval, NO when |Z| ≤ Ψ/4 on it.
pub fn decide_mis(z: &Interval, psi: &Rational) -> MisVerdict {
    assert!(*psi > 0, "Ψ must be positive");
    if z.min_abs() * 4u32 >= Rational::from(psi * 3u32) {
        MisVerdict::Yes
    } else if z.max_abs() * 4u32 <= *psi {
        MisVerdict::No
    } else {
        MisVerdict::Indeterminate
    }
}

fn stretched_size(h: &WeightedMultigraph) -> (usize, usize) {
    (h.vertex_count() + 2 * h.edge_count(), 3 * h.edge_count())
}

/// A power of two δ small enough that both displayed δ-bounds stay below
/// Ψ/64, with Ψ estimated at the exact centre `b = −c`.
pub fn choose_delta(h: &WeightedMultigraph, k: usize, q: &Rational, eps: &Rational, base: &WalkBase) -> Result<Rational, ReductionError> {
    let (n, m) = stretched_size(h);
    let mut probe = Rational::from(eps / 2u32);
    let p0 = loop {
        match param_set_relaxed(q, n, m, k, eps.clone(), probe.clone()) {
            Ok(p) => break p,
            Err(e) if probe < pow(&int(2), -4096) => return Err(e.into()),
            Err(_) => probe /= 1u64 << 32,
        }
    };
    let a = implement_a(&p0, base)?.effective_weight;
    let c = Rational::from(&a * &a) + Rational::from(&a * 3u32) + q;
    let y0 = y_closed_forms(q, &a, &(Rational::from(-&c)))?;
    let psi = psi_from_params(&y0, &p0)?;
    let (ni, mi) = (n as i64, m as i64);
    let r = Rational::from(&p0.big_q / &abs(q));
    let common = pow(&int(2), 6 * ni) * pow(&r, 6 * ni) * pow(&int(2), 2 * mi);
    let c5 = pow(&int(3), ni) * &common * &p0.mu.hi * pow(&p0.tau.hi, ni - 1);
    let c7 = pow(&int(2), ni) * &common * pow(&p0.tau.hi, ni);
    let raw = psi / (max(&c5, &c7) * 64u32);
    let mut delta = int(1);
    while delta > raw || delta > p0.delta_cap() || delta >= *eps {
        delta /= 2u32;
    }
    Ok(delta)
}

/// Everything produced by compiling one MIS instance.
#[derive(Clone, Debug)]
pub struct MisReduction {
    pub ghat: GhatInstance,
    pub beta: Implementation,
    pub a: Implementation,
    pub b: Implementation,
    pub certified: CertifiedZ,
    pub psi: Rational,
    pub verdict: MisVerdict,
}

/// Compile "does the 3-stretch of `h` have an independent set of size K?"
/// into Ĝ with implemented weights, certify Z(Ĝ) and decide. `delta` defaults
/// to [`choose_delta`].
pub fn reduce_mis(
    h: &WeightedMultigraph,
    k: usize,
    q: &Rational,
    base: &WalkBase,
    eps: &Rational,
    delta: Option<Rational>,
    exec: Exec,
) -> Result<MisReduction, ReductionError> {
    three_stretch(h)?;
    let (n, m) = stretched_size(h);
    let delta = match delta {
        Some(d) => d,
        None => choose_delta(h, k, q, eps, base)?,
    };
    let params = param_set_relaxed(q, n, m, k, eps.clone(), delta.clone())?;
    let p2 = base.p2.as_ref().ok_or_else(|| ReductionError::Precondition("β needs a base point y′₂ in (−1, 1)".into()))?;
    let beta = implement_beta(q, p2, &delta)?;
    let a = implement_a(&params, base)?;
    let b = implement_b(q, &a.effective_weight, &delta, base)?;
    if !params.accepts_b(&a.effective_weight, &b.effective_weight) {
        return Err(ReductionError::Precondition(format!("implemented b = {} violates the b constraints", b.effective_weight)));
    }
    let ghat = assemble_ghat(h, k, q, &beta.effective_weight, &a.effective_weight, &b.effective_weight, Some(&params))?;
    let certified = z_ghat_certified(&ghat, exec)?;
    let psi = certified.psi.clone().expect("parameter set present");
    if is_zero(&psi) {
        return Err(ReductionError::DegenerateSeparated);
    }
    let verdict = decide_mis(&certified.interval, &psi);
    Ok(MisReduction { ghat, beta, a, b, certified, psi, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::reduction::{Assembly, Port};
    use crate::tutte::z_bruteforce;

    #[test]
    fn psi_examples() {
        let y = y_closed_forms(&int(2), &int(1), &int(1)).unwrap();
        assert_eq!(psi_threshold(&y, &int(1), &int(1), 1, 1, 0).unwrap(), int(83));
        let y = y_closed_forms(&int(6), &rat(6, 5), &int(-11)).unwrap();
        let base = pow(&abs(&y.z0_1_2), 3) * pow(&int(6), -9);
        assert_eq!(psi_threshold(&y, &int(1), &int(1), 3, 1, 5).unwrap(), base);
    }

    #[test]
    fn decisions() {
        let psi = int(100);
        assert_eq!(decide_mis(&Interval::new(int(90), int(110)), &psi), MisVerdict::Yes);
        assert_eq!(decide_mis(&Interval::new(int(-110), int(-90)), &psi), MisVerdict::Yes);
        assert_eq!(decide_mis(&Interval::new(int(0), int(20)), &psi), MisVerdict::No);
        assert_eq!(decide_mis(&Interval::new(rat(100, 3), int(50)), &psi), MisVerdict::Indeterminate);
    }

    #[test]
    fn toy_interval_contains_truth() {
        let mut asm = Assembly::new(3);
        asm.identify(Port::new(0, 0), Port::new(1, 0)).unwrap();
        asm.identify(Port::new(1, 2), Port::new(2, 1)).unwrap();
        asm.link(Port::new(0, 2), Port::new(1, 1)).unwrap();
        asm.link(Port::new(1, 1), Port::new(2, 2)).unwrap();
        for (q, a, b, beta) in [(int(6), rat(6, 5), rat(-11, 1), rat(-9, 10)), (int(-1), rat(-7, 2), rat(-3, 2), rat(-1, 2)), (rat(5, 2), int(1), int(2), int(1))] {
            let built = asm.build(&q, &a, &b, &beta).unwrap();
            let cert = z_assembled_certified(&built, None, Exec::default()).unwrap();
            let truth = z_bruteforce(&built.graph, &q).unwrap();
            assert!(cert.interval.contains(&truth), "q={q}");
        }
    }
}
