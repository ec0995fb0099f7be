//! Replayable invariant suites. Each suite draws its instances from a seeded
//! ChaCha stream, checks exact identities against independent routes, and
//! reports every mismatch. The `ptutte verify` command and the acceptance test
//! both run these.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classify::{classify_point, classify_point_with, ApproxStatus, ExactStatus};
use crate::gadget::{effective_weight, hyperbola_walk, substitute_edge, Implementation, SpGadget, WalkBase};
use crate::graph::WeightedMultigraph;
use crate::par::Exec;
use crate::rational::{fmt_rational, int, pow, rat, Interval, Rational};
use crate::reduction::{
    assemble_ghat, independent_class_closed_form, gamma_check, gamma_sweep, reduce_colouring, y_closed_forms, y_gadget, z_sdt_all, Assembly, ColouringVerdict, Pattern,
    Port, PrefactorReading,
};
use crate::tutte::{z_bruteforce, z_delcon, z_terminal_partitions};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}; known: {known}", known = SUITES.join(", "))]
    UnknownSuite(String),
}

/// Names accepted by [`run_suite`], in replay order.
pub const SUITES: &[&str] = &["oracle", "gadget", "ygadget", "walks", "sdt", "gamma", "colouring", "classify"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Small instance counts; seconds.
    Quick,
    /// Full instance counts, including the 2^16-subset Γ sweep; minutes.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub scale: Scale,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0x5eed, scale: Scale::Quick, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport, VerifyError> {
    let full = cfg.scale == Scale::Full;
    let pick = |q: usize, f: usize| if full { f } else { q };
    let t = Instant::now();
    let mut r = match name {
        "oracle" => oracle_equivalence(pick(100, 500), cfg.seed),
        "gadget" => gadget_calculus(pick(40, 200), pick(10, 50), cfg.seed),
        "ygadget" => y_gadget_formulas(pick(10, 50), cfg.seed),
        "walks" => {
            let tols: &[i64] = if full { &[2, 6, 20] } else { &[2, 6] };
            walk_report(&walk_grid(tols))
        }
        "sdt" => sdt_toys(pick(4, 12), cfg.seed),
        "gamma" => {
            let mut r = gamma_negative(pick(40, 200), cfg.seed);
            let big = gamma_large(!full, cfg.exec);
            r.checks += big.checks;
            r.failures.extend(big.failures);
            r.notes.extend(big.notes);
            r
        }
        "colouring" => colouring_checks(pick(10, 40), cfg.seed),
        "classify" => classifier_checks(),
        other => return Err(VerifyError::UnknownSuite(other.into())),
    };
    r.name = name.into();
    r.elapsed = t.elapsed();
    Ok(r)
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Small signed rational with denominator ≤ 4.
pub fn random_rational<R: Rng>(r: &mut R) -> Rational {
    rat(r.gen_range(-6..=6), r.gen_range(1..=4))
}

pub fn random_nonzero<R: Rng>(r: &mut R) -> Rational {
    loop {
        let v = random_rational(r);
        if v != 0 {
            return v;
        }
    }
}

/// Random multigraph (loops and parallel edges allowed) with random weights.
pub fn random_multigraph<R: Rng>(r: &mut R, max_n: usize, max_m: usize, loops: bool) -> WeightedMultigraph {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(0..=max_m);
    let mut g = WeightedMultigraph::new(n);
    for _ in 0..m {
        let u = r.gen_range(0..n);
        let v = r.gen_range(0..n);
        if u == v && !loops {
            continue;
        }
        g.add_edge(u, v, random_rational(r)).expect("in range");
    }
    g
}

/// Deletion–contraction against subset enumeration.
pub fn oracle_equivalence(count: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("oracle");
    let mut r = rng(seed, 1);
    for i in 0..count {
        let g = random_multigraph(&mut r, 6, 10, true);
        let q = random_nonzero(&mut r);
        match (z_delcon(&g, &q), z_bruteforce(&g, &q)) {
            (Ok(a), Ok(b)) => rep.check(a == b, || format!("#{i}: delcon {a} ≠ brute {b} (q={q})")),
            (a, b) => rep.fail(format!("#{i}: evaluation error {a:?} / {b:?}")),
        }
    }
    rep
}

fn random_sp<R: Rng>(r: &mut R, depth: u32) -> SpGadget {
    if depth == 0 || r.gen_bool(0.3) {
        return SpGadget::edge(random_nonzero(r));
    }
    match r.gen_range(0..4) {
        0 => SpGadget::series(vec![random_sp(r, depth - 1), random_sp(r, depth - 1)]),
        1 => SpGadget::parallel(vec![random_sp(r, depth - 1), random_sp(r, depth - 1)]),
        2 => random_sp(r, depth - 1).thicken(r.gen_range(2..=3)),
        _ => random_sp(r, depth - 1).stretch(r.gen_range(2..=3)),
    }
}

/// Closed-form composition weights against the explicit gadget, and the
/// substitution identity on random hosts.
pub fn gadget_calculus(compositions: usize, hosts: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("gadget");
    let mut r = rng(seed, 2);
    let mut done = 0;
    let mut degenerate = 0;
    while done < compositions {
        let g = random_sp(&mut r, 3);
        if g.edge_count() > 14 {
            continue;
        }
        let q = random_nonzero(&mut r);
        let explicit = g.materialize(64).map_err(|e| e.to_string()).and_then(|m| effective_weight(&m, &q).map_err(|e| e.to_string()));
        match (g.eval(&q), explicit) {
            (Ok(v), Ok((w, s))) => rep.check(v.weight == w && v.scale == s, || format!("composition at q={q}: closed ({}, {}) ≠ explicit ({w}, {s})", v.weight, v.scale)),
            (Err(_), Err(_)) => {
                degenerate += 1;
                continue;
            }
            (a, b) => rep.fail(format!("composition {g:?} at q={q}: closed {a:?} vs explicit {b:?}")),
        }
        done += 1;
    }
    rep.notes.push(format!("{degenerate} degenerate draws redrawn"));
    let mut done = 0;
    while done < hosts {
        let host = random_multigraph(&mut r, 5, 6, false);
        if host.edge_count() == 0 {
            continue;
        }
        let gad = random_sp(&mut r, 2);
        if gad.edge_count() > 6 {
            continue;
        }
        let q = random_nonzero(&mut r);
        let Ok(v) = gad.eval(&q) else { continue };
        let imp = Implementation::new(gad, &q, v.weight.clone(), Interval::point(int(0))).expect("exact window");
        let f = r.gen_range(0..host.edge_count());
        let (sub, scale) = substitute_edge(&host, f, &imp).expect("substitution");
        let mut reweighted = host.clone();
        reweighted.set_weight(f, v.weight.clone());
        let lhs = z_delcon(&sub, &q).expect("delcon");
        let rhs = scale * z_delcon(&reweighted, &q).expect("delcon");
        rep.check(lhs == rhs, || format!("substitution on edge {f} at q={q}: {lhs} ≠ {rhs}"));
        done += 1;
    }
    rep
}

/// Y-gadget closed forms against terminal-partition enumeration.
pub fn y_gadget_formulas(count: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("ygadget");
    let mut r = rng(seed, 3);
    for _ in 0..count {
        let (q, a, b) = (random_nonzero(&mut r), random_rational(&mut r), random_rational(&mut r));
        let y = y_closed_forms(&q, &a, &b).expect("q ≠ 0");
        let table = z_terminal_partitions(&y_gadget(&a, &b), &q, &[0, 1, 2]).expect("6 edges");
        let two = ["0|12", "1|02", "2|01"].iter().all(|n| table.by_name(n) == y.z0_12);
        rep.check(table.by_name("012") == y.z012 && two && table.by_name("0|1|2") == y.z0_1_2, || format!("closed forms at (q,a,b)=({q},{a},{b})"));
        let z = z_delcon(&y_gadget(&a, &b), &q).expect("6 edges");
        rep.check(table.total() == z && y.total() == z, || format!("partition sum ≠ Z(Y) at (q,a,b)=({q},{a},{b})"));
    }
    rep
}

#[derive(Clone, Debug)]
pub struct WalkRecord {
    pub q: Rational,
    pub target: Rational,
    /// Tolerance is `10^−digits`.
    pub digits: i64,
    pub y: Option<Rational>,
    pub edges: u64,
    pub ok: bool,
    pub detail: String,
    pub elapsed: Duration,
}

/// The two walk configurations: `q = 6` with `y′ = (2, −, −2)` and `q = −1`
/// with `y′ = (2, −1/2, −2)`.
pub fn walk_bases() -> Vec<(Rational, WalkBase)> {
    vec![
        (int(6), WalkBase::from_ys(Some(int(2)), None, Some(int(-2)))),
        (int(-1), WalkBase::from_ys(Some(int(2)), Some(rat(-1, 2)), Some(int(-2)))),
    ]
}

pub fn walk_targets() -> Vec<Rational> {
    let mags = [rat(3, 2), int(5), int(100)];
    mags.iter().flat_map(|m| [m.clone(), Rational::from(-m)]).collect()
}

/// Hyperbola walks over both bases, all targets and the given tolerances.
pub fn walk_grid(tolerance_digits: &[i64]) -> Vec<WalkRecord> {
    let mut out = Vec::new();
    for (q, base) in walk_bases() {
        for t in walk_targets() {
            for &d in tolerance_digits {
                let tol = pow(&int(10), -d);
                let start = Instant::now();
                let res = hyperbola_walk(&q, &base, &t, &tol);
                let elapsed = start.elapsed();
                let rec = match res {
                    Ok((_, imp)) => {
                        let y = imp.y();
                        let window = if t > 0 { Interval::new(Rational::from(&t - &tol), t.clone()) } else { Interval::new(t.clone(), Rational::from(&t + &tol)) };
                        let ok = window.contains(&y);
                        WalkRecord { q: q.clone(), target: t.clone(), digits: d, detail: if ok { String::new() } else { format!("y outside {window}") }, y: Some(y), edges: imp.edge_count(), ok, elapsed }
                    }
                    Err(e) => WalkRecord { q: q.clone(), target: t.clone(), digits: d, y: None, edges: 0, ok: false, detail: e.to_string(), elapsed },
                };
                out.push(rec);
            }
        }
    }
    out
}

/// Edge growth is judged per (q, target) as edges-per-digit at the finest
/// tolerance against the same ratio at the middle one.
pub const WALK_GROWTH_FACTOR: u64 = 2;

/// Pairs `(coarse, fine)` violating `edges(fine)/fine ≤ F · edges(coarse)/coarse`.
pub fn walk_growth_violations(recs: &[WalkRecord], coarse: i64, fine: i64) -> Vec<String> {
    let mut out = Vec::new();
    for a in recs.iter().filter(|r| r.digits == coarse && r.ok) {
        if let Some(b) = recs.iter().find(|r| r.digits == fine && r.q == a.q && r.target == a.target && r.ok) {
            if b.edges * coarse as u64 > WALK_GROWTH_FACTOR * a.edges * fine as u64 {
                out.push(format!("q={} T={}: {} edges at 1e-{coarse}, {} at 1e-{fine}", a.q, a.target, a.edges, b.edges));
            }
        }
    }
    out
}

fn walk_report(recs: &[WalkRecord]) -> SuiteReport {
    let mut rep = SuiteReport::new("walks");
    for w in recs {
        rep.check(w.ok, || format!("q={} T={} π=1e-{}: {}", w.q, w.target, w.digits, w.detail));
        rep.notes.push(format!("q={} T={} π=1e-{}: {} edges, {:?}", w.q, w.target, w.digits, w.edges, w.elapsed));
    }
    let ds: Vec<i64> = {
        let mut d: Vec<i64> = recs.iter().map(|r| r.digits).collect();
        d.sort();
        d.dedup();
        d
    };
    if ds.len() >= 2 {
        let v = walk_growth_violations(recs, ds[ds.len() - 2], ds[ds.len() - 1]);
        rep.notes.extend(v.into_iter().map(|s| format!("super-linear growth: {s}")));
    }
    rep
}

fn random_toy<R: Rng>(r: &mut R) -> Assembly {
    let gadgets = r.gen_range(2..=3);
    let mut asm = Assembly::new(gadgets);
    let mut free = r.gen_range(0..3);
    for x in 1..gadgets {
        let j = r.gen_range(0..3);
        asm.identify(Port::new(x - 1, free), Port::new(x, j)).expect("fresh ports");
        asm.link(Port::new(x - 1, (free + 2) % 3), Port::new(x, (j + 1) % 3)).expect("valid ports");
        free = (j + 2) % 3;
    }
    asm
}

/// Class decomposition of toy assemblies: completeness and the closed form
/// for independent S with empty D.
pub fn sdt_toys(count: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("sdt");
    let mut r = rng(seed, 5);
    let mut three_differs = 0;
    for i in 0..count {
        let asm = random_toy(&mut r);
        let (q, a, b, beta) = (random_nonzero(&mut r), random_nonzero(&mut r), random_nonzero(&mut r), random_rational(&mut r));
        let built = match asm.build(&q, &a, &b, &beta) {
            Ok(b) => b,
            Err(e) => {
                rep.fail(format!("toy #{i}: {e}"));
                continue;
            }
        };
        let classes = z_sdt_all(&built).expect("≤ 24 edges");
        let total: Rational = classes.iter().map(|(_, v)| v).sum();
        let z = z_delcon(&built.graph, &q).expect("delcon");
        rep.check(total == z, || format!("toy #{i}: class sum {total} ≠ Z {z}"));
        for (p, v) in &classes {
            if !p.members(Pattern::Pair).is_empty() {
                continue;
            }
            let s = p.joined_mask();
            let Ok(closed) = independent_class_closed_form(&built, &s, PrefactorReading::QPower) else { continue };
            rep.check(closed == *v, || format!("toy #{i} {p}: closed {closed} ≠ class {v}"));
            if !p.members(Pattern::Joined).is_empty() && independent_class_closed_form(&built, &s, PrefactorReading::ThreePower).map(|t| t != *v).unwrap_or(false) {
                three_differs += 1;
            }
        }
    }
    rep.notes.push(format!("the 3^−m reading differs from the class value in {three_differs} nonempty-S classes"));
    rep
}

/// Alternating coefficient signs at q = −1, β = −1/2 on random loopless graphs.
pub fn gamma_negative(count: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("gamma");
    let mut r = rng(seed, 6);
    let beta = rat(-1, 2);
    for i in 0..count {
        let g = random_multigraph(&mut r, 8, 12, false).with_uniform_weight(&beta);
        match gamma_check(&g, &int(-1), &beta) {
            Ok(rep_i) => rep.check(rep_i.holds(), || format!("graph #{i}: {:?}", rep_i.violations)),
            Err(e) => rep.fail(format!("graph #{i}: {e}")),
        }
    }
    rep
}

/// The gadget assembly of Ĝ for h = K4 (16 gadgets, one per vertex of the
/// 3-stretch).
pub fn stretched_k4_assembly() -> Assembly {
    let h = WeightedMultigraph::complete(4, &int(1));
    assemble_ghat(&h, 7, &int(6), &rat(-1, 10), &int(1), &int(1), None).expect("K4 is cubic and planar").assembled.assembly
}

/// Positivity bound at q = 6, β = −1/10 over every Γ_S of the stretched
/// K4 (or only the independent S when `independent_only`).
pub fn gamma_large(independent_only: bool, exec: Exec) -> SuiteReport {
    let mut rep = SuiteReport::new("gamma");
    let asm = stretched_k4_assembly();
    match gamma_sweep(&asm, &int(6), &rat(-1, 10), independent_only, exec) {
        Ok(s) => {
            rep.checks += s.checked;
            rep.failures.extend(s.failures.iter().map(|(m, v)| format!("S={m:#x}: {v:?}")));
            rep.notes.push(format!("{} subsets checked, {} with loops", s.checked, s.with_loops));
        }
        Err(e) => rep.fail(e.to_string()),
    }
    rep
}

/// Backtracking 3-colourability, independent of every polynomial route.
pub fn three_colourable(g: &WeightedMultigraph) -> bool {
    let n = g.vertex_count();
    if g.edges().iter().any(|e| e.is_loop()) {
        return false;
    }
    let adj = g.adjacency();
    let mut col = vec![u8::MAX; n];
    fn go(v: usize, adj: &[Vec<usize>], col: &mut [u8]) -> bool {
        if v == col.len() {
            return true;
        }
        for c in 0..3 {
            if adj[v].iter().all(|&u| col[u] != c) {
                col[v] = c;
                if go(v + 1, adj, col) {
                    return true;
                }
            }
        }
        col[v] = u8::MAX;
        false
    }
    go(0, &adj, &mut col)
}

/// Colouring reduction at (x, y) = (−5, 1/2) against backtracking.
pub fn colouring_checks(count: usize, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("colouring");
    let mut r = rng(seed, 8);
    let (x, y) = (int(-5), rat(1, 2));
    let mut graphs = vec![WeightedMultigraph::cycle(3, &int(1)), WeightedMultigraph::complete(4, &int(1))];
    while graphs.len() < count + 2 {
        graphs.push(random_multigraph(&mut r, 5, 7, false));
    }
    for (i, g) in graphs.iter().enumerate() {
        match reduce_colouring(g, &x, &y) {
            Ok(red) => {
                rep.check(red.agree, || format!("graph #{i}: colour sum {} ≠ Tutte route {}", red.colour_sum, red.tutte_route));
                let expect = if three_colourable(g) { ColouringVerdict::Colourable } else { ColouringVerdict::NotColourable };
                rep.check(red.verdict == expect, || format!("graph #{i}: verdict {:?}, expected {expect:?}", red.verdict));
            }
            Err(e) => rep.fail(format!("graph #{i}: {e}")),
        }
    }
    rep
}

/// The fixture points with their expected approximation status.
pub fn classifier_fixtures() -> Vec<(Rational, Rational, &'static str, &'static str)> {
    vec![
        (int(2), int(2), "exact-easy", "H1"),
        (int(0), int(-1), "exact-easy", "H2"),
        (int(-2), int(-2), "no-FPRAS(negQ-q>5)", ""),
        (int(-5), rat(1, 2), "no-FPRAS(q=3-branch)", ""),
        (int(-3), int(0), "open", ""),
    ]
}

/// Fixtures, certificates, and the structural invariants over a lattice.
pub fn classifier_checks() -> SuiteReport {
    let mut rep = SuiteReport::new("classify");
    for (x, y, approx, cite) in classifier_fixtures() {
        let c = classify_point(&x, &y);
        let q = Rational::from(&x - 1u32) * Rational::from(&y - 1u32);
        let p = format!("({}, {})", fmt_rational(&x), fmt_rational(&y));
        rep.check(c.approx.to_string() == approx && c.citation.starts_with(cite), || format!("{p}: {} / {}", c.approx, c.citation));
        if matches!(c.approx, ApproxStatus::NoFpras(_)) && (q < 0 || q > 5) {
            let ok = c.certificate.as_ref().map(|cert| cert.verify().unwrap_or(false)).unwrap_or(false);
            rep.check(ok, || format!("{p}: missing or failing shift certificate"));
        }
    }
    for i in -10..=10 {
        for j in -10..=10 {
            let (x, y) = (rat(i, 2), rat(j, 2));
            let a = classify_point_with(&x, &y, false);
            let b = classify_point_with(&y, &x, false);
            let dual = match a.approx {
                ApproxStatus::NoFpras(r) => ApproxStatus::NoFpras(r.dual()),
                s => s,
            };
            rep.check(b.approx == dual && a.exact == b.exact, || format!("({x}, {y}) not symmetric"));
            if a.exact == ExactStatus::FpEasy {
                rep.check(a.approx == ApproxStatus::ExactEasy, || format!("({x}, {y}) easy but {}", a.approx));
            }
        }
    }
    for (x, y) in [(int(-3), int(-3)), (int(3), int(-3)), (int(-3), int(3)), (rat(-1, 2), int(-5)), (int(-4), rat(-1, 2))] {
        let c = classify_point(&x, &y);
        let ok = matches!(c.approx, ApproxStatus::NoFpras(_)) && c.certificate.as_ref().map(|cert| cert.verify().unwrap_or(false)).unwrap_or(false);
        rep.check(ok, || format!("({x}, {y}): no verifying certificate"));
    }
    rep
}
