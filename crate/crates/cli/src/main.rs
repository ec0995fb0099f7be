//! `ptutte`: exact Tutte evaluation, gadget synthesis, hardness-instance
//! compilation and planar complexity classification from the command line.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use planar_tutte::classify::{classify_point, map_region, record};
use planar_tutte::gadget::{hyperbola_walk, WalkBase};
use planar_tutte::graph::{mis_size, parse_graph, serialize_graph};
use planar_tutte::rational::{fmt_rational, int, log2_approx, parse_rational, pow};
use planar_tutte::reduction::{reduce_colouring, reduce_mis};
use planar_tutte::tutte::{tutte_eval, z_delcon};
use planar_tutte::verify::{run_suite, Scale, VerifyConfig, SUITES};
use planar_tutte::{Exec, Rational, WeightedMultigraph};

#[derive(Parser)]
#[command(name = "ptutte", version, about = "Exact planar Tutte-polynomial workbench")]
struct Cli {
    /// Run every loop on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate Z(G; q, w) or T(G; x, y).
    Eval(EvalArgs),
    /// Synthesize a series–parallel gadget implementing y within a tolerance.
    Gadget(GadgetArgs),
    /// Compile a decision instance into a Tutte-evaluation instance.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Classify one point of the (x, y) plane.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Print the shift certificate, when one exists.
        #[arg(long)]
        certificate: bool,
    },
    /// Classify every lattice point of a rectangle (rows by y, then x).
    Map(MapArgs),
    /// Replay the invariant suites.
    Verify {
        /// One of: oracle, gadget, ygadget, walks, sdt, gamma, colouring, classify.
        suite: Option<String>,
        /// Full instance counts (minutes) instead of the quick ones.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Args)]
struct EvalArgs {
    graph: PathBuf,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["x", "y"])]
    q: Option<String>,
    /// One weight for every edge, or a comma-separated list in edge order.
    #[arg(long, allow_hyphen_values = true, requires = "q")]
    weights: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "y")]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "x")]
    y: Option<String>,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Target y-value T; the result lies in [T−π, T] (T > 0) or [T, T+π] (T < 0).
    #[arg(long, allow_hyphen_values = true)]
    target: String,
    /// Tolerance π in (0, 1].
    #[arg(long)]
    tol: String,
    /// Base points `y′₁,y′₂,y′₃`; leave an entry empty when absent.
    #[arg(long, allow_hyphen_values = true, default_value = "2,1/2,-2")]
    base: String,
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Independent set of size K in the 3-stretch of a cubic planar graph.
    Mis(MisArgs),
    /// 3-colourability via one evaluation on the q=3 branch.
    Colouring(ColouringArgs),
}

#[derive(Args)]
struct MisArgs {
    graph: PathBuf,
    #[arg(long = "K")]
    k: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "6")]
    q: String,
    #[arg(long, allow_hyphen_values = true, default_value = "2,1/2,-2")]
    base: String,
    #[arg(long, default_value = "1e-30")]
    relaxed_eps: String,
    /// Defaults to the largest power of two meeting the Ψ/16 budget.
    #[arg(long)]
    relaxed_delta: Option<String>,
    /// Output prefix; writes `<prefix>.graph` and `<prefix>.cert`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ColouringArgs {
    graph: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MapArgs {
    #[arg(long, allow_hyphen_values = true)]
    xmin: String,
    #[arg(long, allow_hyphen_values = true)]
    xmax: String,
    #[arg(long, allow_hyphen_values = true)]
    ymin: String,
    #[arg(long, allow_hyphen_values = true)]
    ymax: String,
    #[arg(long)]
    step: String,
    /// Defaults to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `p/q`, an integer, or `m·10^e` written `<p/q>e<int>`.
fn rational(s: &str) -> Result<Rational> {
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let e: i64 = e.parse().with_context(|| format!("bad exponent in {s:?}"))?;
        return Ok(parse_rational(m).with_context(|| format!("bad rational {s:?}"))? * pow(&int(10), e));
    }
    parse_rational(s).with_context(|| format!("bad rational {s:?} (expected p/q)"))
}

fn base(s: &str) -> Result<WalkBase> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        bail!("--base needs three comma-separated entries, got {s:?}");
    }
    let ys = parts.iter().map(|p| if p.is_empty() { Ok(None) } else { rational(p).map(Some) }).collect::<Result<Vec<_>>>()?;
    Ok(WalkBase::from_ys(ys[0].clone(), ys[1].clone(), ys[2].clone()))
}

fn read_graph(path: &Path) -> Result<WeightedMultigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn r(v: &Rational) -> String {
    fmt_rational(v)
}

fn out_prefix(out: &Option<PathBuf>, input: &Path) -> PathBuf {
    out.clone().unwrap_or_else(|| input.with_extension("reduced"))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_pair(prefix: &Path, graph: &WeightedMultigraph, cert: &str) -> Result<(PathBuf, PathBuf)> {
    let g = with_suffix(prefix, ".graph");
    let c = with_suffix(prefix, ".cert");
    fs::write(&g, serialize_graph(graph)).with_context(|| format!("writing {}", g.display()))?;
    fs::write(&c, cert).with_context(|| format!("writing {}", c.display()))?;
    Ok((g, c))
}

fn eval(a: EvalArgs) -> Result<()> {
    let mut g = read_graph(&a.graph)?;
    if let Some(q) = a.q {
        let q = rational(&q)?;
        if let Some(ws) = a.weights {
            let ws = ws.split(',').map(rational).collect::<Result<Vec<_>>>()?;
            match ws.len() {
                1 => g = g.with_uniform_weight(&ws[0]),
                n if n == g.edge_count() => ws.into_iter().enumerate().for_each(|(i, w)| g.set_weight(i, w)),
                n => bail!("{n} weights for {} edges", g.edge_count()),
            }
        }
        println!("Z\t{}", r(&z_delcon(&g, &q)?));
    } else if let (Some(x), Some(y)) = (a.x, a.y) {
        println!("T\t{}", r(&tutte_eval(&g, &rational(&x)?, &rational(&y)?)?));
    } else {
        bail!("give --q [--weights] or --x and --y");
    }
    Ok(())
}

fn gadget(a: GadgetArgs) -> Result<()> {
    let (q, t, tol) = (rational(&a.q)?, rational(&a.target)?, rational(&a.tol)?);
    let (plan, imp) = hyperbola_walk(&q, &base(&a.base)?, &t, &tol)?;
    println!("y\t{}", r(&imp.y()));
    println!("weight\t{}", r(&imp.effective_weight));
    println!("scale\t{}", r(&imp.scale));
    println!("error\t[{}, {}]", r(&imp.error_interval.lo), r(&imp.error_interval.hi));
    println!("edges\t{}", imp.edge_count());
    println!("m\t{}", plan.m);
    println!("digits\t{:?}", plan.digits);
    if let Some(d) = &plan.damper {
        println!("damper\ty={} r={} ({})", r(&d.y), d.r, d.source);
    }
    Ok(())
}

fn reduce_mis_cmd(a: MisArgs, exec: Exec) -> Result<()> {
    let h = read_graph(&a.graph)?;
    let q = rational(&a.q)?;
    let eps = rational(&a.relaxed_eps)?;
    let delta = a.relaxed_delta.as_deref().map(rational).transpose()?;
    let red = reduce_mis(&h, a.k, &q, &base(&a.base)?, &eps, delta, exec)?;
    let c = &red.certified;
    let params = red.ghat.params.as_ref().expect("reduction carries its parameter set");
    let mut cert = String::new();
    let _ = writeln!(cert, "# certificate for Z(Ĝ) on {} with K = {}", a.graph.display(), a.k);
    let kv: Vec<(&str, String)> = vec![
        ("K", a.k.to_string()),
        ("q", r(&q)),
        ("eps", r(&params.eps)),
        ("delta", r(&params.delta)),
        ("beta", r(&red.beta.effective_weight)),
        ("a", r(&red.a.effective_weight)),
        ("b", r(&red.b.effective_weight)),
        ("beta_gadget_edges", red.beta.edge_count().to_string()),
        ("a_gadget_edges", red.a.edge_count().to_string()),
        ("b_gadget_edges", red.b.edge_count().to_string()),
        ("fugacity", r(&c.fugacity)),
        ("psi", r(&red.psi)),
        ("z_exact_part", r(&c.exact_part)),
        ("slack", r(&c.slack)),
        ("z_lo", r(&c.interval.lo)),
        ("z_hi", r(&c.interval.hi)),
        ("bounds_within_sixteenth", format!("{:?}", c.bounds_within_sixteenth)),
        ("gamma_failures", c.gamma_failures.len().to_string()),
        ("verdict", red.verdict.to_string()),
    ];
    for (k, v) in kv {
        let _ = writeln!(cert, "{k}\t{v}");
    }
    for b in &c.bounds {
        let disp = b.displayed.as_ref().map(r).unwrap_or_else(|| "-".into());
        let _ = writeln!(cert, "bound\t{}\trigorous={}\tdisplayed={}\tused={}", b.name, r(&b.rigorous), disp, r(&b.used));
    }
    let (g, cf) = write_pair(&out_prefix(&a.out, &a.graph), &red.ghat.assembled.graph, &cert)?;
    println!("verdict\t{}", red.verdict);
    println!("log2_psi\t{:.2}", log2_approx(&red.psi));
    println!("log2_z\t[{:.2}, {:.2}]", log2_approx(&c.interval.lo.clone().abs()), log2_approx(&c.interval.hi.clone().abs()));
    if let Ok(mis) = mis_size(&red.ghat.source.graph) {
        println!("mis_oracle\t{mis}");
    }
    println!("instance\t{}", g.display());
    println!("certificate\t{}", cf.display());
    Ok(())
}

fn reduce_colouring_cmd(a: ColouringArgs) -> Result<()> {
    let g = read_graph(&a.graph)?;
    let (x, y) = (rational(&a.x)?, rational(&a.y)?);
    let red = reduce_colouring(&g, &x, &y)?;
    let thick = g.thicken(red.k as usize).with_uniform_weight(&(y.clone() - int(1)));
    let mut cert = String::new();
    for (k, v) in [
        ("x", r(&x)),
        ("y", r(&y)),
        ("k_formula", red.k_formula.to_string()),
        ("k", red.k.to_string()),
        ("ceiling", r(&red.ceiling)),
        ("colour_sum", r(&red.colour_sum)),
        ("tutte_route", r(&red.tutte_route)),
        ("agree", red.agree.to_string()),
        ("verdict", format!("{:?}", red.verdict)),
    ] {
        let _ = writeln!(cert, "{k}\t{v}");
    }
    let (gp, cp) = write_pair(&out_prefix(&a.out, &a.graph), &thick, &cert)?;
    print!("{cert}");
    println!("instance\t{}", gp.display());
    println!("certificate\t{}", cp.display());
    Ok(())
}

fn classify(x: &str, y: &str, certificate: bool) -> Result<()> {
    let (x, y) = (rational(x)?, rational(y)?);
    let rec = record(&x, &y, false);
    println!("{rec}");
    if certificate {
        match classify_point(&x, &y).certificate {
            Some(c) => {
                println!("# region {} dual={} base point ({}, {}) verified={}", c.region, c.dual, r(&c.base_point().0), r(&c.base_point().1), c.verify()?);
                for (i, s) in c.shifts.iter().enumerate() {
                    println!("# shift {i}: weight {} via {} edges", r(&s.effective_weight), s.edge_count());
                }
            }
            None => println!("# no shift certificate"),
        }
    }
    Ok(())
}

fn map(a: MapArgs, exec: Exec) -> Result<()> {
    let v = [&a.xmin, &a.xmax, &a.ymin, &a.ymax, &a.step].map(|s| rational(s));
    let [xmin, xmax, ymin, ymax, step] = v;
    let (xmin, xmax, ymin, ymax, step) = (xmin?, xmax?, ymin?, ymax?, step?);
    let recs = map_region((&xmin, &xmax), (&ymin, &ymax), &step, exec)?;
    let mut sink: Box<dyn Write> = match &a.out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    for rec in &recs {
        writeln!(sink, "{rec}")?;
    }
    sink.flush()?;
    Ok(())
}

fn verify(suite: Option<String>, full: bool, seed: u64, exec: Exec) -> Result<bool> {
    let cfg = VerifyConfig { seed, scale: if full { Scale::Full } else { Scale::Quick }, exec };
    let names: Vec<String> = match suite {
        Some(s) => vec![s],
        None => SUITES.iter().map(|s| s.to_string()).collect(),
    };
    let mut all = true;
    for n in names {
        let rep = run_suite(&n, &cfg)?;
        println!("{}\t{}\t{} checks\t{:.2?}", if rep.passed() { "PASS" } else { "FAIL" }, rep.name, rep.checks, rep.elapsed);
        for f in rep.failures.iter().take(10) {
            println!("  failure: {f}");
        }
        for note in &rep.notes {
            println!("  # {note}");
        }
        all &= rep.passed();
    }
    Ok(all)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let res = match cli.cmd {
        Cmd::Eval(a) => eval(a).map(|_| true),
        Cmd::Gadget(a) => gadget(a).map(|_| true),
        Cmd::Reduce(ReduceCmd::Mis(a)) => reduce_mis_cmd(a, exec).map(|_| true),
        Cmd::Reduce(ReduceCmd::Colouring(a)) => reduce_colouring_cmd(a).map(|_| true),
        Cmd::Classify { x, y, certificate } => classify(&x, &y, certificate).map(|_| true),
        Cmd::Map(a) => map(a, exec).map(|_| true),
        Cmd::Verify { suite, full, seed } => verify(suite, full, seed, exec),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
