//! Sequential vs rayon execution of the data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use planar_tutte::classify::map_region;
use planar_tutte::rational::{int, rat};
use planar_tutte::reduction::gamma_sweep;
use planar_tutte::tutte::{colour_sum_with, kappa_sums, DEFAULT_BRUTE_CAP, DEFAULT_COLOUR_BUDGET};
use planar_tutte::verify::stretched_k4_assembly;
use planar_tutte::{Exec, WeightedMultigraph};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn grid_graph(w: usize, h: usize) -> WeightedMultigraph {
    let mut g = WeightedMultigraph::new(w * h);
    for r in 0..h {
        for c in 0..w {
            let v = r * w + c;
            if c + 1 < w {
                g.add_edge(v, v + 1, rat(1, 2)).unwrap();
            }
            if r + 1 < h {
                g.add_edge(v, v + w, rat(1, 2)).unwrap();
            }
        }
    }
    g
}

fn subsets(c: &mut Criterion) {
    let g = grid_graph(4, 4); // 24 edges
    let mut grp = c.benchmark_group("subset_enumeration");
    grp.sample_size(10);
    for (name, exec) in MODES {
        grp.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| kappa_sums(&g, DEFAULT_BRUTE_CAP, e).unwrap()));
    }
    grp.finish();
}

fn colourings(c: &mut Criterion) {
    let g = grid_graph(4, 3);
    let y = rat(1, 2);
    let mut grp = c.benchmark_group("colour_sum");
    grp.sample_size(10);
    for (name, exec) in MODES {
        grp.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| colour_sum_with(&g, 3, &y, DEFAULT_COLOUR_BUDGET, e).unwrap()));
    }
    grp.finish();
}

fn gamma(c: &mut Criterion) {
    let asm = stretched_k4_assembly();
    let mut grp = c.benchmark_group("gamma_sweep_independent");
    grp.sample_size(10);
    for (name, exec) in MODES {
        grp.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| gamma_sweep(&asm, &int(6), &rat(-1, 10), true, e).unwrap()));
    }
    grp.finish();
}

fn grid_scan(c: &mut Criterion) {
    let (lo, hi, step) = (int(-5), int(5), rat(1, 20));
    let mut grp = c.benchmark_group("grid_scan");
    grp.sample_size(10);
    for (name, exec) in MODES {
        grp.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| b.iter(|| map_region((&lo, &hi), (&lo, &hi), &step, e).unwrap()));
    }
    grp.finish();
}

criterion_group!(benches, subsets, colourings, gamma, grid_scan);
criterion_main!(benches);
