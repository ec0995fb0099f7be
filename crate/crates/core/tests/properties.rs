//! Property tests for the structural invariants of every module.

use planar_tutte::classify::{classify_point_with, map_region, ApproxStatus, ExactStatus};
use planar_tutte::gadget::{effective_weight, parallel_series_weight, Composition, SpGadget};
use planar_tutte::graph::{independent_sets, mis_size, parse_graph, serialize_graph};
use planar_tutte::rational::{fmt_rational, int, parse_rational, pow, rat, Interval, Rational};
use planar_tutte::reduction::{decide_mis, y_closed_forms, y_gadget, MisVerdict};
use planar_tutte::tutte::{colour_sum, tutte_eval, z_bruteforce, z_delcon, z_terminal_partitions};
use planar_tutte::{Exec, WeightedMultigraph};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |r| *r != 0)
}

fn multigraph(max_n: usize, max_m: usize, loops: bool) -> impl Strategy<Value = WeightedMultigraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, small_rat()), 0..=max_m).prop_map(move |es| {
            let mut g = WeightedMultigraph::new(n);
            for (u, v, w) in es {
                if u != v || loops {
                    g.add_edge(u, v, w).unwrap();
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(r in small_rat()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
    }

    #[test]
    fn graph_text_round_trip(g in multigraph(6, 9, true)) {
        let back = parse_graph(&serialize_graph(&g)).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn methods_agree(g in multigraph(6, 9, true), q in nonzero_rat()) {
        prop_assert_eq!(z_delcon(&g, &q).unwrap(), z_bruteforce(&g, &q).unwrap());
    }

    #[test]
    fn partition_table_sums_to_z(g in multigraph(5, 7, true), q in nonzero_rat()) {
        let k = g.vertex_count().min(3);
        let terms: Vec<usize> = (0..k).collect();
        let t = z_terminal_partitions(&g, &q, &terms).unwrap();
        prop_assert_eq!(t.total(), z_delcon(&g, &q).unwrap());
    }

    #[test]
    fn colour_sum_is_potts(g in multigraph(5, 7, true), y in small_rat()) {
        let h = g.with_uniform_weight(&Rational::from(&y - 1u32));
        prop_assert_eq!(colour_sum(&g, 3, &y).unwrap(), z_delcon(&h, &int(3)).unwrap());
    }

    #[test]
    fn tutte_edge_count_at_two_two(g in multigraph(5, 8, true)) {
        // T(G; 2, 2) = 2^{|E|}.
        prop_assert_eq!(tutte_eval(&g, &int(2), &int(2)).unwrap(), pow(&int(2), g.edge_count() as i64));
    }

    #[test]
    fn pair_compositions_match_gadgets(w1 in small_rat(), w2 in small_rat(), q in nonzero_rat(), series in any::<bool>()) {
        let kind = if series { Composition::Series } else { Composition::Parallel };
        let parts = vec![SpGadget::edge(w1.clone()), SpGadget::edge(w2.clone())];
        let g = if series { SpGadget::series(parts) } else { SpGadget::parallel(parts) };
        match (parallel_series_weight(kind, &w1, &w2, &q), g.eval(&q)) {
            (Ok((w, s)), Ok(v)) => {
                prop_assert_eq!(&w, &v.weight);
                prop_assert_eq!(&s, &v.scale);
                let m = g.materialize(8).unwrap();
                prop_assert_eq!(effective_weight(&m, &q).unwrap(), (w, s));
            }
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn y_gadget_closed_forms(q in nonzero_rat(), a in small_rat(), b in small_rat()) {
        let y = y_closed_forms(&q, &a, &b).unwrap();
        prop_assert!(y.matches_enumeration().unwrap());
        prop_assert_eq!(y.total(), z_delcon(&y_gadget(&a, &b), &q).unwrap());
    }

    #[test]
    fn independent_sets_are_independent(g in multigraph(7, 10, false)) {
        let sets = independent_sets(&g, 64).unwrap();
        let best = sets.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0);
        prop_assert_eq!(best, mis_size(&g).unwrap());
        for s in sets {
            for e in g.edges() {
                prop_assert!(s >> e.u & 1 == 0 || s >> e.v & 1 == 0);
            }
        }
    }

    #[test]
    fn decisions_respect_thresholds(c in small_rat(), r in (0i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d)), psi in (1i64..=12).prop_map(int)) {
        let iv = Interval::ball(&c, &r);
        match decide_mis(&iv, &psi) {
            MisVerdict::Yes => prop_assert!(iv.min_abs() * 4u32 >= Rational::from(&psi * 3u32)),
            MisVerdict::No => prop_assert!(iv.max_abs() * 4u32 <= psi),
            MisVerdict::Indeterminate => {}
        }
    }

    #[test]
    fn classification_symmetric(x in small_rat(), y in small_rat()) {
        let a = classify_point_with(&x, &y, false);
        let b = classify_point_with(&y, &x, false);
        let dual = match a.approx { ApproxStatus::NoFpras(r) => ApproxStatus::NoFpras(r.dual()), s => s };
        prop_assert_eq!(b.approx, dual);
        prop_assert_eq!(a.exact, b.exact);
        if a.exact == ExactStatus::FpEasy {
            prop_assert_eq!(a.approx, ApproxStatus::ExactEasy);
        }
    }
}

#[test]
fn scans_identical_across_strategies() {
    let (lo, hi, step) = (int(-3), int(3), rat(1, 3));
    let a = map_region((&lo, &hi), (&lo, &hi), &step, Exec::Sequential).unwrap();
    let b = map_region((&lo, &hi), (&lo, &hi), &step, Exec::Parallel).unwrap();
    let fmt = |v: &[planar_tutte::classify::MapRecord]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>();
    assert_eq!(fmt(&a), fmt(&b));
    assert!(a.iter().all(|r| r.q == Rational::from(&r.x - 1u32) * Rational::from(&r.y - 1u32)));
}
