//! Edge counts of synthesized walk gadgets across tolerances 10^-2 … 10^-160.
use planar_tutte::gadget::hyperbola_walk;
use planar_tutte::rational::{int, pow};
use planar_tutte::verify::{walk_bases, walk_targets};
fn main() {
    for (q, base) in walk_bases() {
        for t in walk_targets() {
            let row: Vec<String> = [2i64, 4, 6, 10, 20, 40, 80, 160].iter().map(|&d| {
                let (plan, imp) = hyperbola_walk(&q, &base, &t, &pow(&int(10), -d)).unwrap();
                format!("{}:{}/m{}", d, imp.edge_count(), plan.m)
            }).collect();
            println!("q={q} T={t}: {}", row.join(" "));
        }
    }
}
