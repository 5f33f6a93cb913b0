use mimpath::*;
use mimpath::hitm::hitm_solve;
use mimpath::oracle::{hitm_bruteforce, OracleBudget};
use std::time::Instant;
fn main() {
    let budget = OracleBudget::default();
    let patterns: Vec<(&str, Graph)> = vec![
        ("K2", families::path_graph(2)),
        ("P3", families::path_graph(3)),
        ("K3", families::complete_graph(3)),
        ("claw", families::star_graph(3)),
        ("C4", families::cycle_graph(4)),
        ("paw", families::paw_graph()),
    ];
    let t0 = Instant::now();
    let mut count = 0; let mut yes = 0;
    for n in 4..=9usize {
        for p in [20u64, 40, 60] {
            for seed in 0..4u64 {
                let g = families::deterministic_random_graph(n, seed * 677 + p * 3 + n as u64, p);
                let order: Vec<Vertex> = (0..n as Vertex).collect();
                let d = linear_order_decomposition(&g, &order).unwrap();
                for (name, h) in &patterns {
                    let expect = hitm_bruteforce(&g, h, &budget).unwrap();
                    let got = hitm_solve(&g, &d, h).unwrap();
                    assert_eq!(got.found, expect, "pattern={name} n={n} p={p} seed={seed} g={g:?}");
                    count += 1;
                    if expect { yes += 1; }
                }
            }
        }
    }
    println!("all {count} checks agree ({yes} yes) in {:?}", t0.elapsed());
}
