//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; any failure fails the single test at the end.

use mimpath::decomp::{
    interval_caterpillar_decomposition, linear_order_decomposition, mim_width,
    optimal_decomposition_bruteforce,
};
use mimpath::families;
use mimpath::fragment::enumerate_fragments;
use mimpath::graph::{crossing_graph, max_induced_matching_size, BipartiteGraph, Graph};
use mimpath::hitm::hitm_solve;
use mimpath::idp::{idp_solve, TerminalPairs};
use mimpath::lip::lip_solve;
use mimpath::mvc::enumerate_minimal_vertex_covers;
use mimpath::oracle::{
    hitm_bruteforce, idp_bruteforce, is_subdivision_of, lip_bruteforce, mvc_bruteforce,
    OracleBudget,
};
use mimpath::set::{Vertex, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

struct Criterion {
    name: &'static str,
    budget: Duration,
}

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn run(&mut self, c: Criterion, body: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let result = body();
        let elapsed = start.elapsed();
        let within = elapsed <= c.budget;
        match result {
            Ok(detail) if within => {
                println!(
                    "ACCEPTANCE {}: PASS ({:.1?} / budget {:.0?}) {}",
                    c.name, elapsed, c.budget, detail
                );
            }
            Ok(detail) => {
                println!(
                    "ACCEPTANCE {}: FAIL over budget ({:.1?} > {:.0?}) {}",
                    c.name, elapsed, c.budget, detail
                );
                self.failures
                    .push(format!("{}: exceeded time budget ({elapsed:.1?})", c.name));
            }
            Err(msg) => {
                println!("ACCEPTANCE {}: FAIL ({:.1?}) {}", c.name, elapsed, msg);
                self.failures.push(format!("{}: {}", c.name, msg));
            }
        }
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(u as Vertex, v as Vertex).unwrap();
            }
        }
    }
    g
}

fn random_order(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    order.shuffle(rng);
    order
}

fn random_intervals(rng: &mut ChaCha8Rng, n: usize) -> Vec<(i64, i64)> {
    (0..n)
        .map(|_| {
            let l = rng.gen_range(0..1000i64);
            let len = rng.gen_range(1..=250i64);
            (l, l + len)
        })
        .collect()
}

/// Independent witness check: `path` lists the vertices of an induced path in
/// order (consecutive vertices adjacent, nothing else adjacent).
fn verify_induced_path(g: &Graph, path: &[Vertex]) -> bool {
    if path.is_empty() {
        return false;
    }
    let mut sorted = path.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != path.len() {
        return false;
    }
    for i in 0..path.len() {
        for j in (i + 1)..path.len() {
            let adjacent = g.adjacent(path[i], path[j]);
            if (j == i + 1) != adjacent {
                return false;
            }
        }
    }
    true
}

fn lip_families() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 3..=12 {
        out.push((format!("P{n}"), families::path_graph(n)));
        out.push((format!("C{n}"), families::cycle_graph(n)));
    }
    for n in 2..=8 {
        out.push((format!("K{n}"), families::complete_graph(n)));
    }
    for a in 1..=4 {
        for b in a..=4 {
            out.push((format!("K{a},{b}"), families::complete_bipartite(a, b)));
        }
    }
    for (r, c) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)] {
        out.push((format!("grid{r}x{c}"), families::grid_graph(r, c)));
    }
    out
}

#[test]
fn acceptance() {
    let mut report = Report { failures: Vec::new() };
    let budget = OracleBudget::default();
    let mut witnesses_checked = 0usize;
    let mut witness_failures = 0usize;

    // ---- Oracle equivalence, LIP --------------------------------------
    {
        let mut rng = ChaCha8Rng::seed_from_u64(0x11AA);
        let mut instances: Vec<(String, Graph)> = Vec::new();
        let probs = [0.2, 0.4, 0.6];
        for i in 0..500usize {
            let n = rng.gen_range(3..=12usize);
            let p = probs[i % probs.len()];
            instances.push((format!("rand{i}(n={n},p={p})"), random_graph(&mut rng, n, p)));
        }
        instances.extend(lip_families());
        let total = instances.len();
        report.run(
            Criterion {
                name: "lip-oracle-equivalence",
                budget: Duration::from_secs(300),
            },
            || {
                let mut rng = ChaCha8Rng::seed_from_u64(0x11AB);
                for (name, g) in &instances {
                    let n = g.vertex_count();
                    let expect = lip_bruteforce(g, &budget)
                        .map_err(|e| format!("{name}: oracle error {e}"))?;
                    let mut decomps = vec![
                        linear_order_decomposition(g, &(0..n as Vertex).collect::<Vec<_>>())
                            .map_err(|e| e.to_string())?,
                        linear_order_decomposition(g, &random_order(&mut rng, n))
                            .map_err(|e| e.to_string())?,
                    ];
                    if n <= 8 {
                        decomps.push(
                            optimal_decomposition_bruteforce(g, 8).map_err(|e| e.to_string())?,
                        );
                    }
                    for (di, d) in decomps.iter().enumerate() {
                        let out = lip_solve(g, d, true).map_err(|e| format!("{name}: {e}"))?;
                        if out.size != expect {
                            return Err(format!(
                                "{name} decomposition {di}: solver {} != oracle {expect}",
                                out.size
                            ));
                        }
                        let path = out.witness.ok_or_else(|| format!("{name}: no witness"))?;
                        witnesses_checked += 1;
                        if path.len() != out.size || !verify_induced_path(g, &path) {
                            witness_failures += 1;
                        }
                    }
                }
                Ok(format!("({total} instances, 2-3 decompositions each)"))
            },
        );
    }

    // ---- Oracle equivalence, IDP --------------------------------------
    report.run(
        Criterion {
            name: "idp-oracle-equivalence",
            budget: Duration::from_secs(300),
        },
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x1D_B);
            for i in 0..300usize {
                let n = rng.gen_range(4..=10usize);
                let p = [0.2, 0.4, 0.6][i % 3];
                let g = random_graph(&mut rng, n, p);
                let k = rng.gen_range(1..=3usize.min(n / 2));
                let mut verts: Vec<Vertex> = (0..n as Vertex).collect();
                verts.shuffle(&mut rng);
                let pairs: Vec<(Vertex, Vertex)> =
                    (0..k).map(|j| (verts[2 * j], verts[2 * j + 1])).collect();
                let expect = idp_bruteforce(&g, &pairs, &budget)
                    .map_err(|e| format!("instance {i}: oracle error {e}"))?;
                let terms = TerminalPairs::new(pairs.clone(), n).map_err(|e| e.to_string())?;
                let orders = [
                    (0..n as Vertex).collect::<Vec<_>>(),
                    random_order(&mut rng, n),
                ];
                for order in &orders {
                    let d = linear_order_decomposition(&g, order).map_err(|e| e.to_string())?;
                    let out =
                        idp_solve(&g, &d, &terms, true).map_err(|e| format!("instance {i}: {e}"))?;
                    if out.feasible != expect {
                        return Err(format!(
                            "instance {i} (n={n}, pairs={pairs:?}): solver {} != oracle {expect}",
                            out.feasible
                        ));
                    }
                    if let Some(paths) = out.paths {
                        witnesses_checked += 1;
                        let ok = paths.len() == pairs.len()
                            && paths.iter().enumerate().all(|(j, path)| {
                                verify_induced_path(&g, path)
                                    && path.first() == Some(&pairs[j].0)
                                    && path.last() == Some(&pairs[j].1)
                            })
                            && paths.iter().enumerate().all(|(a, pa)| {
                                paths.iter().skip(a + 1).all(|pb| {
                                    pa.iter().all(|&u| {
                                        pb.iter().all(|&w| u != w && !g.adjacent(u, w))
                                    })
                                })
                            });
                        if !ok {
                            witness_failures += 1;
                        }
                    }
                }
            }
            Ok("(300 instances, 2 decompositions each)".into())
        },
    );

    // ---- Oracle equivalence, HITM -------------------------------------
    report.run(
        Criterion {
            name: "hitm-oracle-equivalence",
            budget: Duration::from_secs(600),
        },
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x417_C);
            let patterns: Vec<(&str, Graph)> = vec![
                ("K2", families::path_graph(2)),
                ("P3", families::path_graph(3)),
                ("K3", families::complete_graph(3)),
                ("K13", families::star_graph(3)),
                ("C4", families::cycle_graph(4)),
                ("paw", families::paw_graph()),
            ];
            for i in 0..150usize {
                let n = rng.gen_range(4..=9usize);
                let p = [0.2, 0.4, 0.6][i % 3];
                let g = random_graph(&mut rng, n, p);
                let d = linear_order_decomposition(&g, &(0..n as Vertex).collect::<Vec<_>>())
                    .map_err(|e| e.to_string())?;
                for (pname, h) in &patterns {
                    let expect = hitm_bruteforce(&g, h, &budget)
                        .map_err(|e| format!("graph {i}: oracle error {e}"))?;
                    let out =
                        hitm_solve(&g, &d, h).map_err(|e| format!("graph {i} {pname}: {e}"))?;
                    if out.found != expect {
                        return Err(format!(
                            "graph {i} (n={n}) pattern {pname}: solver {} != oracle {expect}",
                            out.found
                        ));
                    }
                    if let Some(w) = out.witness {
                        witnesses_checked += 1;
                        let keep =
                            VertexSet::from_iter(g.vertex_count(), w.vertices.iter().copied());
                        let (sub, _) = g.induced_subgraph(&keep);
                        if !is_subdivision_of(&sub, h) {
                            witness_failures += 1;
                        }
                    }
                }
            }
            Ok("(150 graphs x 6 patterns)".into())
        },
    );

    // ---- Minimal vertex cover enumeration ------------------------------
    report.run(
        Criterion {
            name: "minimal-vertex-covers",
            budget: Duration::from_secs(60),
        },
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x3C0_D);
            for i in 0..200usize {
                let a = rng.gen_range(1..=7usize);
                let b = rng.gen_range(1..=(14 - a).min(7));
                let mut pairs = Vec::new();
                for x in 0..a {
                    for y in 0..b {
                        if rng.gen_bool(0.5) {
                            pairs.push((x, y));
                        }
                    }
                }
                let h = BipartiteGraph::from_sides(a, b, &pairs);
                let mim = max_induced_matching_size(&h);
                let fast = enumerate_minimal_vertex_covers(&h, mim.max(1));
                let brute = mvc_bruteforce(&h).map_err(|e| format!("instance {i}: {e}"))?;
                if fast != brute {
                    return Err(format!(
                        "instance {i} (a={a}, b={b}): {} enumerated vs {} brute-forced",
                        fast.len(),
                        brute.len()
                    ));
                }
                if h.edge_count() > 0 {
                    let n = h.vertex_count() as u64;
                    let bound = n.pow(mim as u32);
                    if fast.len() as u64 > bound {
                        return Err(format!(
                            "instance {i}: {} covers exceed bound {bound} = {n}^{mim}",
                            fast.len()
                        ));
                    }
                }
            }
            Ok("(200 bipartite graphs, exact set equality + count bound)".into())
        },
    );

    // ---- Fragment size forces induced matchings ------------------------
    report.run(
        Criterion {
            name: "fragment-matching-bound",
            budget: Duration::from_secs(60),
        },
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x1E_44A);
            let mut fragments = 0usize;
            for _ in 0..40usize {
                let a = rng.gen_range(1..=5usize);
                let b = rng.gen_range(1..=5usize);
                let mut pairs = Vec::new();
                for x in 0..a {
                    for y in 0..b {
                        if rng.gen_bool(0.45) {
                            pairs.push((x, y));
                        }
                    }
                }
                let h = BipartiteGraph::from_sides(a, b, &pairs);
                let w = max_induced_matching_size(&h).max(1);
                for f in enumerate_fragments(&h, w) {
                    if f.is_empty() {
                        continue;
                    }
                    fragments += 1;
                    let verts = f.vertices(h.universe());
                    let sub = BipartiteGraph::new(
                        h.universe(),
                        verts.intersection(h.side_a()),
                        verts.intersection(h.side_b()),
                        f.edges(),
                    )
                    .map_err(|e| e.to_string())?;
                    let mim = max_induced_matching_size(&sub);
                    let nv = verts.len();
                    let mut p = 1usize;
                    while 4 * p <= nv {
                        if mim < p {
                            return Err(format!(
                                "fragment on {nv} vertices has matching {mim} < {p}"
                            ));
                        }
                        p += 1;
                    }
                }
            }
            Ok(format!("({fragments} fragments, 0 violations)"))
        },
    );

    // ---- Interval caterpillars certify width <= 1 ----------------------
    report.run(
        Criterion {
            name: "interval-mim-width-1",
            budget: Duration::from_secs(60),
        },
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x1_F7E);
            for i in 0..100usize {
                let n = rng.gen_range(2..=50usize);
                let intervals = random_intervals(&mut rng, n);
                let (g, d) =
                    interval_caterpillar_decomposition(&intervals).map_err(|e| e.to_string())?;
                let cert = mim_width(&g, &d).map_err(|e| e.to_string())?;
                if cert.width > 1 {
                    return Err(format!(
                        "instance {i} (n={n}): certified width {} > 1",
                        cert.width
                    ));
                }
            }
            Ok("(100 interval instances, exact certification)".into())
        },
    );

    // ---- Scaling smoke test ---------------------------------------------
    report.run(
        Criterion {
            name: "scaling-smoke",
            budget: Duration::from_secs(60),
        },
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5CA_1E);
            let mut points: Vec<(usize, usize)> = Vec::new();
            let mut detail = String::new();
            for n in [10usize, 20, 30, 40, 50] {
                let intervals = random_intervals(&mut rng, n);
                let (g, d) =
                    interval_caterpillar_decomposition(&intervals).map_err(|e| e.to_string())?;
                let start = Instant::now();
                let out = lip_solve(&g, &d, true).map_err(|e| e.to_string())?;
                let elapsed = start.elapsed();
                let total: usize = out.stats.per_node_entries.iter().map(|&(_, c)| c).sum();
                let peak: usize = out
                    .stats
                    .per_node_entries
                    .iter()
                    .map(|&(_, c)| c)
                    .max()
                    .unwrap_or(0);
                println!(
                    "c scaling n={n} width={} lip={} total_entries={total} peak_entries={peak} time={elapsed:.1?}",
                    out.stats.width, out.size
                );
                points.push((n, total.max(1)));
                if n == 50 {
                    if out.stats.width > 1 {
                        return Err(format!("n=50 instance has width {}", out.stats.width));
                    }
                    if elapsed > Duration::from_secs(60) {
                        return Err(format!("n=50 run took {elapsed:.1?} (limit 60s)"));
                    }
                    detail = format!("(n=50 solved in {elapsed:.1?}; ");
                }
            }
            // least-squares slope of log(entries) against log(n)
            let logs: Vec<(f64, f64)> = points
                .iter()
                .map(|&(n, e)| ((n as f64).ln(), (e as f64).ln()))
                .collect();
            let mx = logs.iter().map(|p| p.0).sum::<f64>() / logs.len() as f64;
            let my = logs.iter().map(|p| p.1).sum::<f64>() / logs.len() as f64;
            let slope = logs
                .iter()
                .map(|p| (p.0 - mx) * (p.1 - my))
                .sum::<f64>()
                / logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
            detail.push_str(&format!("table growth exponent ~ n^{slope:.2})"));
            Ok(detail)
        },
    );

    // ---- Witness soundness ----------------------------------------------
    report.run(
        Criterion {
            name: "witness-soundness",
            budget: Duration::from_secs(1),
        },
        || {
            if witness_failures > 0 {
                Err(format!(
                    "{witness_failures} of {witnesses_checked} witnesses failed re-verification"
                ))
            } else if witnesses_checked == 0 {
                Err("no witnesses were produced".into())
            } else {
                Ok(format!("({witnesses_checked} witnesses re-verified, 0 failures)"))
            }
        },
    );

    assert!(
        report.failures.is_empty(),
        "acceptance failures:\n{}",
        report.failures.join("\n")
    );
}
