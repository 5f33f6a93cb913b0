//! Command-line front end: solve the three path problems, build and verify
//! branch decompositions, and run the brute-force reference solvers.
//!
//! Exit codes: 0 success, 2 input error, 3 invalid decomposition,
//! 4 budget or cap exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use mimpath::decomp::{
    interval_caterpillar_decomposition, linear_order_decomposition, mim_width,
    optimal_decomposition_bruteforce, parse_decomposition, write_decomposition,
    BranchDecomposition, DecompError,
};
use mimpath::graph::{parse_graph, write_graph, Graph, GraphError};
use mimpath::hitm::hitm_solve;
use mimpath::idp::{idp_solve, parse_pairs, TerminalPairs};
use mimpath::lip::{lip_solve, DpStats, SolveError};
use mimpath::oracle::{
    hitm_bruteforce, idp_bruteforce, lip_bruteforce, mvc_bruteforce, OracleBudget, OracleError,
};
use mimpath::set::{Vertex, VertexSet};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "mimpath", version, about = "Exact induced-path problems on graphs of bounded mim-width")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Longest induced path: prints `lip <k>`
    Lip {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        decomp: Option<PathBuf>,
        /// also print one optimal path
        #[arg(long)]
        witness: bool,
        /// print width and per-node table sizes as comment lines
        #[arg(long)]
        stats: bool,
    },
    /// Induced disjoint paths: prints `idp yes|no`
    Idp {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        decomp: Option<PathBuf>,
        /// terminal pairs file: one `<x> <y>` line per pair
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        stats: bool,
    },
    /// Induced topological minor of a fixed pattern: prints `hitm yes|no`
    Hitm {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        decomp: Option<PathBuf>,
        /// pattern graph in the same text format
        #[arg(long)]
        pattern: PathBuf,
        /// refuse patterns with more edges than this
        #[arg(long, default_value_t = 6)]
        max_pattern_edges: usize,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        stats: bool,
    },
    /// Build a branch decomposition and print it
    Decomp {
        /// graph file; for `--strategy interval` an intervals file
        /// (one `<left> <right>` pair per line)
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        strategy: Strategy,
        /// leaf order for `linear-order`: comma-separated 1-based ids
        #[arg(long)]
        order: Option<String>,
        /// output file (default stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// with `interval`: also write the derived graph
        #[arg(long)]
        emit_graph: Option<PathBuf>,
        /// vertex cap for the exhaustive search
        #[arg(long, default_value_t = 8)]
        max_exhaustive: usize,
    },
    /// Validate a decomposition against a graph and report its exact width
    CheckDecomp {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(short, long)]
        decomp: PathBuf,
        /// also print the mim value of every cut
        #[arg(long)]
        stats: bool,
    },
    /// Brute-force reference solvers
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Interval,
    LinearOrder,
    Exhaustive,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// prints `lip <k>`
    Lip {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// prints `idp yes|no`
    Idp {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// prints `hitm yes|no`
    Hitm {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// prints one `cover <v...>` line per minimal vertex cover
    Mvc {
        #[arg(short, long)]
        graph: PathBuf,
        /// comma-separated 1-based ids of side A
        #[arg(long)]
        side_a: String,
    },
}

const EXIT_INPUT: i32 = 2;
const EXIT_DECOMP: i32 = 3;
const EXIT_BUDGET: i32 = 4;

fn fail(code: i32, msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(code);
}

fn read_file(path: &Path) -> String {
    match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => fail(EXIT_INPUT, format!("cannot read {}: {e}", path.display())),
    }
}

fn graph_err(e: GraphError) -> ! {
    fail(EXIT_INPUT, e)
}

fn decomp_err(e: DecompError) -> ! {
    match e {
        DecompError::Parse(_) => fail(EXIT_INPUT, e),
        DecompError::Invalid(_) => fail(EXIT_DECOMP, e),
        DecompError::Graph(_) => fail(EXIT_INPUT, e),
    }
}

fn solve_err(e: SolveError) -> ! {
    match e {
        SolveError::InvalidArgument(_) => fail(EXIT_INPUT, e),
        SolveError::Decomp(inner) => decomp_err(inner),
        SolveError::Internal(_) => fail(1, e),
    }
}

fn oracle_err(e: OracleError) -> ! {
    match e {
        OracleError::BudgetExceeded(_) => fail(EXIT_BUDGET, e),
        OracleError::InvalidArgument(_) => fail(EXIT_INPUT, e),
    }
}

fn load_graph(path: &Path) -> Graph {
    match parse_graph(&read_file(path)) {
        Ok(g) => g,
        Err(e) => graph_err(e),
    }
}

fn load_decomposition(g: &Graph, path: Option<&PathBuf>) -> BranchDecomposition {
    let Some(path) = path else {
        fail(
            EXIT_INPUT,
            "a decomposition file is required (-d/--decomp) for graphs with at least 2 vertices",
        );
    };
    let d = match parse_decomposition(&read_file(path)) {
        Ok(d) => d,
        Err(e) => decomp_err(e),
    };
    if let Err(e) = d.validate_for(g) {
        decomp_err(e);
    }
    d
}

fn print_stats(stats: &DpStats) {
    println!("c width {}", stats.width);
    for &(id, count) in &stats.per_node_entries {
        println!("c node {id} entries {count}");
    }
    println!("c time_ms {}", stats.elapsed.as_millis());
}

fn main() {
    match Cli::parse().cmd {
        Cmd::Lip {
            graph,
            decomp,
            witness,
            stats,
        } => {
            let g = load_graph(&graph);
            let out = if g.vertex_count() <= 1 {
                println!("lip {}", g.vertex_count());
                if witness && g.vertex_count() == 1 {
                    println!("path 1");
                }
                return;
            } else {
                let d = load_decomposition(&g, decomp.as_ref());
                match lip_solve(&g, &d, witness) {
                    Ok(out) => out,
                    Err(e) => solve_err(e),
                }
            };
            println!("lip {}", out.size);
            if let Some(path) = &out.witness {
                let ids: Vec<String> = path.iter().map(|v| (v + 1).to_string()).collect();
                println!("path {}", ids.join(" "));
            }
            if stats {
                print_stats(&out.stats);
            }
        }
        Cmd::Idp {
            graph,
            decomp,
            pairs,
            witness,
            stats,
        } => {
            let g = load_graph(&graph);
            let pair_list = match parse_pairs(&read_file(&pairs)) {
                Ok(p) => p,
                Err(e) => solve_err(e),
            };
            let terms = match TerminalPairs::new(pair_list, g.vertex_count()) {
                Ok(t) => t,
                Err(e) => solve_err(e),
            };
            if terms.is_empty() {
                println!("idp yes");
                return;
            }
            let d = load_decomposition(&g, decomp.as_ref());
            let out = match idp_solve(&g, &d, &terms, witness) {
                Ok(out) => out,
                Err(e) => solve_err(e),
            };
            println!("idp {}", if out.feasible { "yes" } else { "no" });
            if let Some(paths) = &out.paths {
                for (i, path) in paths.iter().enumerate() {
                    let ids: Vec<String> = path.iter().map(|v| (v + 1).to_string()).collect();
                    println!("path {} {}", i + 1, ids.join(" "));
                }
            }
            if stats {
                print_stats(&out.stats);
            }
        }
        Cmd::Hitm {
            graph,
            decomp,
            pattern,
            max_pattern_edges,
            witness,
            stats,
        } => {
            let g = load_graph(&graph);
            let h = load_graph(&pattern);
            if h.edge_count() > max_pattern_edges {
                fail(
                    EXIT_INPUT,
                    format!(
                        "pattern has {} edges, over the cap of {max_pattern_edges} \
                         (raise --max-pattern-edges to override)",
                        h.edge_count()
                    ),
                );
            }
            if g.vertex_count() <= 1 {
                let found = hitm_bruteforce(&g, &h, &OracleBudget::default())
                    .unwrap_or_else(|e| oracle_err(e));
                println!("hitm {}", if found { "yes" } else { "no" });
                return;
            }
            let d = load_decomposition(&g, decomp.as_ref());
            let out = match hitm_solve(&g, &d, &h) {
                Ok(out) => out,
                Err(e) => solve_err(e),
            };
            println!("hitm {}", if out.found { "yes" } else { "no" });
            if witness {
                if let Some(w) = &out.witness {
                    let ids: Vec<String> = w.vertices.iter().map(|v| (v + 1).to_string()).collect();
                    println!("witness {}", ids.join(" "));
                }
            }
            if stats {
                println!("c placements {}", out.placements_tried);
            }
        }
        Cmd::Decomp {
            graph,
            strategy,
            order,
            output,
            emit_graph,
            max_exhaustive,
        } => {
            let (g, d) = match strategy {
                Strategy::Interval => {
                    let intervals = parse_intervals(&read_file(&graph));
                    if intervals.len() <= 1 {
                        fail(
                            EXIT_INPUT,
                            "graphs with at most one vertex admit no branch decomposition",
                        );
                    }
                    match interval_caterpillar_decomposition(&intervals) {
                        Ok(pair) => pair,
                        Err(e) => decomp_err(e),
                    }
                }
                Strategy::LinearOrder => {
                    let g = load_graph(&graph);
                    if g.vertex_count() <= 1 {
                        fail(
                            EXIT_INPUT,
                            "graphs with at most one vertex admit no branch decomposition",
                        );
                    }
                    let ord = parse_order(order.as_deref(), g.vertex_count());
                    let d = match linear_order_decomposition(&g, &ord) {
                        Ok(d) => d,
                        Err(e) => decomp_err(e),
                    };
                    (g, d)
                }
                Strategy::Exhaustive => {
                    let g = load_graph(&graph);
                    if g.vertex_count() <= 1 {
                        fail(
                            EXIT_INPUT,
                            "graphs with at most one vertex admit no branch decomposition",
                        );
                    }
                    if g.vertex_count() > max_exhaustive {
                        fail(
                            EXIT_BUDGET,
                            format!(
                                "exhaustive search capped at {max_exhaustive} vertices \
                                 (raise --max-exhaustive to override)"
                            ),
                        );
                    }
                    let d = match optimal_decomposition_bruteforce(&g, max_exhaustive) {
                        Ok(d) => d,
                        Err(e) => decomp_err(e),
                    };
                    (g, d)
                }
            };
            if let Some(path) = emit_graph {
                if let Err(e) = std::fs::write(&path, write_graph(&g)) {
                    fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display()));
                }
            }
            let text = write_decomposition(&d);
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => print!("{text}"),
            }
        }
        Cmd::CheckDecomp {
            graph,
            decomp,
            stats,
        } => {
            let g = load_graph(&graph);
            let d = load_decomposition(&g, Some(&decomp));
            let cert = match mim_width(&g, &d) {
                Ok(c) => c,
                Err(e) => decomp_err(e),
            };
            println!("width {}", cert.width);
            if stats {
                for &(id, mim) in &cert.per_edge {
                    println!("c cut {id} mim {mim}");
                }
            }
        }
        Cmd::Oracle { which } => run_oracle(which),
    }
}

fn run_oracle(which: OracleCmd) {
    match which {
        OracleCmd::Lip {
            graph,
            max_vertices,
        } => {
            let g = load_graph(&graph);
            let budget = budget_with(max_vertices);
            match lip_bruteforce(&g, &budget) {
                Ok(k) => println!("lip {k}"),
                Err(e) => oracle_err(e),
            }
        }
        OracleCmd::Idp {
            graph,
            pairs,
            max_vertices,
        } => {
            let g = load_graph(&graph);
            let pair_list = match parse_pairs(&read_file(&pairs)) {
                Ok(p) => p,
                Err(e) => solve_err(e),
            };
            let budget = budget_with(max_vertices);
            match idp_bruteforce(&g, &pair_list, &budget) {
                Ok(ans) => println!("idp {}", if ans { "yes" } else { "no" }),
                Err(e) => oracle_err(e),
            }
        }
        OracleCmd::Hitm {
            graph,
            pattern,
            max_vertices,
        } => {
            let g = load_graph(&graph);
            let h = load_graph(&pattern);
            let budget = budget_with(max_vertices);
            match hitm_bruteforce(&g, &h, &budget) {
                Ok(ans) => println!("hitm {}", if ans { "yes" } else { "no" }),
                Err(e) => oracle_err(e),
            }
        }
        OracleCmd::Mvc { graph, side_a } => {
            let g = load_graph(&graph);
            let n = g.vertex_count();
            let mut a = VertexSet::empty(n);
            for tok in side_a.split(',') {
                let id: usize = tok
                    .trim()
                    .parse()
                    .unwrap_or_else(|_| fail(EXIT_INPUT, format!("bad vertex id '{tok}'")));
                if id < 1 || id > n {
                    fail(EXIT_INPUT, format!("vertex id {id} out of range 1..{n}"));
                }
                a.insert((id - 1) as Vertex);
            }
            let b = a.complement();
            for &(u, v) in g.edges() {
                if a.contains(u) == a.contains(v) {
                    fail(
                        EXIT_INPUT,
                        format!("edge ({}, {}) does not cross the given bipartition", u + 1, v + 1),
                    );
                }
            }
            let h = match mimpath::graph::BipartiteGraph::new(n, a, b, g.edges()) {
                Ok(h) => h,
                Err(e) => graph_err(e),
            };
            match mvc_bruteforce(&h) {
                Ok(covers) => {
                    for c in covers {
                        let ids: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
                        println!("cover {}", ids.join(" "));
                    }
                }
                Err(e) => oracle_err(e),
            }
        }
    }
}

fn budget_with(max_vertices: Option<usize>) -> OracleBudget {
    let mut b = OracleBudget::default();
    if let Some(n) = max_vertices {
        b.max_vertices = n;
    }
    b
}

fn parse_intervals(text: &str) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = || {
            fail(
                EXIT_INPUT,
                format!("intervals file line {}: expected '<left> <right>'", lineno + 1),
            )
        };
        if toks.len() != 2 {
            bad();
        }
        let l: i64 = toks[0].parse().unwrap_or_else(|_| bad());
        let r: i64 = toks[1].parse().unwrap_or_else(|_| bad());
        out.push((l, r));
    }
    out
}

fn parse_order(order: Option<&str>, n: usize) -> Vec<Vertex> {
    match order {
        None => (0..n as Vertex).collect(),
        Some("identity") => (0..n as Vertex).collect(),
        Some(s) => s
            .split(',')
            .map(|tok| {
                let id: usize = tok
                    .trim()
                    .parse()
                    .unwrap_or_else(|_| fail(EXIT_INPUT, format!("bad order entry '{tok}'")));
                if id < 1 || id > n {
                    fail(EXIT_INPUT, format!("order entry {id} out of range 1..{n}"));
                }
                (id - 1) as Vertex
            })
            .collect(),
    }
}
