//! Constructors for the named graph families used throughout the test suites.

use crate::graph::Graph;
use crate::set::Vertex;

pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for i in 1..n {
        g.add_edge((i - 1) as Vertex, i as Vertex).unwrap();
    }
    g
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut g = path_graph(n);
    g.add_edge(0, (n - 1) as Vertex).unwrap();
    g
}

pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u as Vertex, v as Vertex).unwrap();
        }
    }
    g
}

/// K_{a,b} with side A on `0..a` and side B on `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..(a + b) {
            g.add_edge(u as Vertex, v as Vertex).unwrap();
        }
    }
    g
}

/// Grid with `rows * cols` vertices; vertex (i, j) has id `i * cols + j`.
pub fn grid_graph(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::new(rows * cols);
    let id = |i: usize, j: usize| (i * cols + j) as Vertex;
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                g.add_edge(id(i, j), id(i, j + 1)).unwrap();
            }
            if i + 1 < rows {
                g.add_edge(id(i, j), id(i + 1, j)).unwrap();
            }
        }
    }
    g
}

/// Triangle with a pendant vertex attached.
pub fn paw_graph() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
}

/// Star K_{1,k} with the center at vertex 0.
pub fn star_graph(k: usize) -> Graph {
    let mut g = Graph::new(k + 1);
    for v in 1..=k {
        g.add_edge(0, v as Vertex).unwrap();
    }
    g
}

/// Seeded Erdos-Renyi-style graph from a splitmix-style generator; edge kept
/// when the draw lands below `percent`. Deterministic for a given seed.
pub fn deterministic_random_graph(n: usize, seed: u64, percent: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut state = seed.wrapping_mul(2654435769).wrapping_add(0x9e3779b97f4a7c15);
    for u in 0..n {
        for v in (u + 1)..n {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^= z >> 31;
            if z % 100 < percent {
                g.add_edge(u as Vertex, v as Vertex).unwrap();
            }
        }
    }
    g
}
