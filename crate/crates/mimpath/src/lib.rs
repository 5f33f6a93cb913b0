//! Exact solvers for Longest Induced Path, Induced Disjoint Paths and
//! H-Induced Topological Minor on graphs supplied with a branch
//! decomposition, by dynamic programming over the decomposition indexed by
//! boundary path fragments, minimal vertex covers of the remaining crossing
//! edges, and pairings of loose path ends. Brute-force reference solvers are
//! included for verification.

pub mod decomp;
pub mod dp;
pub mod families;
pub mod fragment;
pub mod graph;
pub mod hitm;
pub mod idp;
pub mod lip;
pub mod mvc;
pub mod oracle;
pub mod set;

pub use decomp::{
    interval_caterpillar_decomposition, linear_order_decomposition, mim_width,
    optimal_decomposition_bruteforce, parse_decomposition, root_decomposition,
    write_decomposition, BranchDecomposition, DecompError, UnrootedDecomposition,
    WidthCertificate,
};
pub use graph::{
    boundary, crossing_graph, is_induced_disjoint_path_union, max_induced_matching_size,
    parse_graph, write_graph, BipartiteGraph, Graph, GraphError,
};
pub use set::{Vertex, VertexSet};
