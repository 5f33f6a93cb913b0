//! Brute-force reference solvers. These are written directly against the
//! problem definitions and share no machinery with the dynamic-programming
//! solvers beyond the graph type; they exist to be slow, obvious and right.

use crate::graph::{BipartiteGraph, Graph};
use crate::set::{Vertex, VertexSet};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Caps for the exhaustive searches.
#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_pairs: usize,
    pub timeout: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 14,
            max_pairs: 4,
            timeout: Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    fn check_n(&self, n: usize) -> Result<(), OracleError> {
        if n > self.max_vertices {
            return Err(OracleError::BudgetExceeded(format!(
                "n = {n} exceeds max_vertices = {}",
                self.max_vertices
            )));
        }
        Ok(())
    }
}

struct Deadline {
    end: Instant,
}

impl Deadline {
    fn new(budget: &OracleBudget) -> Self {
        Deadline {
            end: Instant::now() + budget.timeout,
        }
    }

    fn check(&self) -> Result<(), OracleError> {
        if Instant::now() > self.end {
            return Err(OracleError::BudgetExceeded("timeout".into()));
        }
        Ok(())
    }
}

/// Size of a largest vertex set inducing a path, by depth-first extension of
/// induced paths. A single vertex induces a (trivial) path, so the answer is
/// at least 1 whenever the graph is nonempty.
pub fn lip_bruteforce(g: &Graph, budget: &OracleBudget) -> Result<usize, OracleError> {
    let n = g.vertex_count();
    budget.check_n(n)?;
    if n == 0 {
        return Ok(0);
    }
    let deadline = Deadline::new(budget);
    let mut best = 1usize;
    let mut path: Vec<Vertex> = Vec::new();
    let mut on_path = VertexSet::empty(n);
    for start in 0..n as Vertex {
        path.push(start);
        on_path.insert(start);
        extend_induced_path(g, &mut path, &mut on_path, &mut best, &deadline)?;
        on_path.remove(start);
        path.pop();
    }
    Ok(best)
}

fn extend_induced_path(
    g: &Graph,
    path: &mut Vec<Vertex>,
    on_path: &mut VertexSet,
    best: &mut usize,
    deadline: &Deadline,
) -> Result<(), OracleError> {
    deadline.check()?;
    *best = (*best).max(path.len());
    let last = *path.last().unwrap();
    for next in g.neighbors(last).to_vec() {
        if on_path.contains(next) {
            continue;
        }
        if path[..path.len() - 1].iter().any(|&p| g.adjacent(p, next)) {
            continue;
        }
        path.push(next);
        on_path.insert(next);
        extend_induced_path(g, path, on_path, best, deadline)?;
        on_path.remove(next);
        path.pop();
    }
    Ok(())
}

/// Backtracking search for vertex-disjoint induced paths joining the given
/// terminal pairs, with no adjacency between distinct paths.
pub fn idp_bruteforce(
    g: &Graph,
    pairs: &[(Vertex, Vertex)],
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    budget.check_n(n)?;
    if pairs.len() > budget.max_pairs {
        return Err(OracleError::BudgetExceeded(format!(
            "k = {} exceeds max_pairs = {}",
            pairs.len(),
            budget.max_pairs
        )));
    }
    validate_terminals(n, pairs)?;
    if pairs.is_empty() {
        return Ok(true);
    }
    let deadline = Deadline::new(budget);
    let mut used = VertexSet::empty(n);
    route_pairs(g, pairs, 0, &mut used, &deadline)
}

pub(crate) fn validate_terminals(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<(), OracleError> {
    let mut all: Vec<Vertex> = Vec::new();
    for &(x, y) in pairs {
        if x == y {
            return Err(OracleError::InvalidArgument(format!(
                "terminal pair ({}, {}) is degenerate",
                x + 1,
                y + 1
            )));
        }
        if x as usize >= n || y as usize >= n {
            return Err(OracleError::InvalidArgument("terminal out of range".into()));
        }
        all.push(x);
        all.push(y);
    }
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(OracleError::InvalidArgument(
            "terminal vertices are not distinct".into(),
        ));
    }
    Ok(())
}

fn route_pairs(
    g: &Graph,
    pairs: &[(Vertex, Vertex)],
    i: usize,
    used: &mut VertexSet,
    deadline: &Deadline,
) -> Result<bool, OracleError> {
    if i == pairs.len() {
        return Ok(true);
    }
    deadline.check()?;
    let n = g.vertex_count();
    let (x, y) = pairs[i];
    // path i must avoid earlier paths and their neighborhoods, and the
    // terminals of later pairs and their neighborhoods
    let mut forbidden = used.clone();
    forbidden.union_in_place(&g.neighborhood_of_set(used, &g.all_vertices()));
    for &(a, b) in &pairs[i + 1..] {
        for t in [a, b] {
            forbidden.insert(t);
            forbidden.union_in_place(g.neighbors(t));
        }
    }
    if forbidden.contains(x) || forbidden.contains(y) {
        return Ok(false);
    }
    let mut path = vec![x];
    let mut on_path = VertexSet::empty(n);
    on_path.insert(x);
    route_one(g, pairs, i, y, &mut path, &mut on_path, &forbidden, used, deadline)
}

#[allow(clippy::too_many_arguments)]
fn route_one(
    g: &Graph,
    pairs: &[(Vertex, Vertex)],
    i: usize,
    target: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut VertexSet,
    forbidden: &VertexSet,
    used: &mut VertexSet,
    deadline: &Deadline,
) -> Result<bool, OracleError> {
    deadline.check()?;
    let last = *path.last().unwrap();
    if last == target {
        let mut next_used = used.clone();
        next_used.union_in_place(on_path);
        if route_pairs(g, pairs, i + 1, &mut next_used, deadline)? {
            return Ok(true);
        }
        return Ok(false);
    }
    for next in g.neighbors(last).to_vec() {
        if on_path.contains(next) || forbidden.contains(next) {
            continue;
        }
        if path[..path.len() - 1].iter().any(|&p| g.adjacent(p, next)) {
            continue;
        }
        path.push(next);
        on_path.insert(next);
        if route_one(g, pairs, i, target, path, on_path, forbidden, used, deadline)? {
            return Ok(true);
        }
        on_path.remove(next);
        path.pop();
    }
    Ok(false)
}

/// Does `g` contain `pattern` as an induced topological minor? Checked by
/// enumerating vertex subsets and testing subdivision recognition.
pub fn hitm_bruteforce(
    g: &Graph,
    pattern: &Graph,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    budget.check_n(n)?;
    let deadline = Deadline::new(budget);
    let hv = pattern.vertex_count();
    let he = pattern.edge_count();
    if hv == 0 {
        return Ok(true);
    }
    for mask in 0usize..(1 << n) {
        deadline.check()?;
        let size = mask.count_ones() as usize;
        if size < hv {
            continue;
        }
        // a subdivision of H on `size` vertices has exactly |E(H)| + size - |V(H)| edges
        let keep = VertexSet::from_iter(n, (0..n as Vertex).filter(|&v| mask >> v & 1 == 1));
        let (w, _) = g.induced_subgraph(&keep);
        if w.edge_count() != he + size - hv {
            continue;
        }
        if is_subdivision_of(&w, pattern) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff `w` is (isomorphic to) a subdivision of `h`.
///
/// Tries every injective, degree-preserving placement of the branch vertices
/// and then decomposes `w` into internally disjoint paths realizing the edges
/// of `h` exactly once each, using every edge of `w`.
pub fn is_subdivision_of(w: &Graph, h: &Graph) -> bool {
    let nw = w.vertex_count();
    let nh = h.vertex_count();
    if nw < nh || w.edge_count() != h.edge_count() + nw - nh {
        return false;
    }
    // subdivision vertices all have degree 2; vertices of other degrees must
    // be branch vertices
    let forced: Vec<Vertex> = (0..nw as Vertex).filter(|&v| w.degree(v) != 2).collect();
    if forced.len() > nh {
        return false;
    }
    let mut image = vec![u32::MAX; nh];
    let mut taken = VertexSet::empty(nw);
    place_branch_vertices(w, h, 0, &mut image, &mut taken)
}

fn place_branch_vertices(
    w: &Graph,
    h: &Graph,
    x: usize,
    image: &mut Vec<u32>,
    taken: &mut VertexSet,
) -> bool {
    if x == h.vertex_count() {
        // all degree-2 rule for non-image vertices
        for v in 0..w.vertex_count() as Vertex {
            if !taken.contains(v) && w.degree(v) != 2 {
                return false;
            }
        }
        return paths_realize_pattern(w, h, image);
    }
    for v in 0..w.vertex_count() as Vertex {
        if taken.contains(v) || w.degree(v) != h.degree(x as Vertex) {
            continue;
        }
        image[x] = v;
        taken.insert(v);
        if place_branch_vertices(w, h, x + 1, image, taken) {
            return true;
        }
        taken.remove(v);
        image[x] = u32::MAX;
    }
    false
}

fn paths_realize_pattern(w: &Graph, h: &Graph, image: &[u32]) -> bool {
    let nw = w.vertex_count();
    let mut owner = vec![u32::MAX; nw];
    for (x, &v) in image.iter().enumerate() {
        owner[v as usize] = x as u32;
    }
    let mut edge_used: std::collections::BTreeSet<(Vertex, Vertex)> = Default::default();
    let mut realized: Vec<(u32, u32)> = Vec::new();
    for (x, &vx) in image.iter().enumerate() {
        for first in w.neighbors(vx).to_vec() {
            let e0 = crate::graph::edge(vx, first);
            if edge_used.contains(&e0) {
                continue;
            }
            edge_used.insert(e0);
            let mut prev = vx;
            let mut cur = first;
            loop {
                if owner[cur as usize] != u32::MAX {
                    let y = owner[cur as usize];
                    if y as usize == x && cur == vx {
                        return false; // closed walk back into the same branch vertex
                    }
                    let (a, b) = if (x as u32) < y { (x as u32, y) } else { (y, x as u32) };
                    if a == b {
                        return false;
                    }
                    realized.push((a, b));
                    break;
                }
                // interior vertex: degree exactly 2, continue along the other edge
                let nbrs = w.neighbors(cur).to_vec();
                debug_assert_eq!(nbrs.len(), 2);
                let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
                let e = crate::graph::edge(cur, next);
                if edge_used.contains(&e) {
                    return false;
                }
                edge_used.insert(e);
                prev = cur;
                cur = next;
            }
        }
    }
    if edge_used.len() != w.edge_count() {
        return false; // leftover edges form components without branch vertices
    }
    realized.sort_unstable();
    let mut expect: Vec<(u32, u32)> = h.edges().to_vec();
    expect.sort_unstable();
    realized == expect
}

/// All minimal vertex covers of a bipartite graph by subset enumeration.
pub fn mvc_bruteforce(h: &BipartiteGraph) -> Result<Vec<VertexSet>, OracleError> {
    let verts = h.vertices().to_vec();
    if verts.len() > 14 {
        return Err(OracleError::BudgetExceeded(format!(
            "mvc_bruteforce limited to 14 vertices, got {}",
            verts.len()
        )));
    }
    let n = h.universe();
    let mut out = Vec::new();
    'mask: for mask in 0usize..(1 << verts.len()) {
        let m = VertexSet::from_iter(
            n,
            verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v),
        );
        for &(u, v) in h.edges() {
            if !m.contains(u) && !m.contains(v) {
                continue 'mask;
            }
        }
        // minimality: every cover vertex has a privately covered edge
        for v in m.iter() {
            let private = h.neighbors(v).iter().any(|u| !m.contains(u));
            if !private {
                continue 'mask;
            }
        }
        out.push(m);
    }
    out.sort();
    Ok(out)
}
