//! Simple undirected graphs, vertex cuts and their crossing graphs, and an
//! exact maximum induced matching routine for bipartite graphs.
//!
//! Vertices are dense ids `0..n-1`. The text format (`p`/`e` lines) uses
//! 1-based ids; the shift happens only at the I/O boundary.

use crate::set::{Vertex, VertexSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Edge with endpoints normalized to `u < v`.
pub type Edge = (Vertex, Vertex);

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph: no loops, no parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::empty(n); n],
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::InvalidArgument(format!("self-loop at {u}")));
        }
        if u as usize >= self.n || v as usize >= self.n {
            return Err(GraphError::InvalidArgument(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        if self.adjacent(u, v) {
            return Err(GraphError::InvalidArgument(format!(
                "parallel edge ({u},{v})"
            )));
        }
        self.adj[u as usize].insert(v);
        self.adj[v as usize].insert(u);
        self.edges.push(edge(u, v));
        self.edges.sort_unstable();
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    /// Neighbors of `v` restricted to `within`.
    pub fn neighbors_in(&self, v: Vertex, within: &VertexSet) -> VertexSet {
        self.adj[v as usize].intersection(within)
    }

    /// Union of neighborhoods of `xs`, restricted to `within`.
    pub fn neighborhood_of_set(&self, xs: &VertexSet, within: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in xs.iter() {
            out.union_in_place(&self.adj[v as usize]);
        }
        out.intersection(within)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Induced subgraph on `keep`, with vertices renumbered densely in
    /// ascending order. Returns the graph and the map new id -> old id.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<Vertex>) {
        let old_ids = keep.to_vec();
        let mut new_of = vec![u32::MAX; self.n];
        for (new, &old) in old_ids.iter().enumerate() {
            new_of[old as usize] = new as u32;
        }
        let mut g = Graph::new(old_ids.len());
        for &(u, v) in &self.edges {
            if keep.contains(u) && keep.contains(v) {
                g.add_edge(new_of[u as usize], new_of[v as usize]).unwrap();
            }
        }
        (g, old_ids)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, {:?})", self.n, self.edges.len(), self.edges)
    }
}

/// Bipartite graph on two disjoint vertex sets of a shared universe.
///
/// Only edges between `side_a` and `side_b` exist. Adjacency is stored over
/// the universe so that vertex ids agree with the host graph.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    universe: usize,
    side_a: VertexSet,
    side_b: VertexSet,
    adj: Vec<VertexSet>,
    edges: Vec<Edge>,
}

impl BipartiteGraph {
    pub fn new(
        universe: usize,
        side_a: VertexSet,
        side_b: VertexSet,
        edges: &[(Vertex, Vertex)],
    ) -> Result<Self, GraphError> {
        if !side_a.is_disjoint(&side_b) {
            return Err(GraphError::InvalidArgument(
                "bipartition sides overlap".into(),
            ));
        }
        let mut adj = vec![VertexSet::empty(universe); universe];
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            let (x, y) = if side_a.contains(u) && side_b.contains(v) {
                (u, v)
            } else if side_a.contains(v) && side_b.contains(u) {
                (v, u)
            } else {
                return Err(GraphError::InvalidArgument(format!(
                    "edge ({u},{v}) does not cross the bipartition"
                )));
            };
            adj[x as usize].insert(y);
            adj[y as usize].insert(x);
            norm.push(edge(x, y));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(BipartiteGraph {
            universe,
            side_a,
            side_b,
            adj,
            edges: norm,
        })
    }

    /// Bipartite graph on sides `0..a` and `a..a+b` from side-local pairs.
    pub fn from_sides(a: usize, b: usize, pairs: &[(usize, usize)]) -> Self {
        let n = a + b;
        let side_a = VertexSet::from_iter(n, (0..a).map(|v| v as Vertex));
        let side_b = VertexSet::from_iter(n, (a..n).map(|v| v as Vertex));
        let edges: Vec<Edge> = pairs
            .iter()
            .map(|&(x, y)| (x as Vertex, (a + y) as Vertex))
            .collect();
        BipartiteGraph::new(n, side_a, side_b, &edges).expect("valid side-local pairs")
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn side_a(&self) -> &VertexSet {
        &self.side_a
    }

    pub fn side_b(&self) -> &VertexSet {
        &self.side_b
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSet {
        self.side_a.union(&self.side_b)
    }

    pub fn vertex_count(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    /// The bipartite graph with all vertices of `drop` (and their edges) removed.
    pub fn remove_vertices(&self, drop: &VertexSet) -> BipartiteGraph {
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| !drop.contains(u) && !drop.contains(v))
            .collect();
        BipartiteGraph::new(
            self.universe,
            self.side_a.difference(drop),
            self.side_b.difference(drop),
            &edges,
        )
        .expect("removal preserves bipartition")
    }
}

impl std::fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BipartiteGraph(A={:?}, B={:?}, {:?})",
            self.side_a, self.side_b, self.edges
        )
    }
}

/// Vertices of `a` with at least one neighbor in `b`.
pub fn boundary(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<VertexSet, GraphError> {
    if !a.is_disjoint(b) {
        return Err(GraphError::InvalidArgument(
            "boundary: sets overlap".into(),
        ));
    }
    let mut out = VertexSet::empty(g.vertex_count());
    for v in a.iter() {
        if g.neighbors(v).intersects(b) {
            out.insert(v);
        }
    }
    Ok(out)
}

/// The crossing graph from `a` to `b`: the bipartite graph on the two
/// boundaries containing exactly the `a`-`b` edges of `g`.
pub fn crossing_graph(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<BipartiteGraph, GraphError> {
    let bd_a = boundary(g, a, b)?;
    let bd_b = boundary(g, b, a)?;
    let mut edges = Vec::new();
    for u in bd_a.iter() {
        for v in g.neighbors_in(u, &bd_b).iter() {
            edges.push(edge(u, v));
        }
    }
    BipartiteGraph::new(g.vertex_count(), bd_a, bd_b, &edges)
}

/// Exact maximum induced matching size by branch and bound over edges.
///
/// Two matching edges conflict if they share an endpoint or some endpoint of
/// one is adjacent to an endpoint of the other; an induced matching is an
/// independent set in that conflict relation.
pub fn max_induced_matching_size(h: &BipartiteGraph) -> usize {
    let edges = h.edges();
    let m = edges.len();
    if m == 0 {
        return 0;
    }
    // compat[i] holds the edges j > i that can coexist with edge i
    let mut compat: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in (i + 1)..m {
            if !edges_conflict(h, edges[i], edges[j]) {
                compat[i].push(j);
            }
        }
    }
    let mut best = 0usize;
    let mut stack_candidates: Vec<usize> = (0..m).collect();
    branch_mim(h, &compat, &mut stack_candidates, 0, &mut best);
    best
}

fn edges_conflict(h: &BipartiteGraph, e: Edge, f: Edge) -> bool {
    // edge tuples are sorted by id, not by side, so test every endpoint pair
    let (a1, b1) = e;
    let (a2, b2) = f;
    a1 == a2
        || a1 == b2
        || b1 == a2
        || b1 == b2
        || h.adjacent(a1, a2)
        || h.adjacent(a1, b2)
        || h.adjacent(b1, a2)
        || h.adjacent(b1, b2)
}

fn branch_mim(
    h: &BipartiteGraph,
    compat: &[Vec<usize>],
    candidates: &mut Vec<usize>,
    depth: usize,
    best: &mut usize,
) {
    if depth > *best {
        *best = depth;
    }
    if depth + candidates.len() <= *best {
        return;
    }
    let cands = candidates.clone();
    for (pos, &e) in cands.iter().enumerate() {
        if depth + (cands.len() - pos) <= *best {
            break;
        }
        let mut next: Vec<usize> = cands[pos + 1..]
            .iter()
            .copied()
            .filter(|f| compat[e].binary_search(f).is_ok())
            .collect();
        branch_mim(h, compat, &mut next, depth + 1, best);
    }
}

/// True iff `s_edges` is exactly the subgraph of `h` induced by its own
/// endpoints, and that subgraph is a disjoint union of paths in which every
/// component has at least one edge.
pub fn is_induced_disjoint_path_union(h: &BipartiteGraph, s_edges: &[Edge]) -> bool {
    let mut sorted: Vec<Edge> = s_edges.iter().map(|&(u, v)| edge(u, v)).collect();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s_edges.len() {
        return false;
    }
    for &(u, v) in &sorted {
        if !h.adjacent(u, v) {
            return false;
        }
    }
    let mut verts = VertexSet::empty(h.universe());
    for &(u, v) in &sorted {
        verts.insert(u);
        verts.insert(v);
    }
    // induced: every h-edge inside the endpoint set must be in s_edges
    for u in verts.iter() {
        for v in h.neighbors(u).intersection(&verts).iter() {
            if v > u && sorted.binary_search(&(u, v)).is_err() {
                return false;
            }
        }
    }
    is_disjoint_union_of_paths(&sorted, &verts)
}

/// Structure check used across the solvers: every vertex of `verts` has
/// degree 1 or 2 in `edges`, and every component is acyclic (hence a path
/// with at least one edge).
pub fn is_disjoint_union_of_paths(edges: &[Edge], verts: &VertexSet) -> bool {
    if edges.is_empty() {
        return verts.is_empty();
    }
    let vs = verts.to_vec();
    let index_of = |v: Vertex| vs.binary_search(&v).ok();
    let k = vs.len();
    let mut deg = vec![0usize; k];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(u, v) in edges {
        let (Some(i), Some(j)) = (index_of(u), index_of(v)) else {
            return false;
        };
        deg[i] += 1;
        deg[j] += 1;
        adj[i].push(j);
        adj[j].push(i);
    }
    if deg.iter().any(|&d| d == 0 || d > 2) {
        return false;
    }
    // acyclic: each component must contain a degree-1 vertex, walk and count
    let mut seen = vec![false; k];
    let mut covered = 0usize;
    for start in 0..k {
        if deg[start] != 1 || seen[start] {
            continue;
        }
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            seen[cur] = true;
            covered += 1;
            let next = adj[cur].iter().copied().find(|&w| w != prev);
            match next {
                Some(w) if !seen[w] => {
                    prev = cur;
                    cur = w;
                }
                _ => break,
            }
        }
    }
    covered == k
}

/// If `verts` induces a path in `g`, return its vertices in path order,
/// starting from the smaller endpoint. Single vertices count as paths.
pub fn induced_path_order(g: &Graph, verts: &VertexSet) -> Option<Vec<Vertex>> {
    let vs = verts.to_vec();
    match vs.len() {
        0 => return None,
        1 => return Some(vs),
        _ => {}
    }
    let mut ends: Vec<Vertex> = Vec::new();
    let mut edge_count = 0usize;
    for &v in &vs {
        let deg = g.neighbors_in(v, verts).len();
        edge_count += deg;
        match deg {
            1 => ends.push(v),
            2 => {}
            _ => return None,
        }
    }
    if ends.len() != 2 || edge_count != 2 * (vs.len() - 1) {
        return None;
    }
    let start = ends[0].min(ends[1]);
    let mut order = vec![start];
    let mut prev = u32::MAX;
    let mut cur = start;
    while order.len() < vs.len() {
        let next = g
            .neighbors_in(cur, verts)
            .iter()
            .find(|&w| w != prev)?;
        order.push(next);
        prev = cur;
        cur = next;
    }
    // tree + degree conditions make this a path; order covers all vertices
    Some(order)
}

// ---------------------------------------------------------------------------
// Text format: `c` comments, `p <n> <m>`, then `m` lines `e <u> <v>` (1-based)
// ---------------------------------------------------------------------------

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = Graph::new(0);
    let mut seen_edges = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut it = line.split_whitespace();
        let tag = it.next().unwrap();
        let err = |msg: String| GraphError::Parse(format!("line {}: {}", lineno + 1, msg));
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate p line".into()));
                }
                let n: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("p line needs <n> <m>".into()))?;
                let m: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("p line needs <n> <m>".into()))?;
                if it.next().is_some() {
                    return Err(err("trailing tokens on p line".into()));
                }
                header = Some((n, m));
                g = Graph::new(n);
            }
            "e" => {
                let (n, m) = header.ok_or_else(|| err("e line before p line".into()))?;
                let u: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("e line needs <u> <v>".into()))?;
                let v: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("e line needs <u> <v>".into()))?;
                if it.next().is_some() {
                    return Err(err("trailing tokens on e line".into()));
                }
                if u < 1 || u > n || v < 1 || v > n {
                    return Err(err(format!("vertex id out of range 1..{n}")));
                }
                seen_edges += 1;
                if seen_edges > m {
                    return Err(err(format!("more than {m} edges")));
                }
                g.add_edge((u - 1) as Vertex, (v - 1) as Vertex)
                    .map_err(|e| err(e.to_string()))?;
            }
            _ => return Err(err(format!("unknown line tag '{tag}'"))),
        }
    }
    let (_, m) = header.ok_or_else(|| GraphError::Parse("missing p line".into()))?;
    if seen_edges != m {
        return Err(GraphError::Parse(format!(
            "p line declares {m} edges, file has {seen_edges}"
        )));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    fn vs(n: usize, xs: &[Vertex]) -> VertexSet {
        VertexSet::from_iter(n, xs.iter().copied())
    }

    #[test]
    fn boundary_examples() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(
            boundary(&g, &vs(2, &[0]), &vs(2, &[1])).unwrap().to_vec(),
            vec![0]
        );

        let g = Graph::new(2);
        assert!(boundary(&g, &vs(2, &[0]), &vs(2, &[1])).unwrap().is_empty());

        let p4 = families::path_graph(4);
        assert_eq!(
            boundary(&p4, &vs(4, &[0, 1]), &vs(4, &[2, 3]))
                .unwrap()
                .to_vec(),
            vec![1]
        );
    }

    #[test]
    fn boundary_rejects_overlap() {
        let g = Graph::new(3);
        assert!(boundary(&g, &vs(3, &[0, 1]), &vs(3, &[1, 2])).is_err());
    }

    #[test]
    fn crossing_graph_examples() {
        let p4 = families::path_graph(4);
        let h = crossing_graph(&p4, &vs(4, &[0, 1]), &vs(4, &[2, 3])).unwrap();
        assert_eq!(h.side_a().to_vec(), vec![1]);
        assert_eq!(h.side_b().to_vec(), vec![2]);
        assert_eq!(h.edges(), &[(1, 2)]);

        let g = Graph::new(4);
        let h = crossing_graph(&g, &vs(4, &[0, 1]), &vs(4, &[2, 3])).unwrap();
        assert_eq!(h.edge_count(), 0);

        let c4 = families::cycle_graph(4);
        let h = crossing_graph(&c4, &vs(4, &[0, 1]), &vs(4, &[2, 3])).unwrap();
        assert_eq!(h.side_a().to_vec(), vec![0, 1]);
        assert_eq!(h.side_b().to_vec(), vec![2, 3]);
        assert_eq!(h.edges(), &[(0, 3), (1, 2)]);
    }

    #[test]
    fn mim_examples() {
        let k33 = BipartiteGraph::from_sides(
            3,
            3,
            &[
                (0, 0),
                (0, 1),
                (0, 2),
                (1, 0),
                (1, 1),
                (1, 2),
                (2, 0),
                (2, 1),
                (2, 2),
            ],
        );
        assert_eq!(max_induced_matching_size(&k33), 1);

        let pm3 = BipartiteGraph::from_sides(3, 3, &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(max_induced_matching_size(&pm3), 3);

        // path a1-b1-a2
        let p3 = BipartiteGraph::from_sides(2, 1, &[(0, 0), (1, 0)]);
        assert_eq!(max_induced_matching_size(&p3), 1);
    }

    #[test]
    fn induced_path_union_examples() {
        let k22 = BipartiteGraph::from_sides(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        // a single edge of K_{2,2}: endpoints induce exactly that edge
        assert!(is_induced_disjoint_path_union(&k22, &[(0, 2)]));
        // a perfect matching in K_{2,2} has cross edges
        assert!(!is_induced_disjoint_path_union(&k22, &[(0, 2), (1, 3)]));
        // empty set of edges
        assert!(is_induced_disjoint_path_union(&k22, &[]));
        // two-edge path centered on a side-a vertex
        assert!(is_induced_disjoint_path_union(&k22, &[(0, 2), (0, 3)]));
    }

    /// Exhaustive oracle: maximum induced matching by trying all edge subsets.
    fn mim_naive(h: &BipartiteGraph) -> usize {
        let edges = h.edges();
        let m = edges.len();
        assert!(m <= 12);
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let chosen: Vec<Edge> = (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let ok = chosen.iter().enumerate().all(|(i, &e)| {
                chosen[i + 1..]
                    .iter()
                    .all(|&f| !super::edges_conflict(h, e, f))
            });
            if ok {
                best = best.max(chosen.len());
            }
        }
        best
    }

    proptest! {
        #[test]
        fn mim_matches_naive_oracle(a in 1usize..5, b in 1usize..5, seed in any::<u64>()) {
            let mut pairs = Vec::new();
            let mut state = seed | 1;
            for x in 0..a {
                for y in 0..b {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 33 & 1 == 1 {
                        pairs.push((x, y));
                    }
                }
            }
            pairs.truncate(12);
            let h = BipartiteGraph::from_sides(a, b, &pairs);
            let fast = max_induced_matching_size(&h);
            prop_assert_eq!(fast, mim_naive(&h));
            prop_assert!(fast <= a.min(b));
            prop_assert_eq!(fast == 0, h.edge_count() == 0);
        }

        #[test]
        fn boundary_subset_and_crossing_edges(n in 2usize..8, seed in any::<u64>(), split in 1usize..7) {
            let g = crate::families::deterministic_random_graph(n, seed, 40);
            let split = split.min(n - 1);
            let a = VertexSet::from_iter(n, (0..split).map(|v| v as Vertex));
            let b = a.complement();
            let bd = boundary(&g, &a, &b).unwrap();
            prop_assert!(bd.is_subset(&a));
            let h = crossing_graph(&g, &a, &b).unwrap();
            let expect: Vec<Edge> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| a.contains(u) != a.contains(v))
                .collect();
            prop_assert_eq!(h.edges().to_vec(), expect);
        }
    }

    #[test]
    fn format_round_trip() {
        let g = families::cycle_graph(5);
        let text = write_graph(&g);
        let g2 = parse_graph(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(write_graph(&g2), text);

        let with_comments = "c a comment\np 3 1\nc another\ne 1 3\n";
        let g3 = parse_graph(with_comments).unwrap();
        assert_eq!(g3.edges(), &[(0, 2)]);
    }

    #[test]
    fn format_errors() {
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("p 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("p 2 2\ne 1 2\n").is_err());
        assert!(parse_graph("p 2 1\ne 1 3\n").is_err());
        assert!(parse_graph("p 2 1\ne 1 2\ne 2 1\n").is_err());
    }
}
