//! Branch decompositions: rooted subcubic trees with a leaf-vertex bijection,
//! per-node vertex sets, exact width certification, and constructions
//! (caterpillars from vertex orders, interval-graph caterpillars, exhaustive
//! search over all decompositions for small graphs).

use crate::graph::{crossing_graph, max_induced_matching_size, Graph, GraphError};
use crate::set::{Vertex, VertexSet};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecompError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid decomposition: {0}")]
    Invalid(String),
    #[error("{0}")]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(Vertex),
    Internal(usize, usize),
}

#[derive(Clone, Debug)]
struct Node {
    kind: NodeKind,
    parent: Option<usize>,
    ext_id: u32,
}

/// A rooted branch decomposition. The root and every internal node have
/// exactly two children; leaves are in bijection with the graph vertices.
/// `V_t` is cached per node at construction.
#[derive(Clone, Debug)]
pub struct BranchDecomposition {
    nodes: Vec<Node>,
    root: usize,
    n: usize,
    vt: Vec<VertexSet>,
}

/// Exact per-cut mim values of a decomposition; `width` is their maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthCertificate {
    pub width: usize,
    /// One entry per tree edge: (external id of the child-side node, mim value).
    pub per_edge: Vec<(u32, usize)>,
}

impl BranchDecomposition {
    fn assemble(kinds: Vec<(NodeKind, u32)>, root: usize, n: usize) -> Result<Self, DecompError> {
        let mut nodes: Vec<Node> = kinds
            .into_iter()
            .map(|(kind, ext_id)| Node {
                kind,
                parent: None,
                ext_id,
            })
            .collect();
        for i in 0..nodes.len() {
            if let NodeKind::Internal(a, b) = nodes[i].kind {
                for c in [a, b] {
                    if c >= nodes.len() {
                        return Err(DecompError::Invalid("child index out of range".into()));
                    }
                    if nodes[c].parent.is_some() {
                        return Err(DecompError::Invalid(format!(
                            "node {} has two parents",
                            nodes[c].ext_id
                        )));
                    }
                    nodes[c].parent = Some(i);
                }
            }
        }
        if nodes[root].parent.is_some() {
            return Err(DecompError::Invalid("root has a parent".into()));
        }
        for (i, node) in nodes.iter().enumerate() {
            if i != root && node.parent.is_none() {
                return Err(DecompError::Invalid(format!(
                    "node {} unreachable from the root",
                    node.ext_id
                )));
            }
        }
        // leaf bijection with [0..n-1]
        let mut seen = vec![false; n];
        let mut leaves = 0usize;
        for node in &nodes {
            if let NodeKind::Leaf(v) = node.kind {
                if (v as usize) >= n || seen[v as usize] {
                    return Err(DecompError::Invalid(format!(
                        "leaf map is not a bijection (vertex {})",
                        v + 1
                    )));
                }
                seen[v as usize] = true;
                leaves += 1;
            }
        }
        if leaves != n {
            return Err(DecompError::Invalid(format!(
                "decomposition has {leaves} leaves for {n} vertices"
            )));
        }
        let mut d = BranchDecomposition {
            nodes,
            root,
            n,
            vt: Vec::new(),
        };
        d.vt = vec![VertexSet::empty(n); d.nodes.len()];
        for &t in d.postorder().iter() {
            d.vt[t] = match d.nodes[t].kind {
                NodeKind::Leaf(v) => VertexSet::from_iter(n, [v]),
                NodeKind::Internal(a, b) => {
                    if d.vt[a].intersects(&d.vt[b]) {
                        return Err(DecompError::Invalid("overlapping child leaf sets".into()));
                    }
                    d.vt[a].union(&d.vt[b])
                }
            };
        }
        Ok(d)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn kind(&self, t: usize) -> &NodeKind {
        &self.nodes[t].kind
    }

    pub fn ext_id(&self, t: usize) -> u32 {
        self.nodes[t].ext_id
    }

    /// The set of graph vertices mapped to leaves below `t`.
    pub fn vertices_below(&self, t: usize) -> &VertexSet {
        &self.vt[t]
    }

    /// Nodes in bottom-up order (children before parents).
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((t, expanded)) = stack.pop() {
            if expanded {
                order.push(t);
            } else {
                stack.push((t, true));
                if let NodeKind::Internal(a, b) = self.nodes[t].kind {
                    stack.push((b, false));
                    stack.push((a, false));
                }
            }
        }
        order
    }

    pub fn swap_children(&mut self, t: usize) {
        if let NodeKind::Internal(a, b) = self.nodes[t].kind {
            self.nodes[t].kind = NodeKind::Internal(b, a);
        }
    }

    /// Check that this decomposition fits graph `g`.
    pub fn validate_for(&self, g: &Graph) -> Result<(), DecompError> {
        if self.n != g.vertex_count() {
            return Err(DecompError::Invalid(format!(
                "decomposition over {} vertices, graph has {}",
                self.n,
                g.vertex_count()
            )));
        }
        Ok(())
    }

    /// Restriction to the leaves in `keep`, with degree-two nodes smoothed and
    /// vertices renumbered by `new_of`. Returns `None` when fewer than two
    /// leaves survive.
    pub fn restrict(
        &self,
        keep: &VertexSet,
        new_of: &[Option<Vertex>],
    ) -> Option<BranchDecomposition> {
        let n_new = keep.len();
        if n_new < 2 {
            return None;
        }
        let mut kinds: Vec<(NodeKind, u32)> = Vec::new();
        let surviving = self.prune_into(self.root, keep, new_of, &mut kinds)?;
        match kinds[surviving].0 {
            NodeKind::Leaf(_) => None,
            NodeKind::Internal(..) => {
                Some(BranchDecomposition::assemble(kinds, surviving, n_new).expect("valid restriction"))
            }
        }
    }

    fn prune_into(
        &self,
        t: usize,
        keep: &VertexSet,
        new_of: &[Option<Vertex>],
        kinds: &mut Vec<(NodeKind, u32)>,
    ) -> Option<usize> {
        match self.nodes[t].kind {
            NodeKind::Leaf(v) => {
                if keep.contains(v) {
                    kinds.push((NodeKind::Leaf(new_of[v as usize].unwrap()), kinds.len() as u32));
                    Some(kinds.len() - 1)
                } else {
                    None
                }
            }
            NodeKind::Internal(a, b) => {
                let left = self.prune_into(a, keep, new_of, kinds);
                let right = self.prune_into(b, keep, new_of, kinds);
                match (left, right) {
                    (None, None) => None,
                    (Some(x), None) | (None, Some(x)) => Some(x),
                    (Some(x), Some(y)) => {
                        kinds.push((NodeKind::Internal(x, y), kinds.len() as u32));
                        Some(kinds.len() - 1)
                    }
                }
            }
        }
    }
}

/// An unrooted subcubic tree with a leaf-vertex bijection, as read from the
/// `u`/`l` file form or produced by the builders.
#[derive(Clone, Debug, Default)]
pub struct UnrootedDecomposition {
    adj: BTreeMap<u32, Vec<u32>>,
    leaf_vertex: BTreeMap<u32, Vertex>,
}

impl UnrootedDecomposition {
    pub fn new() -> Self {
        Default::default()
    }

    pub fn add_edge(&mut self, a: u32, b: u32) {
        let la = self.adj.entry(a).or_default();
        if !la.contains(&b) {
            la.push(b);
        }
        let lb = self.adj.entry(b).or_default();
        if !lb.contains(&a) {
            lb.push(a);
        }
    }

    pub fn set_leaf(&mut self, id: u32, vertex: Vertex) {
        self.adj.entry(id).or_default();
        self.leaf_vertex.insert(id, vertex);
    }
}

/// Root an unrooted decomposition by subdividing its lexicographically
/// smallest edge (ordered by node-id pair) and rooting at the new node.
pub fn root_decomposition(t: &UnrootedDecomposition) -> Result<BranchDecomposition, DecompError> {
    let n = t.leaf_vertex.len();
    if n <= 1 {
        return Err(DecompError::Invalid(
            "graphs with at most one vertex admit no branch decomposition".into(),
        ));
    }
    // validity of the tree shape
    let mut edge_count = 0usize;
    for (&id, nbrs) in &t.adj {
        if nbrs.len() > 3 {
            return Err(DecompError::Invalid(format!("node {id} has degree > 3")));
        }
        let is_leaf = t.leaf_vertex.contains_key(&id);
        if is_leaf && nbrs.len() != 1 {
            return Err(DecompError::Invalid(format!(
                "leaf {id} must have degree 1, has {}",
                nbrs.len()
            )));
        }
        if !is_leaf && nbrs.len() < 2 {
            return Err(DecompError::Invalid(format!(
                "internal node {id} has degree {}",
                nbrs.len()
            )));
        }
        edge_count += nbrs.len();
    }
    let node_count = t.adj.len();
    if edge_count % 2 != 0 || edge_count / 2 != node_count - 1 {
        return Err(DecompError::Invalid("not a tree (edge count)".into()));
    }
    // bijection over [0..n-1]
    let mut seen = vec![false; n];
    for &v in t.leaf_vertex.values() {
        if (v as usize) >= n || seen[v as usize] {
            return Err(DecompError::Invalid(
                "leaf map is not a bijection onto the vertex set".into(),
            ));
        }
        seen[v as usize] = true;
    }
    // connectivity
    {
        let start = *t.adj.keys().next().unwrap();
        let mut stack = vec![start];
        let mut visited = std::collections::BTreeSet::new();
        visited.insert(start);
        while let Some(x) = stack.pop() {
            for &y in &t.adj[&x] {
                if visited.insert(y) {
                    stack.push(y);
                }
            }
        }
        if visited.len() != node_count {
            return Err(DecompError::Invalid("not a tree (disconnected)".into()));
        }
    }

    // smooth degree-2 internal nodes (their two incident edges induce the
    // same cut); repeat until none remain
    let mut adj = t.adj.clone();
    loop {
        let deg2: Option<u32> = adj
            .iter()
            .find(|(id, nbrs)| nbrs.len() == 2 && !t.leaf_vertex.contains_key(id))
            .map(|(&id, _)| id);
        let Some(id) = deg2 else { break };
        let nbrs = adj.remove(&id).unwrap();
        let (a, b) = (nbrs[0], nbrs[1]);
        for (x, y) in [(a, b), (b, a)] {
            let lst = adj.get_mut(&x).unwrap();
            lst.retain(|&z| z != id);
            if !lst.contains(&y) {
                lst.push(y);
            }
        }
    }

    // lexicographically smallest edge
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (&a, nbrs) in &adj {
        for &b in nbrs {
            if a < b {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    let (ea, eb) = edges[0];
    let root_ext = adj.keys().max().unwrap() + 1;

    // orient away from the root
    let mut kinds: Vec<(NodeKind, u32)> = Vec::new();
    let mut index_of: BTreeMap<u32, usize> = BTreeMap::new();
    // recursive orientation with an explicit stack; children ordered by ext id
    fn orient(
        at: u32,
        from: u32,
        adj: &BTreeMap<u32, Vec<u32>>,
        leaf_vertex: &BTreeMap<u32, Vertex>,
        kinds: &mut Vec<(NodeKind, u32)>,
        index_of: &mut BTreeMap<u32, usize>,
    ) -> Result<usize, DecompError> {
        let mut nbrs: Vec<u32> = adj[&at].iter().copied().filter(|&x| x != from).collect();
        nbrs.sort_unstable();
        let kind = if let Some(&v) = leaf_vertex.get(&at) {
            if !nbrs.is_empty() {
                return Err(DecompError::Invalid(format!("leaf {at} has children")));
            }
            NodeKind::Leaf(v)
        } else {
            if nbrs.len() != 2 {
                return Err(DecompError::Invalid(format!(
                    "internal node {at} does not become binary after rooting"
                )));
            }
            let a = orient(nbrs[0], at, adj, leaf_vertex, kinds, index_of)?;
            let b = orient(nbrs[1], at, adj, leaf_vertex, kinds, index_of)?;
            NodeKind::Internal(a, b)
        };
        kinds.push((kind, at));
        index_of.insert(at, kinds.len() - 1);
        Ok(kinds.len() - 1)
    }

    let left = orient(ea, eb, &adj, &t.leaf_vertex, &mut kinds, &mut index_of)?;
    let right = orient(eb, ea, &adj, &t.leaf_vertex, &mut kinds, &mut index_of)?;
    kinds.push((NodeKind::Internal(left, right), root_ext));
    let root = kinds.len() - 1;
    BranchDecomposition::assemble(kinds, root, n)
}

/// Exact mim value of every cut of the decomposition.
pub fn mim_width(g: &Graph, d: &BranchDecomposition) -> Result<WidthCertificate, DecompError> {
    d.validate_for(g)?;
    let all = g.all_vertices();
    let mut per_edge = Vec::new();
    let mut width = 0usize;
    for t in 0..d.node_count() {
        if t == d.root() {
            continue;
        }
        let vt = d.vertices_below(t);
        let h = crossing_graph(g, vt, &all.difference(vt))?;
        let mim = max_induced_matching_size(&h);
        width = width.max(mim);
        per_edge.push((d.ext_id(t), mim));
    }
    per_edge.sort_unstable();
    Ok(WidthCertificate { width, per_edge })
}

/// Per-cut mim values indexed by internal node index rather than external id;
/// used by the solvers to size their fragment caps per cut.
pub(crate) fn per_node_mims(g: &Graph, d: &BranchDecomposition) -> Result<Vec<usize>, DecompError> {
    d.validate_for(g)?;
    let all = g.all_vertices();
    let mut mims = vec![0usize; d.node_count()];
    for t in 0..d.node_count() {
        if t == d.root() {
            continue;
        }
        let vt = d.vertices_below(t);
        let h = crossing_graph(g, vt, &all.difference(vt))?;
        mims[t] = max_induced_matching_size(&h);
    }
    Ok(mims)
}

/// Caterpillar decomposition whose leaves follow `order`.
pub fn linear_order_decomposition(
    g: &Graph,
    order: &[Vertex],
) -> Result<BranchDecomposition, DecompError> {
    let n = g.vertex_count();
    if n <= 1 {
        return Err(DecompError::Invalid(
            "graphs with at most one vertex admit no branch decomposition".into(),
        ));
    }
    if order.len() != n {
        return Err(DecompError::Invalid("order is not a permutation".into()));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if (v as usize) >= n || seen[v as usize] {
            return Err(DecompError::Invalid("order is not a permutation".into()));
        }
        seen[v as usize] = true;
    }
    let mut t = UnrootedDecomposition::new();
    for (i, &v) in order.iter().enumerate() {
        t.set_leaf(i as u32, v);
    }
    if n == 2 {
        t.add_edge(0, 1);
    } else {
        let spine = |j: usize| (n + j) as u32;
        let spine_count = n - 2;
        t.add_edge(0, spine(0));
        t.add_edge(1, spine(0));
        for j in 1..spine_count {
            t.add_edge(spine(j - 1), spine(j));
            t.add_edge((j + 1) as u32, spine(j));
        }
        t.add_edge((n - 1) as u32, spine(spine_count - 1));
    }
    root_decomposition(&t)
}

/// Builds the interval graph of the given closed intervals together with the
/// caterpillar decomposition over the ascending-left-endpoint order.
pub fn interval_caterpillar_decomposition(
    intervals: &[(i64, i64)],
) -> Result<(Graph, BranchDecomposition), DecompError> {
    for &(l, r) in intervals {
        if l >= r {
            return Err(DecompError::Invalid(format!(
                "malformed interval [{l}, {r}]"
            )));
        }
    }
    let n = intervals.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let (li, ri) = intervals[i];
            let (lj, rj) = intervals[j];
            if li.max(lj) <= ri.min(rj) {
                g.add_edge(i as Vertex, j as Vertex)?;
            }
        }
    }
    let mut order: Vec<Vertex> = (0..n as Vertex).collect();
    order.sort_by_key(|&v| (intervals[v as usize].0, intervals[v as usize].1, v));
    let d = linear_order_decomposition(&g, &order)?;
    Ok((g, d))
}

pub const DEFAULT_BRUTEFORCE_CAP: usize = 8;

/// Minimum-width decomposition by exhaustive search over all unrooted binary
/// trees with `n` labeled leaves, with branch-and-bound pruning. Cut mim
/// values are monotone under adding leaves, so a partial tree whose width
/// already reaches the incumbent can be abandoned.
pub fn optimal_decomposition_bruteforce(
    g: &Graph,
    cap: usize,
) -> Result<BranchDecomposition, DecompError> {
    let n = g.vertex_count();
    if n < 2 || n > cap {
        return Err(DecompError::Invalid(format!(
            "exhaustive search needs 2 <= n <= {cap}, got n = {n}"
        )));
    }
    // precompute the mim value of every vertex cut
    let all = g.all_vertices();
    let mut cut_mim = vec![0usize; 1usize << n];
    for mask in 1usize..(1 << n) - 1 {
        let comp = ((1usize << n) - 1) ^ mask;
        if comp < mask {
            cut_mim[mask] = cut_mim[comp];
            continue;
        }
        let a = VertexSet::from_iter(n, (0..n as Vertex).filter(|&v| mask >> v & 1 == 1));
        let h = crossing_graph(g, &a, &all.difference(&a))?;
        cut_mim[mask] = max_induced_matching_size(&h);
    }
    let lower_bound = if g.edge_count() == 0 { 0 } else { 1 };

    // trees are edge lists over nodes; leaves 0..n-1 are vertices
    let mut best: Option<(usize, Vec<(u32, u32)>)> = None;
    let mut edges: Vec<(u32, u32)> = vec![(0, 1)];
    search_trees(
        n,
        2,
        &mut edges,
        n as u32,
        &cut_mim,
        lower_bound,
        &mut best,
    );
    let (_, tree_edges) = best.expect("at least one decomposition exists");
    let mut t = UnrootedDecomposition::new();
    for v in 0..n {
        t.set_leaf(v as u32, v as Vertex);
    }
    for &(a, b) in &tree_edges {
        t.add_edge(a, b);
    }
    root_decomposition(&t)
}

fn tree_width_from_edges(n: usize, edges: &[(u32, u32)], cut_mim: &[usize]) -> usize {
    // orient from leaf 0 and accumulate leaf masks bottom-up
    let mut adj: BTreeMap<u32, Vec<(u32, usize)>> = BTreeMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj.entry(a).or_default().push((b, i));
        adj.entry(b).or_default().push((a, i));
    }
    fn mask_below(
        at: u32,
        via: usize,
        adj: &BTreeMap<u32, Vec<(u32, usize)>>,
        n: usize,
        out: &mut Vec<usize>,
    ) -> usize {
        let mut mask = if (at as usize) < n { 1usize << at } else { 0 };
        for &(nbr, e) in &adj[&at] {
            if e != via {
                mask |= mask_below(nbr, e, adj, n, out);
            }
        }
        out[via] = mask;
        mask
    }
    let mut masks = vec![0usize; edges.len()];
    let start = 0u32;
    let (nbr, e) = adj[&start][0];
    let below = mask_below(nbr, e, &adj, n, &mut masks);
    masks[e] = below;
    masks
        .iter()
        .map(|&m| cut_mim[m & ((1usize << n) - 1)])
        .max()
        .unwrap_or(0)
}

fn search_trees(
    n: usize,
    next_leaf: usize,
    edges: &mut Vec<(u32, u32)>,
    next_internal: u32,
    cut_mim: &[usize],
    lower_bound: usize,
    best: &mut Option<(usize, Vec<(u32, u32)>)>,
) {
    if let Some((w, _)) = best {
        if *w == lower_bound {
            return;
        }
    }
    let width = tree_width_from_edges(n, edges, cut_mim);
    if let Some((w, _)) = best {
        if width >= *w {
            return;
        }
    }
    if next_leaf == n {
        match best {
            Some((w, _)) if width >= *w => {}
            _ => *best = Some((width, edges.clone())),
        }
        return;
    }
    let count = edges.len();
    for i in 0..count {
        let (a, b) = edges[i];
        let m = next_internal;
        edges[i] = (a, m);
        edges.push((b, m));
        edges.push((next_leaf as u32, m));
        search_trees(n, next_leaf + 1, edges, next_internal + 1, cut_mim, lower_bound, best);
        edges.pop();
        edges.pop();
        edges[i] = (a, b);
    }
}

// ---------------------------------------------------------------------------
// Text format
//
// Rooted form:    `root <id>`, `i <id> <child> <child>`, `l <id> <vertex>`
// Unrooted form:  `u <id> <neighbor>...`, `l <id> <vertex>`
// Vertex ids are 1-based; comments start with `c`.
// ---------------------------------------------------------------------------

pub fn parse_decomposition(text: &str) -> Result<BranchDecomposition, DecompError> {
    let mut root_ext: Option<u32> = None;
    let mut internal: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
    let mut leaves: BTreeMap<u32, Vertex> = BTreeMap::new();
    let mut unrooted = UnrootedDecomposition::new();
    let mut saw_unrooted = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: String| DecompError::Parse(format!("line {}: {}", lineno + 1, msg));
        let mut it = line.split_whitespace();
        let tag = it.next().unwrap();
        let mut next_u32 = |name: &str| -> Result<u32, DecompError> {
            it.next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| DecompError::Parse(format!("line {}: expected {}", lineno + 1, name)))
        };
        match tag {
            "root" => {
                if root_ext.replace(next_u32("<id>")?).is_some() {
                    return Err(err("duplicate root line".into()));
                }
            }
            "i" => {
                let id = next_u32("<id>")?;
                let a = next_u32("<child>")?;
                let b = next_u32("<child>")?;
                if internal.insert(id, (a, b)).is_some() || leaves.contains_key(&id) {
                    return Err(err(format!("node {id} defined twice")));
                }
            }
            "l" => {
                let id = next_u32("<id>")?;
                let v = next_u32("<vertex>")?;
                if v == 0 {
                    return Err(err("vertex ids are 1-based".into()));
                }
                if leaves.insert(id, v - 1).is_some() || internal.contains_key(&id) {
                    return Err(err(format!("node {id} defined twice")));
                }
            }
            "u" => {
                saw_unrooted = true;
                let id = next_u32("<id>")?;
                let mut any = false;
                for tok in it.by_ref() {
                    let nbr: u32 = tok
                        .parse()
                        .map_err(|_| err(format!("bad neighbor '{tok}'")))?;
                    unrooted.add_edge(id, nbr);
                    any = true;
                }
                if !any {
                    return Err(err("u line needs at least one neighbor".into()));
                }
            }
            _ => return Err(err(format!("unknown line tag '{tag}'"))),
        }
    }

    if saw_unrooted {
        if root_ext.is_some() || !internal.is_empty() {
            return Err(DecompError::Parse(
                "mixed rooted and unrooted decomposition lines".into(),
            ));
        }
        for (&id, &v) in &leaves {
            unrooted.set_leaf(id, v);
        }
        return root_decomposition(&unrooted);
    }

    let root_ext = root_ext.ok_or_else(|| DecompError::Parse("missing root line".into()))?;
    // map external ids to dense indices: leaves first is not required, keep file order via sorted ids
    let mut ids: Vec<u32> = internal.keys().chain(leaves.keys()).copied().collect();
    ids.sort_unstable();
    let index_of = |id: u32| -> Result<usize, DecompError> {
        ids.binary_search(&id)
            .map_err(|_| DecompError::Invalid(format!("undefined node id {id}")))
    };
    let mut kinds: Vec<(NodeKind, u32)> = Vec::with_capacity(ids.len());
    for &id in &ids {
        let kind = if let Some(&(a, b)) = internal.get(&id) {
            NodeKind::Internal(index_of(a)?, index_of(b)?)
        } else {
            NodeKind::Leaf(leaves[&id])
        };
        kinds.push((kind, id));
    }
    let root = index_of(root_ext)?;
    let n = leaves.len();
    // leaf vertex range check against the declared leaf count happens in assemble
    BranchDecomposition::assemble(kinds, root, n)
}

pub fn write_decomposition(d: &BranchDecomposition) -> String {
    let mut out = format!("root {}\n", d.ext_id(d.root()));
    let mut internal_lines: Vec<(u32, String)> = Vec::new();
    let mut leaf_lines: Vec<(u32, String)> = Vec::new();
    for t in 0..d.node_count() {
        let id = d.ext_id(t);
        match *d.kind(t) {
            NodeKind::Internal(a, b) => {
                internal_lines.push((id, format!("i {} {} {}\n", id, d.ext_id(a), d.ext_id(b))));
            }
            NodeKind::Leaf(v) => {
                leaf_lines.push((id, format!("l {} {}\n", id, v + 1)));
            }
        }
    }
    internal_lines.sort_unstable();
    leaf_lines.sort_unstable();
    for (_, line) in internal_lines.into_iter().chain(leaf_lines) {
        out.push_str(&line);
    }
    out
}
