//! Boundary fragments of a cut: induced disjoint unions of nontrivial paths
//! inside a crossing graph, together with pairings of their loose ends and
//! labelings of their components.

use crate::graph::{edge, is_disjoint_union_of_paths, BipartiteGraph, Edge};
use crate::set::{Vertex, VertexSet};

/// An induced disjoint union of nontrivial paths inside a crossing graph.
/// Canonically represented by its sorted edge list; the vertex set is derived
/// (fragments have no isolated vertices).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PathFragment {
    edges: Vec<Edge>,
}

impl PathFragment {
    pub fn empty() -> Self {
        PathFragment { edges: Vec::new() }
    }

    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        PathFragment { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self, universe: usize) -> VertexSet {
        let mut vs = VertexSet::empty(universe);
        for &(u, v) in &self.edges {
            vs.insert(u);
            vs.insert(v);
        }
        vs
    }

    pub fn vertex_count(&self) -> usize {
        let mut vs: Vec<Vertex> = Vec::with_capacity(self.edges.len() * 2);
        for &(u, v) in &self.edges {
            vs.push(u);
            vs.push(v);
        }
        vs.sort_unstable();
        vs.dedup();
        vs.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut verts: Vec<Vertex> = Vec::new();
        for &(u, v) in &self.edges {
            verts.push(u);
            verts.push(v);
        }
        verts.sort_unstable();
        verts.dedup();
        let idx = |v: Vertex| verts.binary_search(&v).unwrap();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, idx(u)), find(&mut parent, idx(v)));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
        for (i, &v) in verts.iter().enumerate() {
            groups.entry(find(&mut parent, i)).or_default().push(v);
        }
        let mut comps: Vec<Vec<Vertex>> = groups.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// Component index of `v`, with components ordered as in `components()`.
    pub fn component_of(&self, comps: &[Vec<Vertex>], v: Vertex) -> Option<usize> {
        comps.iter().position(|c| c.binary_search(&v).is_ok())
    }

    /// True if this fragment is a valid index structure for `h`: an induced
    /// subgraph of `h` that is a disjoint union of nontrivial paths.
    pub fn is_valid_in(&self, h: &BipartiteGraph) -> bool {
        crate::graph::is_induced_disjoint_path_union(h, &self.edges)
    }
}

/// A partition of a ground set into unordered pairs plus unpaired leftovers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pairing {
    pairs: Vec<Edge>,
    unpaired: Vec<Vertex>,
}

impl Pairing {
    pub fn new(mut pairs: Vec<Edge>, mut unpaired: Vec<Vertex>) -> Self {
        for p in pairs.iter_mut() {
            *p = edge(p.0, p.1);
        }
        pairs.sort_unstable();
        unpaired.sort_unstable();
        Pairing { pairs, unpaired }
    }

    pub fn empty() -> Self {
        Pairing {
            pairs: Vec::new(),
            unpaired: Vec::new(),
        }
    }

    pub fn pairs(&self) -> &[Edge] {
        &self.pairs
    }

    pub fn unpaired(&self) -> &[Vertex] {
        &self.unpaired
    }
}

/// Map from the components of a fragment (in canonical order) to path indices
/// `1..=k`.
pub type ComponentLabeling = Vec<usize>;

/// The degree-one vertices of `s` that lie in `side` (the paper's D when
/// `side` is the processed part of the cut).
pub fn degree_one_vertices(s: &PathFragment, side: &VertexSet) -> VertexSet {
    let mut out = VertexSet::empty(side.universe());
    for &(u, v) in s.edges() {
        for x in [u, v] {
            if side.contains(x) && s.degree(x) == 1 {
                out.insert(x);
            }
        }
    }
    out
}

/// The graph `S ⊙ Q`: the fragment with one extra edge per pair of `q`.
/// Returns the combined edge list; callers check the path-union shape.
pub fn contract_fragment(s: &PathFragment, q: &Pairing) -> Vec<Edge> {
    let mut edges = s.edges().to_vec();
    edges.extend(q.pairs().iter().copied());
    edges.sort_unstable();
    edges
}

/// All fragments of `h` on at most `4w + 3` vertices, including the empty one.
pub fn enumerate_fragments(h: &BipartiteGraph, w: usize) -> Vec<PathFragment> {
    let cap = fragment_size_cap(w);
    let paths = enumerate_induced_paths(h, cap);
    let mut out = vec![PathFragment::empty()];
    let mut chosen: Vec<usize> = Vec::new();
    combine_paths(h, &paths, 0, cap, &mut chosen, &mut out);
    out.sort_unstable();
    out
}

/// Size cap for fragments at a cut of mim value `w`. A disjoint union of
/// nontrivial paths on `4(w+1)` vertices contains an induced matching of size
/// `w + 1`, so fragments inside a width-`w` crossing graph have at most
/// `4w + 3` vertices.
pub fn fragment_size_cap(w: usize) -> usize {
    4 * w + 3
}

/// Induced paths of `h` with between 2 and `cap` vertices, each reported once
/// (the endpoint with the smaller id comes first). Paths are edge lists plus
/// their vertex sequence.
fn enumerate_induced_paths(h: &BipartiteGraph, cap: usize) -> Vec<(Vec<Vertex>, Vec<Edge>)> {
    let mut out = Vec::new();
    if cap < 2 {
        return out;
    }
    let verts = h.vertices().to_vec();
    let mut seq: Vec<Vertex> = Vec::new();
    for &v in &verts {
        seq.push(v);
        extend_path(h, cap, &mut seq, &mut out);
        seq.pop();
    }
    out
}

fn extend_path(
    h: &BipartiteGraph,
    cap: usize,
    seq: &mut Vec<Vertex>,
    out: &mut Vec<(Vec<Vertex>, Vec<Edge>)>,
) {
    let last = *seq.last().unwrap();
    let candidates: Vec<Vertex> = h.neighbors(last).to_vec();
    for next in candidates {
        if seq.contains(&next) {
            continue;
        }
        // induced: next may touch only the current endpoint
        if seq[..seq.len() - 1].iter().any(|&p| h.adjacent(p, next)) {
            continue;
        }
        seq.push(next);
        if seq[0] < *seq.last().unwrap() {
            let edges: Vec<Edge> = seq.windows(2).map(|w| edge(w[0], w[1])).collect();
            out.push((seq.clone(), edges));
        }
        if seq.len() < cap {
            extend_path(h, cap, seq, out);
        }
        seq.pop();
    }
}

fn combine_paths(
    h: &BipartiteGraph,
    paths: &[(Vec<Vertex>, Vec<Edge>)],
    from: usize,
    budget: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<PathFragment>,
) {
    for i in from..paths.len() {
        let (seq, _) = &paths[i];
        if seq.len() > budget {
            continue;
        }
        // canonical order: strictly increasing minimum vertex per component
        if let Some(&prev) = chosen.last() {
            let prev_min = paths[prev].0.iter().min().unwrap();
            let cur_min = seq.iter().min().unwrap();
            if cur_min <= prev_min {
                continue;
            }
        }
        // disjoint from and non-adjacent to every chosen component
        let compatible = chosen.iter().all(|&j| {
            paths[j].0.iter().all(|&u| {
                seq.iter().all(|&v| u != v && !h.adjacent(u, v))
            })
        });
        if !compatible {
            continue;
        }
        chosen.push(i);
        let mut all_edges: Vec<Edge> = Vec::new();
        for &j in chosen.iter() {
            all_edges.extend(paths[j].1.iter().copied());
        }
        out.push(PathFragment::from_edges(all_edges));
        combine_paths(h, paths, i + 1, budget - seq.len(), chosen, out);
        chosen.pop();
    }
}

/// All pairings of `ground` leaving exactly `unpaired_budget` vertices
/// unpaired. Empty when the parities do not work out.
pub fn enumerate_pairings(ground: &VertexSet, unpaired_budget: usize) -> Vec<Pairing> {
    let items = ground.to_vec();
    if items.len() < unpaired_budget || (items.len() - unpaired_budget) % 2 != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pairs: Vec<Edge> = Vec::new();
    let mut unpaired: Vec<Vertex> = Vec::new();
    fn rec(
        rest: &[Vertex],
        budget: usize,
        pairs: &mut Vec<Edge>,
        unpaired: &mut Vec<Vertex>,
        out: &mut Vec<Pairing>,
    ) {
        let Some((&first, tail)) = rest.split_first() else {
            if budget == 0 {
                out.push(Pairing::new(pairs.clone(), unpaired.clone()));
            }
            return;
        };
        if budget > 0 {
            unpaired.push(first);
            rec(tail, budget - 1, pairs, unpaired, out);
            unpaired.pop();
        }
        for (i, &other) in tail.iter().enumerate() {
            let mut next: Vec<Vertex> = tail[..i].to_vec();
            next.extend_from_slice(&tail[i + 1..]);
            pairs.push(edge(first, other));
            rec(&next, budget, pairs, unpaired, out);
            pairs.pop();
        }
    }
    rec(&items, unpaired_budget, &mut pairs, &mut unpaired, &mut out);
    out.sort_unstable();
    out
}

/// All maps from the components of `s` to `1..=k`.
pub fn enumerate_labelings(s: &PathFragment, k: usize) -> Vec<ComponentLabeling> {
    assert!(k >= 1);
    let c = s.components().len();
    let mut out = Vec::new();
    let mut cur = vec![1usize; c];
    loop {
        out.push(cur.clone());
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == c {
                return out;
            }
            if cur[pos] < k {
                cur[pos] += 1;
                break;
            }
            cur[pos] = 1;
            pos += 1;
        }
    }
}

/// Check used by the joins: edge list forms a single path (connected, acyclic,
/// at least one edge).
pub fn is_single_path(edges: &[Edge], universe: usize) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut verts = VertexSet::empty(universe);
    for &(u, v) in edges {
        verts.insert(u);
        verts.insert(v);
    }
    if !is_disjoint_union_of_paths(edges, &verts) {
        return false;
    }
    // single component: a path on k vertices has k - 1 edges
    verts.len() == edges.len() + 1
}
