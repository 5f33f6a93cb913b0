//! Enumeration of all minimal vertex covers of a bipartite graph.
//!
//! The enumeration walks subsets `R` of side A with `|R| <= w` and emits
//! `N(R) ∪ X_R`, where `X_R` is the set of A-vertices with a neighbor outside
//! `N(R)`. When `w` is at least the maximum induced matching size over side A,
//! this family is exactly the set of all minimal vertex covers, and its size
//! is bounded by `n^w`.

use crate::graph::BipartiteGraph;
use crate::set::{Vertex, VertexSet};
use std::collections::BTreeSet;

/// All minimal vertex covers of `h`, assuming `w >= mim(A)`.
///
/// The edgeless graph has the single minimal cover `∅`. Results are
/// deduplicated and returned in canonical (sorted bitset) order.
pub fn enumerate_minimal_vertex_covers(h: &BipartiteGraph, w: usize) -> Vec<VertexSet> {
    let n = h.universe();
    let side_a: Vec<Vertex> = h.side_a().to_vec();
    let mut out: BTreeSet<VertexSet> = BTreeSet::new();
    let mut stack: Vec<Vertex> = Vec::new();
    emit_for_subsets(h, n, &side_a, 0, w, &mut stack, &mut out);
    let covers: Vec<VertexSet> = out.into_iter().collect();
    debug_assert!(covers.iter().all(|m| is_minimal_vertex_cover(h, m)));
    covers
}

fn emit_for_subsets(
    h: &BipartiteGraph,
    n: usize,
    side_a: &[Vertex],
    from: usize,
    remaining: usize,
    stack: &mut Vec<Vertex>,
    out: &mut BTreeSet<VertexSet>,
) {
    let r = VertexSet::from_iter(n, stack.iter().copied());
    // N(R) on side B
    let n_of_r = h.neighborhood_of_set(&r);
    // X_R: side-A vertices with a neighbor in B \ N(R)
    let b_rest = h.side_b().difference(&n_of_r);
    let mut cover = n_of_r;
    for &a in side_a {
        if h.neighbors(a).intersects(&b_rest) {
            cover.insert(a);
        }
    }
    out.insert(cover);
    if remaining == 0 {
        return;
    }
    for i in from..side_a.len() {
        stack.push(side_a[i]);
        emit_for_subsets(h, n, side_a, i + 1, remaining - 1, stack, out);
        stack.pop();
    }
}

impl BipartiteGraph {
    fn neighborhood_of_set(&self, xs: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.universe());
        for v in xs.iter() {
            out.union_in_place(self.neighbors(v));
        }
        out
    }
}

/// True iff `m` covers every edge of `h` and no vertex of `m` is redundant.
pub fn is_minimal_vertex_cover(h: &BipartiteGraph, m: &VertexSet) -> bool {
    for &(u, v) in h.edges() {
        if !m.contains(u) && !m.contains(v) {
            return false;
        }
    }
    // every cover vertex must own an edge that nothing else in m covers
    'outer: for v in m.iter() {
        for w in h.neighbors(v).iter() {
            if !m.contains(w) {
                continue 'outer;
            }
        }
        return false;
    }
    true
}
