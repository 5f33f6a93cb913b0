//! Shared machinery for the table-based solvers: per-cut contexts, the
//! anchor-preserving chain contraction used by the joins, cover-compatibility
//! filters, and small bitsets over solution sizes.

use crate::decomp::BranchDecomposition;
use crate::graph::{edge, Edge, Graph};
use crate::mvc::enumerate_minimal_vertex_covers;
use crate::set::{Vertex, VertexSet};
use std::collections::{BTreeMap, HashMap};

/// Bitset over candidate solution sizes `0..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SizeBits {
    words: Vec<u64>,
}

impl SizeBits {
    pub fn new(nbits: usize) -> Self {
        SizeBits {
            words: vec![0; (nbits + 63) / 64],
        }
    }

    pub fn singleton(nbits: usize, i: usize) -> Self {
        let mut s = Self::new(nbits);
        s.set(i);
        s
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        match self.words.get(i / 64) {
            Some(w) => w >> (i % 64) & 1 == 1,
            None => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    pub fn max_set(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(k * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Everything the joins need to know about one node's cut.
pub struct CutCtx {
    /// vertices below the node
    pub vt: VertexSet,
    /// the other side of the cut
    pub vbar: VertexSet,
    /// exact mim value of this cut (0 at the root)
    pub mim: usize,
    /// fragment vertex-count cap for this cut
    pub cap: usize,
}

impl CutCtx {
    pub fn new(g: &Graph, d: &BranchDecomposition, t: usize, mim: usize) -> Self {
        let vt = d.vertices_below(t).clone();
        let vbar = vt.complement();
        let _ = g;
        CutCtx {
            vt,
            vbar,
            mim,
            cap: crate::fragment::fragment_size_cap(mim),
        }
    }
}

/// Cache of minimal vertex covers of `H_t - V(S)`, keyed by `V(S)`.
pub struct MvcCache<'g> {
    g: &'g Graph,
    vt: VertexSet,
    vbar: VertexSet,
    budget: usize,
    cache: HashMap<VertexSet, std::rc::Rc<Vec<VertexSet>>>,
}

impl<'g> MvcCache<'g> {
    pub fn new(g: &'g Graph, ctx: &CutCtx) -> Self {
        MvcCache {
            g,
            vt: ctx.vt.clone(),
            vbar: ctx.vbar.clone(),
            budget: ctx.mim,
            cache: HashMap::new(),
        }
    }

    pub fn covers(&mut self, s_verts: &VertexSet) -> std::rc::Rc<Vec<VertexSet>> {
        if let Some(hit) = self.cache.get(s_verts) {
            return hit.clone();
        }
        let a = self.vt.difference(s_verts);
        let b = self.vbar.difference(s_verts);
        let h = crate::graph::crossing_graph(self.g, &a, &b).expect("disjoint cut sides");
        let covers = std::rc::Rc::new(enumerate_minimal_vertex_covers(&h, self.budget));
        self.cache.insert(s_verts.clone(), covers.clone());
        covers
    }
}

/// Contract every chain of non-anchor vertices in the multigraph given by
/// `edges` down to a single edge between its anchor endpoints.
///
/// Chains that dead-end at a degree-one non-anchor vertex vanish (they stand
/// for partial paths continuing into unprocessed territory). Returns `None`
/// when the structure cannot belong to a disjoint union of paths: a non-anchor
/// vertex of degree three or more, a chain closing back on its own anchor, two
/// chains joining the same anchor pair, or a component containing no anchor.
pub fn contract_to_anchors(edges: &[Edge], anchors: &VertexSet) -> Option<Vec<Edge>> {
    let mut adj: BTreeMap<Vertex, Vec<(Vertex, usize)>> = BTreeMap::new();
    for (idx, &(u, v)) in edges.iter().enumerate() {
        adj.entry(u).or_default().push((v, idx));
        adj.entry(v).or_default().push((u, idx));
    }
    for (&v, lst) in &adj {
        if !anchors.contains(v) && lst.len() > 2 {
            return None;
        }
    }
    let mut used = vec![false; edges.len()];
    let mut out: Vec<Edge> = Vec::new();
    for (&a, lst) in adj.iter() {
        if !anchors.contains(a) {
            continue;
        }
        for &(first, eid) in lst {
            if used[eid] {
                continue;
            }
            used[eid] = true;
            let mut prev = a;
            let mut cur = first;
            loop {
                if anchors.contains(cur) {
                    if cur == a {
                        return None; // chain closed into its own anchor
                    }
                    out.push(edge(a, cur));
                    break;
                }
                let next = adj[&cur]
                    .iter()
                    .copied()
                    .find(|&(_, e)| !used[e]);
                match next {
                    Some((w, e)) => {
                        used[e] = true;
                        prev = cur;
                        cur = w;
                    }
                    None => break, // dangling chain: continues outside, contributes nothing
                }
            }
            let _ = prev;
        }
    }
    if used.iter().any(|&u| !u) {
        return None; // a component without anchors cannot join anything
    }
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return None; // two distinct connections between the same anchors form a cycle
    }
    Some(out)
}

/// Inputs to the cover-compatibility filter that depend only on one child's
/// fragment/cover choice.
pub struct CoverSide {
    /// the child's cover
    pub m: VertexSet,
    /// `M ∩ V_child` (the in-part)
    pub m_in: VertexSet,
    /// neighbors, on the far side of the parent cut, of the child-side
    /// vertices that are free for intermediate use (`V_c \ (V(S_c) ∪ M_in)`)
    pub nfree_out: VertexSet,
}

impl CoverSide {
    pub fn new(g: &Graph, m: &VertexSet, vc: &VertexSet, s_verts: &VertexSet, vbar_t: &VertexSet) -> Self {
        let m_in = m.intersection(vc);
        let free = vc.difference(s_verts).difference(&m_in);
        let nfree_out = g.neighborhood_of_set(&free, vbar_t);
        CoverSide {
            m: m.clone(),
            m_in,
            nfree_out,
        }
    }
}

/// The parent-independent part of the cover checks: no unwanted edge between
/// intermediate vertices across the child-child cut, and none between an
/// intermediate vertex and the other child's fragment.
pub fn covers_compatible_across(
    g: &Graph,
    side_a: &CoverSide,
    side_b: &CoverSide,
    va: &VertexSet,
    vb: &VertexSet,
    sa_verts: &VertexSet,
    sb_verts: &VertexSet,
) -> bool {
    // intermediate-intermediate across the a-b cut
    if !side_a.m.intersection(vb).is_subset(&side_b.m_in) {
        return false;
    }
    if !side_b.m.intersection(va).is_subset(&side_a.m_in) {
        return false;
    }
    // intermediate against the sibling's fragment vertices
    let sb_new = sb_verts.difference(sa_verts);
    if !g.neighborhood_of_set(&sb_new, va).is_subset(&side_a.m_in) {
        return false;
    }
    let sa_new = sa_verts.difference(sb_verts);
    if !g.neighborhood_of_set(&sa_new, vb).is_subset(&side_b.m_in) {
        return false;
    }
    true
}

/// The parent-dependent cover checks: the parent's in-part is inherited by
/// the children, and every parent out-vertex that still sees a free child
/// vertex is carried in that child's out-part.
pub fn parent_cover_compatible(
    m: &VertexSet,
    vt: &VertexSet,
    side_a: &CoverSide,
    side_b: &CoverSide,
) -> bool {
    let m_in_t = m.intersection(vt);
    if !m_in_t.is_subset(&side_a.m_in.union(&side_b.m_in)) {
        return false;
    }
    let m_out_t = m.difference(vt);
    if !m_out_t.intersection(&side_a.nfree_out).is_subset(&side_a.m) {
        return false;
    }
    if !m_out_t.intersection(&side_b.nfree_out).is_subset(&side_b.m) {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anchors(n: usize, xs: &[Vertex]) -> VertexSet {
        VertexSet::from_iter(n, xs.iter().copied())
    }

    #[test]
    fn contraction_basics() {
        // chain 0 - 10 - 11 - 1 between anchors 0, 1 becomes edge (0, 1)
        let a = anchors(12, &[0, 1]);
        let edges = vec![(0, 10), (10, 11), (11, 1)];
        assert_eq!(contract_to_anchors(&edges, &a), Some(vec![(0, 1)]));

        // direct anchor-anchor edge survives
        assert_eq!(contract_to_anchors(&[(0, 1)], &a), Some(vec![(0, 1)]));

        // dangling chain from an anchor vanishes
        assert_eq!(contract_to_anchors(&[(0, 10), (10, 11)], &a), Some(vec![]));

        // chain returning to its own anchor is a cycle
        assert_eq!(contract_to_anchors(&[(0, 10), (10, 0)], &a), None);

        // double connection between the same anchors is a cycle
        assert_eq!(
            contract_to_anchors(&[(0, 1), (0, 10), (10, 1)], &a),
            None
        );

        // component with no anchor at all
        assert_eq!(contract_to_anchors(&[(10, 11)], &a), None);

        // degree-3 non-anchor vertex
        assert_eq!(
            contract_to_anchors(&[(0, 10), (1, 10), (10, 11)], &a),
            None
        );
    }

    #[test]
    fn contraction_keeps_parallel_chains_to_distinct_anchors() {
        let a = anchors(12, &[0, 1, 2]);
        let edges = vec![(0, 10), (10, 1), (0, 11), (11, 2)];
        assert_eq!(
            contract_to_anchors(&edges, &a),
            Some(vec![(0, 1), (0, 2)])
        );
    }

    #[test]
    fn size_bits() {
        let mut b = SizeBits::new(70);
        b.set(0);
        b.set(65);
        b.set(3);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 3, 65]);
        assert_eq!(b.max_set(), Some(65));
        assert_eq!(b.count(), 3);
        assert!(b.contains(3) && !b.contains(4));
    }
}
