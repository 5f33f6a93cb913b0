//! Induced Disjoint Paths by bottom-up dynamic programming over a branch
//! decomposition.
//!
//! The tables extend the Longest Induced Path tables: every fragment
//! component carries a label naming the terminal pair whose path it belongs
//! to, and the pairing covers the symmetric difference of the fragment's
//! loose ends with the terminals on the processed side (a terminal sitting on
//! a fragment end is its own path end and is never paired). The cover
//! machinery is shared with the Longest Induced Path join unchanged.

use crate::decomp::{per_node_mims, BranchDecomposition, NodeKind};
use crate::dp::{
    contract_to_anchors, covers_compatible_across, parent_cover_compatible, CoverSide, CutCtx,
    MvcCache,
};
use crate::fragment::{degree_one_vertices, PathFragment};
use crate::graph::{edge, induced_path_order, is_disjoint_union_of_paths, Edge, Graph};
use crate::lip::{DpStats, SolveError};
use crate::set::{Vertex, VertexSet};
use std::collections::HashMap;
use std::time::Instant;

/// The terminal pairs `(x_i, y_i)`; all `2k` vertices distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalPairs {
    pairs: Vec<(Vertex, Vertex)>,
}

impl TerminalPairs {
    pub fn new(pairs: Vec<(Vertex, Vertex)>, n: usize) -> Result<Self, SolveError> {
        let mut all: Vec<Vertex> = Vec::new();
        for &(x, y) in &pairs {
            if x == y {
                return Err(SolveError::InvalidArgument(format!(
                    "terminal pair ({}, {}) is degenerate",
                    x + 1,
                    y + 1
                )));
            }
            if x as usize >= n || y as usize >= n {
                return Err(SolveError::InvalidArgument(format!(
                    "terminal out of range 1..{n}"
                )));
            }
            all.push(x);
            all.push(y);
        }
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(SolveError::InvalidArgument(
                "terminal vertices are not distinct".into(),
            ));
        }
        Ok(TerminalPairs { pairs })
    }

    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn terminal_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.pairs.iter().flat_map(|&(x, y)| [x, y]))
    }

    /// 1-based pair index of a terminal vertex.
    fn pair_label(&self, v: Vertex) -> Option<u16> {
        self.pairs
            .iter()
            .position(|&(x, y)| x == v || y == v)
            .map(|i| (i + 1) as u16)
    }
}

/// Terminal pairs file: one `<x> <y>` line per pair, 1-based ids, `c` comments.
pub fn parse_pairs(text: &str) -> Result<Vec<(Vertex, Vertex)>, SolveError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = || {
            SolveError::InvalidArgument(format!(
                "pairs file line {}: expected '<x> <y>'",
                lineno + 1
            ))
        };
        if toks.len() != 2 {
            return Err(err());
        }
        let x: usize = toks[0].parse().map_err(|_| err())?;
        let y: usize = toks[1].parse().map_err(|_| err())?;
        if x == 0 || y == 0 {
            return Err(err());
        }
        out.push(((x - 1) as Vertex, (y - 1) as Vertex));
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Key {
    s: PathFragment,
    m: VertexSet,
    /// label of each fragment component, components in canonical order
    lambda: Vec<u16>,
    /// pairing of (loose fragment ends on the processed side) Δ (terminals below)
    q: Vec<Edge>,
}

#[derive(Clone, Debug)]
enum Prov {
    Leaf,
    Empty,
    Join { a: u32, b: u32 },
}

struct Entry {
    key: Key,
    prov: Prov,
}

struct Table {
    entries: Vec<Entry>,
}

impl Table {
    fn freeze(mut entries: Vec<Entry>) -> Table {
        entries.sort_by(|x, y| x.key.cmp(&y.key));
        entries.dedup_by(|x, y| x.key == y.key);
        Table { entries }
    }
}

/// Full validity check of an index against the table definition; shared by
/// leaf generation and the join's derived indices.
fn validate_index(
    s: &PathFragment,
    lambda: &[u16],
    q: &[Edge],
    vt: &VertexSet,
    terms: &TerminalPairs,
    universe: usize,
) -> bool {
    let comps = s.components();
    if lambda.len() != comps.len() {
        return false;
    }
    let k = terms.len() as u16;
    if lambda.iter().any(|&l| l == 0 || l > k) {
        return false;
    }
    let s_verts = s.vertices(universe);
    // terminals touching the fragment sit on a loose end of their own path
    for (idx, &(x, y)) in terms.pairs().iter().enumerate() {
        for tv in [x, y] {
            if s_verts.contains(tv) {
                if s.degree(tv) != 1 {
                    return false;
                }
                let c = s.component_of(&comps, tv).unwrap();
                if lambda[c] as usize != idx + 1 {
                    return false;
                }
            }
        }
    }
    // the pairing partitions D Δ X_t exactly
    let d = degree_one_vertices(s, vt);
    let x_t = terms.terminal_set(universe).intersection(vt);
    let ground = d.difference(&x_t).union(&x_t.difference(&d));
    let mut seen = VertexSet::empty(universe);
    let label_of = |v: Vertex| -> Option<u16> {
        if let Some(c) = s.component_of(&comps, v) {
            Some(lambda[c])
        } else {
            terms.pair_label(v)
        }
    };
    for &(u, v) in q {
        for x in [u, v] {
            if !ground.contains(x) || seen.contains(x) {
                return false;
            }
            seen.insert(x);
        }
        // both ends of a pairing belong to the same path
        if label_of(u) != label_of(v) || label_of(u).is_none() {
            return false;
        }
    }
    if seen != ground {
        return false;
    }
    // S ⊙ Q must be a disjoint union of paths
    let mut contracted: Vec<Edge> = s.edges().to_vec();
    contracted.extend(q.iter().copied());
    let mut cverts = s_verts.clone();
    for &(u, v) in q {
        cverts.insert(u);
        cverts.insert(v);
    }
    if !contracted.is_empty() && !is_disjoint_union_of_paths(&contracted, &cverts) {
        return false;
    }
    // a component holding both terminals of a pair is that path completed;
    // no other component may carry the same label
    if !comps.is_empty() || !q.is_empty() {
        let ccomp = components_map(&contracted, &cverts);
        for (idx, &(x, y)) in terms.pairs().iter().enumerate() {
            let (Some(&cx), Some(&cy)) = (ccomp.get(&x), ccomp.get(&y)) else {
                continue;
            };
            if cx != cy {
                // each piece still has an open end towards the unprocessed
                // side; they may merge later
                continue;
            }
            for (c, comp) in comps.iter().enumerate() {
                if lambda[c] as usize == idx + 1 && ccomp[&comp[0]] != cx {
                    return false;
                }
            }
        }
    }
    true
}

fn components_map(edges: &[Edge], verts: &VertexSet) -> HashMap<Vertex, usize> {
    let vs = verts.to_vec();
    let idx = |v: Vertex| vs.binary_search(&v).unwrap();
    let mut parent: Vec<usize> = (0..vs.len()).collect();
    fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, idx(u)), find(&mut parent, idx(v)));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    vs.iter()
        .enumerate()
        .map(|(i, &v)| (v, find(&mut parent, i)))
        .collect()
}

fn leaf_table(
    g: &Graph,
    v: Vertex,
    vt: &VertexSet,
    terms: &TerminalPairs,
    mvc: &mut MvcCache,
) -> Table {
    let n = g.vertex_count();
    let empty_m = VertexSet::empty(n);
    let k = terms.len() as u16;
    let mut entries: Vec<Entry> = Vec::new();
    let nbrs = g.neighbors(v).to_vec();
    let mut push = |s: PathFragment, m: VertexSet, lambda: Vec<u16>| {
        if validate_index(&s, &lambda, &[], vt, terms, n) {
            entries.push(Entry {
                key: Key {
                    s,
                    m,
                    lambda,
                    q: Vec::new(),
                },
                prov: Prov::Leaf,
            });
        }
    };
    for &x in &nbrs {
        for label in 1..=k {
            push(
                PathFragment::from_edges([edge(v, x)]),
                empty_m.clone(),
                vec![label],
            );
        }
    }
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if g.adjacent(x, y) {
                continue; // would induce a triangle in any partial solution
            }
            for label in 1..=k {
                push(
                    PathFragment::from_edges([edge(v, x), edge(v, y)]),
                    empty_m.clone(),
                    vec![label],
                );
            }
        }
    }
    for m in mvc.covers(&VertexSet::empty(n)).iter() {
        if validate_index(&PathFragment::empty(), &[], &[], vt, terms, n) {
            entries.push(Entry {
                key: Key {
                    s: PathFragment::empty(),
                    m: m.clone(),
                    lambda: Vec::new(),
                    q: Vec::new(),
                },
                prov: Prov::Leaf,
            });
        }
    }
    Table::freeze(entries)
}

struct QEnt {
    q: Vec<Edge>,
    idx: u32,
}

struct MGrp {
    side: CoverSide,
    qs: Vec<QEnt>,
}

struct SGrp {
    s: PathFragment,
    lambda: Vec<u16>,
    verts: VertexSet,
    /// fragment edges inside the parent cut plus their labels, bucket key
    r_labeled: Vec<(Edge, u16)>,
    /// label carried by each fragment edge
    edge_labels: Vec<(Edge, u16)>,
    ms: Vec<MGrp>,
}

fn build_groups(
    g: &Graph,
    table: &Table,
    vc: &VertexSet,
    vt_parent: &VertexSet,
    vbar_parent: &VertexSet,
) -> Vec<SGrp> {
    let n = g.vertex_count();
    let mut groups: Vec<SGrp> = Vec::new();
    for (idx, entry) in table.entries.iter().enumerate() {
        let key = &entry.key;
        let need_new_s = groups
            .last()
            .map(|gr| gr.s != key.s || gr.lambda != key.lambda)
            .unwrap_or(true);
        if need_new_s {
            let comps = key.s.components();
            let edge_labels: Vec<(Edge, u16)> = key
                .s
                .edges()
                .iter()
                .map(|&e| {
                    let c = key.s.component_of(&comps, e.0).unwrap();
                    (e, key.lambda[c])
                })
                .collect();
            let r_labeled: Vec<(Edge, u16)> = edge_labels
                .iter()
                .copied()
                .filter(|&((u, v), _)| vt_parent.contains(u) && vt_parent.contains(v))
                .collect();
            groups.push(SGrp {
                s: key.s.clone(),
                lambda: key.lambda.clone(),
                verts: key.s.vertices(n),
                r_labeled,
                edge_labels,
                ms: Vec::new(),
            });
        }
        let grp = groups.last_mut().unwrap();
        let need_new_m = grp.ms.last().map(|mg| mg.side.m != key.m).unwrap_or(true);
        if need_new_m {
            grp.ms.push(MGrp {
                side: CoverSide::new(g, &key.m, vc, &grp.verts, vbar_parent),
                qs: Vec::new(),
            });
        }
        grp.ms.last_mut().unwrap().qs.push(QEnt {
            q: key.q.clone(),
            idx: idx as u32,
        });
    }
    groups
}

struct DerivedFrag {
    s: PathFragment,
    s_verts: VertexSet,
    lambda: Vec<u16>,
    anchors: VertexSet,
}

/// Combine the fragments of a compatible child pair into the parent fragment
/// and its labeling; fails when edge labels disagree inside a component.
fn derive_fragment(
    g: &Graph,
    ga: &SGrp,
    gb: &SGrp,
    ctx: &CutCtx,
    x_t: &VertexSet,
) -> Option<DerivedFrag> {
    let n = g.vertex_count();
    let vt = &ctx.vt;
    let labeled: Vec<(Edge, u16)> = ga
        .edge_labels
        .iter()
        .chain(gb.edge_labels.iter())
        .copied()
        .filter(|&((u, v), _)| !(vt.contains(u) && vt.contains(v)))
        .collect();
    let s = PathFragment::from_edges(labeled.iter().map(|&(e, _)| e));
    let s_verts = s.vertices(n);
    if s_verts.len() > ctx.cap {
        return None;
    }
    if !s.is_empty() {
        // induced at this cut
        let in_t = s_verts.intersection(vt);
        let in_bar = s_verts.intersection(&ctx.vbar);
        for u in in_t.iter() {
            for v in g.neighbors_in(u, &in_bar).iter() {
                if s.edges().binary_search(&edge(u, v)).is_err() {
                    return None;
                }
            }
        }
        if !is_disjoint_union_of_paths(s.edges(), &s_verts) {
            return None;
        }
    }
    let comps = s.components();
    let mut lambda: Vec<Option<u16>> = vec![None; comps.len()];
    for &(e, label) in &labeled {
        let c = s.component_of(&comps, e.0).unwrap();
        match lambda[c] {
            None => lambda[c] = Some(label),
            Some(l) if l == label => {}
            Some(_) => return None,
        }
    }
    let lambda: Vec<u16> = lambda.into_iter().map(|l| l.unwrap()).collect();
    let anchors = s_verts.union(x_t);
    Some(DerivedFrag {
        s,
        s_verts,
        lambda,
        anchors,
    })
}

#[allow(clippy::too_many_arguments)]
fn join(
    g: &Graph,
    ctx: &CutCtx,
    va: &VertexSet,
    vb: &VertexSet,
    ta: &Table,
    tb: &Table,
    terms: &TerminalPairs,
    mvc: &mut MvcCache,
) -> Table {
    let n = g.vertex_count();
    let vt = &ctx.vt;
    let vbar = &ctx.vbar;
    let x_t = terms.terminal_set(n).intersection(vt);
    let groups_a = build_groups(g, ta, va, vt, vbar);
    let groups_b = build_groups(g, tb, vb, vt, vbar);
    let mut bucket_b: HashMap<&[(Edge, u16)], Vec<usize>> = HashMap::new();
    for (bi, gb) in groups_b.iter().enumerate() {
        bucket_b.entry(&gb.r_labeled).or_default().push(bi);
    }

    let mut acc: HashMap<Key, Prov> = HashMap::new();

    for ga in groups_a.iter() {
        let Some(bids) = bucket_b.get(ga.r_labeled.as_slice()) else {
            continue;
        };
        for &bi in bids {
            let gb = &groups_b[bi];
            let Some(frag) = derive_fragment(g, ga, gb, ctx, &x_t) else {
                continue;
            };
            let covers = mvc.covers(&frag.s_verts);
            let r_edges: Vec<Edge> = ga.r_labeled.iter().map(|&(e, _)| e).collect();
            let mut derived_q: HashMap<(u32, u32), Option<std::rc::Rc<Vec<Edge>>>> =
                HashMap::new();

            for ma in &ga.ms {
                for mb in &gb.ms {
                    if !covers_compatible_across(g, &ma.side, &mb.side, va, vb, &ga.verts, &gb.verts)
                    {
                        continue;
                    }
                    let par_ms: Vec<&VertexSet> = covers
                        .iter()
                        .filter(|m| parent_cover_compatible(m, vt, &ma.side, &mb.side))
                        .collect();
                    if par_ms.is_empty() {
                        continue;
                    }
                    for qa in &ma.qs {
                        for qb in &mb.qs {
                            let q = derived_q
                                .entry((qa.idx, qb.idx))
                                .or_insert_with(|| {
                                    derive_pairing(&frag, &r_edges, qa, qb, vt, terms, n)
                                        .map(std::rc::Rc::new)
                                })
                                .clone();
                            let Some(q) = q else { continue };
                            for m in &par_ms {
                                let key = Key {
                                    s: frag.s.clone(),
                                    m: (*m).clone(),
                                    lambda: frag.lambda.clone(),
                                    q: q.as_ref().clone(),
                                };
                                acc.entry(key).or_insert(Prov::Join {
                                    a: qa.idx,
                                    b: qb.idx,
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    // nothing below this node touches any path: valid with every cover, but
    // only when no terminal lives below
    if x_t.is_empty() {
        for m in mvc.covers(&VertexSet::empty(n)).iter() {
            let key = Key {
                s: PathFragment::empty(),
                m: m.clone(),
                lambda: Vec::new(),
                q: Vec::new(),
            };
            acc.entry(key).or_insert(Prov::Empty);
        }
    }

    let entries: Vec<Entry> = acc
        .into_iter()
        .map(|(key, prov)| Entry { key, prov })
        .collect();
    Table::freeze(entries)
}

fn derive_pairing(
    frag: &DerivedFrag,
    r_edges: &[Edge],
    qa: &QEnt,
    qb: &QEnt,
    vt: &VertexSet,
    terms: &TerminalPairs,
    n: usize,
) -> Option<Vec<Edge>> {
    let mut all: Vec<Edge> = frag.s.edges().to_vec();
    all.extend_from_slice(r_edges);
    all.extend(qa.q.iter().copied());
    all.extend(qb.q.iter().copied());
    let q = if all.is_empty() {
        Vec::new()
    } else {
        let contracted = contract_to_anchors(&all, &frag.anchors)?;
        let mut q: Vec<Edge> = Vec::new();
        let mut si = 0usize;
        for &e in &contracted {
            if si < frag.s.edges().len() && frag.s.edges()[si] == e {
                si += 1;
            } else {
                q.push(e);
            }
        }
        if si != frag.s.edges().len() {
            return None;
        }
        q
    };
    if validate_index(&frag.s, &frag.lambda, &q, vt, terms, n) {
        Some(q)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct IdpOutcome {
    pub feasible: bool,
    /// one vertex sequence per terminal pair, ordered from `x_i` to `y_i`
    pub paths: Option<Vec<Vec<Vertex>>>,
    pub stats: DpStats,
}

pub fn idp_solve(
    g: &Graph,
    d: &BranchDecomposition,
    terms: &TerminalPairs,
    want_witness: bool,
) -> Result<IdpOutcome, SolveError> {
    let start = Instant::now();
    let n = g.vertex_count();
    TerminalPairs::new(terms.pairs().to_vec(), n)?;
    if terms.is_empty() {
        return Ok(IdpOutcome {
            feasible: true,
            paths: want_witness.then(Vec::new),
            stats: DpStats {
                width: 0,
                per_node_entries: Vec::new(),
                elapsed: start.elapsed(),
            },
        });
    }
    // 2k distinct terminals force n >= 2 here
    d.validate_for(g)?;
    let mims = per_node_mims(g, d)?;
    let width = mims.iter().copied().max().unwrap_or(0);
    let order = d.postorder();
    let mut ctxs: Vec<Option<CutCtx>> = (0..d.node_count()).map(|_| None).collect();
    for &t in &order {
        ctxs[t] = Some(CutCtx::new(g, d, t, mims[t]));
    }
    let mut tables: Vec<Option<Table>> = (0..d.node_count()).map(|_| None).collect();
    for &t in &order {
        let ctx = ctxs[t].as_ref().unwrap();
        let mut mvc = MvcCache::new(g, ctx);
        let table = match *d.kind(t) {
            NodeKind::Leaf(v) => leaf_table(g, v, &ctx.vt, terms, &mut mvc),
            NodeKind::Internal(a, b) => join(
                g,
                ctx,
                d.vertices_below(a),
                d.vertices_below(b),
                tables[a].as_ref().unwrap(),
                tables[b].as_ref().unwrap(),
                terms,
                &mut mvc,
            ),
        };
        tables[t] = Some(table);
    }

    let mut per_node_entries: Vec<(u32, usize)> = order
        .iter()
        .map(|&t| (d.ext_id(t), tables[t].as_ref().unwrap().entries.len()))
        .collect();
    per_node_entries.sort_unstable();

    // the root index: everything empty, terminals paired with their partners
    let q_root: Vec<Edge> = {
        let mut q: Vec<Edge> = terms.pairs().iter().map(|&(x, y)| edge(x, y)).collect();
        q.sort_unstable();
        q
    };
    let root_table = tables[d.root()].as_ref().unwrap();
    let root_entry = root_table.entries.iter().enumerate().find(|(_, e)| {
        e.key.s.is_empty() && e.key.m.is_empty() && e.key.lambda.is_empty() && e.key.q == q_root
    });
    let feasible = root_entry.is_some();

    let paths = if want_witness && feasible {
        let (idx, _) = root_entry.unwrap();
        let mut labeled: Vec<(Vertex, u16)> = Vec::new();
        collect_used(d, &tables, d.root(), idx, &mut labeled)?;
        let mut sets: Vec<VertexSet> = vec![VertexSet::empty(n); terms.len()];
        for (v, label) in labeled {
            sets[(label - 1) as usize].insert(v);
        }
        let mut paths = Vec::with_capacity(terms.len());
        for (i, &(x, y)) in terms.pairs().iter().enumerate() {
            let set = &sets[i];
            if !set.contains(x) || !set.contains(y) {
                return Err(SolveError::Internal(format!(
                    "witness path {} misses its terminals",
                    i + 1
                )));
            }
            let ordered = induced_path_order(g, set).ok_or_else(|| {
                SolveError::Internal(format!("witness {} is not an induced path", i + 1))
            })?;
            let mut ordered = ordered;
            if ordered.first() != Some(&x) {
                ordered.reverse();
            }
            if ordered.first() != Some(&x) || ordered.last() != Some(&y) {
                return Err(SolveError::Internal(format!(
                    "witness path {} has wrong endpoints",
                    i + 1
                )));
            }
            paths.push(ordered);
        }
        // pairwise disjoint and non-adjacent
        for i in 0..paths.len() {
            for j in (i + 1)..paths.len() {
                for &u in &paths[i] {
                    for &w in &paths[j] {
                        if u == w || g.adjacent(u, w) {
                            return Err(SolveError::Internal(format!(
                                "witness paths {} and {} touch",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        Some(paths)
    } else if want_witness {
        None
    } else {
        None
    };

    Ok(IdpOutcome {
        feasible,
        paths,
        stats: DpStats {
            width,
            per_node_entries,
            elapsed: start.elapsed(),
        },
    })
}

fn collect_used(
    d: &BranchDecomposition,
    tables: &[Option<Table>],
    t: usize,
    entry_idx: usize,
    out: &mut Vec<(Vertex, u16)>,
) -> Result<(), SolveError> {
    let table = tables[t].as_ref().unwrap();
    let entry = &table.entries[entry_idx];
    match (&entry.prov, d.kind(t)) {
        (Prov::Leaf, NodeKind::Leaf(v)) => {
            if !entry.key.s.is_empty() {
                out.push((*v, entry.key.lambda[0]));
            }
            Ok(())
        }
        (Prov::Empty, _) => Ok(()),
        (Prov::Join { a, b }, NodeKind::Internal(ca, cb)) => {
            collect_used(d, tables, *ca, *a as usize, out)?;
            collect_used(d, tables, *cb, *b as usize, out)?;
            Ok(())
        }
        _ => Err(SolveError::Internal("provenance shape mismatch".into())),
    }
}
