//! H-Induced Topological Minor by branching over placements of the pattern's
//! branch vertices and their first path vertices, followed by one Induced
//! Disjoint Paths run per surviving placement.

use crate::decomp::BranchDecomposition;
use crate::graph::{Graph};
use crate::idp::{idp_solve, TerminalPairs};
use crate::lip::SolveError;
use crate::oracle::is_subdivision_of;
use crate::set::{Vertex, VertexSet};

/// A placement of the pattern in the host graph: an injective map of the
/// pattern's vertices plus, for each ordered pattern edge `(x, y)`, the host
/// vertex beginning the path at `v_x`'s side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchAssignment {
    /// host vertex per pattern vertex
    pub branch: Vec<Vertex>,
    /// aligned with `directed_pattern_edges`: the chosen neighbor `v_{x,y}`
    pub neighbors: Vec<Vertex>,
}

/// The ordered pairs `(x, y)` and `(y, x)` for every pattern edge `{x, y}`.
pub fn directed_pattern_edges(h: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(h.edge_count() * 2);
    for &(x, y) in h.edges() {
        out.push((x as usize, y as usize));
        out.push((y as usize, x as usize));
    }
    out
}

/// Every assignment with an injective, degree-feasible branch map and
/// neighbor choices distinct within each `Y_x`. Materializes the full list;
/// meant for small instances (the solver streams and prunes instead).
pub fn hitm_enumerate_assignments(g: &Graph, h: &Graph) -> Vec<BranchAssignment> {
    let mut out = Vec::new();
    let mut branch: Vec<Vertex> = Vec::new();
    enumerate_branch(g, h, &mut branch, &mut |branch| {
        let dirs = directed_pattern_edges(h);
        let mut neighbors: Vec<Vertex> = Vec::new();
        enumerate_neighbors(g, branch, &dirs, 0, &mut neighbors, &mut |nbrs| {
            out.push(BranchAssignment {
                branch: branch.to_vec(),
                neighbors: nbrs.to_vec(),
            });
            false
        });
        false
    });
    out
}

fn enumerate_branch(
    g: &Graph,
    h: &Graph,
    branch: &mut Vec<Vertex>,
    found: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    if branch.len() == h.vertex_count() {
        return found(branch);
    }
    let x = branch.len();
    for v in 0..g.vertex_count() as Vertex {
        if branch.contains(&v) || g.degree(v) < h.degree(x as Vertex) {
            continue;
        }
        branch.push(v);
        if enumerate_branch(g, h, branch, found) {
            return true;
        }
        branch.pop();
    }
    false
}

fn enumerate_neighbors(
    g: &Graph,
    branch: &[Vertex],
    dirs: &[(usize, usize)],
    at: usize,
    chosen: &mut Vec<Vertex>,
    found: &mut dyn FnMut(&[Vertex]) -> bool,
) -> bool {
    if at == dirs.len() {
        return found(chosen);
    }
    let (x, _) = dirs[at];
    for w in g.neighbors(branch[x]).to_vec() {
        // distinct within Y_x
        let clash = dirs[..at]
            .iter()
            .zip(chosen.iter())
            .any(|(&(x2, _), &w2)| x2 == x && w2 == w);
        if clash {
            continue;
        }
        chosen.push(w);
        if enumerate_neighbors(g, branch, dirs, at + 1, chosen, found) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Result of preprocessing one placement: the pattern edges still needing a
/// path, their terminal pairs, and extra host vertices to delete.
#[derive(Clone, Debug)]
pub struct Preprocessed {
    /// terminal pairs for the surviving pattern edges
    pub terminal_pairs: Vec<(Vertex, Vertex)>,
    /// midpoint vertices realizing length-two paths (kept in the witness)
    pub shared_midpoints: Vec<Vertex>,
    /// vertices removed because they neighbor a shared midpoint
    pub removed: VertexSet,
    /// all chosen first-path vertices (the set Y)
    pub y_set: VertexSet,
}

/// Apply the validity checks and reductions for one placement. The neighbor
/// choices of pattern edges realized directly by a host edge are ignored;
/// such edges need no path. Returns `None` when the placement is discarded.
pub fn hitm_preprocess(g: &Graph, h: &Graph, asg: &BranchAssignment) -> Option<Preprocessed> {
    let n = g.vertex_count();
    let hv = h.vertex_count();
    let x_set = VertexSet::from_iter(n, asg.branch.iter().copied());
    // non-edges of the pattern must map to non-edges
    for x in 0..hv {
        for y in (x + 1)..hv {
            if !h.adjacent(x as Vertex, y as Vertex)
                && g.adjacent(asg.branch[x], asg.branch[y])
            {
                return None;
            }
        }
    }
    let dirs = directed_pattern_edges(h);
    // pattern edges realized directly by a host edge are dropped
    let mut surviving: Vec<(usize, Vertex, Vertex)> = Vec::new(); // (edge idx, v_{x,y}, v_{y,x})
    for (e, &(x, y)) in h.edges().iter().enumerate() {
        if g.adjacent(asg.branch[x as usize], asg.branch[y as usize]) {
            continue;
        }
        let fwd = dirs.iter().position(|&d| d == (x as usize, y as usize)).unwrap();
        let bwd = dirs.iter().position(|&d| d == (y as usize, x as usize)).unwrap();
        surviving.push((e, asg.neighbors[fwd], asg.neighbors[bwd]));
    }
    // first-path vertices may not be branch vertices
    for &(_, u, w) in &surviving {
        if x_set.contains(u) || x_set.contains(w) {
            return None;
        }
    }
    // a vertex chosen more than once must be the shared midpoint of a single
    // length-two path
    let mut uses: std::collections::BTreeMap<Vertex, Vec<usize>> = Default::default();
    for (i, &(_, u, w)) in surviving.iter().enumerate() {
        uses.entry(u).or_default().push(i);
        uses.entry(w).or_default().push(i);
    }
    let mut shared: Vec<(usize, Vertex)> = Vec::new();
    for (&v, ids) in &uses {
        match ids.len() {
            1 => {}
            2 if ids[0] == ids[1] => shared.push((ids[0], v)),
            _ => return None,
        }
    }
    let y_set = VertexSet::from_iter(n, uses.keys().copied());
    // the placement subgraph may contain no edges beyond the prescribed ones
    let mut allowed: Vec<(Vertex, Vertex)> = Vec::new();
    for (e, &(x, y)) in h.edges().iter().enumerate() {
        let (vx, vy) = (asg.branch[x as usize], asg.branch[y as usize]);
        if surviving.iter().all(|&(se, _, _)| se != e) {
            allowed.push(crate::graph::edge(vx, vy));
        }
    }
    for &(e, u, w) in &surviving {
        let (x, y) = h.edges()[e];
        allowed.push(crate::graph::edge(asg.branch[x as usize], u));
        allowed.push(crate::graph::edge(asg.branch[y as usize], w));
    }
    allowed.sort_unstable();
    allowed.dedup();
    let xy = x_set.union(&y_set);
    for u in xy.iter() {
        for v in g.neighbors_in(u, &xy).iter() {
            if v > u && allowed.binary_search(&(u, v)).is_err() {
                return None;
            }
        }
    }
    // shared midpoints settle their edge; their other neighbors are unusable
    let mut removed = VertexSet::empty(n);
    let mut shared_midpoints = Vec::new();
    for &(i, v) in &shared {
        let _ = i;
        shared_midpoints.push(v);
        removed.union_in_place(&g.neighbors(v).difference(&x_set));
        removed.remove(v);
    }
    let terminal_pairs: Vec<(Vertex, Vertex)> = surviving
        .iter()
        .filter(|&&(_, u, w)| u != w)
        .map(|&(_, u, w)| (u, w))
        .collect();
    // terminals never neighbor a shared midpoint (that edge would have been
    // caught above), so the removals cannot touch them
    debug_assert!(terminal_pairs
        .iter()
        .all(|&(u, w)| !removed.contains(u) && !removed.contains(w)));
    Some(Preprocessed {
        terminal_pairs,
        shared_midpoints,
        removed,
        y_set,
    })
}

#[derive(Clone, Debug)]
pub struct HitmWitness {
    /// host vertices inducing a subdivision of the pattern
    pub vertices: Vec<Vertex>,
    /// host vertex per pattern vertex
    pub branch: Vec<Vertex>,
}

#[derive(Clone, Debug)]
pub struct HitmOutcome {
    pub found: bool,
    pub witness: Option<HitmWitness>,
    /// number of placements that survived preprocessing
    pub placements_tried: usize,
}

pub fn hitm_solve(
    g: &Graph,
    d: &BranchDecomposition,
    h: &Graph,
) -> Result<HitmOutcome, SolveError> {
    let n = g.vertex_count();
    if n >= 2 {
        d.validate_for(g)?;
    }
    let mut tried = 0usize;
    let mut result: Option<HitmWitness> = None;
    let mut branch: Vec<Vertex> = Vec::new();
    let mut err: Option<SolveError> = None;
    enumerate_branch(g, h, &mut branch, &mut |branch| {
        // prune placements with a forbidden direct adjacency before choosing
        // any neighbor vertices
        for x in 0..h.vertex_count() {
            for y in (x + 1)..h.vertex_count() {
                if !h.adjacent(x as Vertex, y as Vertex)
                    && g.adjacent(branch[x], branch[y])
                {
                    return false;
                }
            }
        }
        let dirs = directed_pattern_edges(h);
        let mut neighbors: Vec<Vertex> = Vec::new();
        enumerate_neighbors(g, branch, &dirs, 0, &mut neighbors, &mut |nbrs| {
            let asg = BranchAssignment {
                branch: branch.to_vec(),
                neighbors: nbrs.to_vec(),
            };
            match try_assignment(g, d, h, &asg) {
                Ok(Some(w)) => {
                    result = Some(w);
                    true
                }
                Ok(None) => {
                    tried += 1;
                    false
                }
                Err(e) => {
                    err = Some(e);
                    true
                }
            }
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(HitmOutcome {
        found: result.is_some(),
        witness: result,
        placements_tried: tried,
    })
}

fn try_assignment(
    g: &Graph,
    d: &BranchDecomposition,
    h: &Graph,
    asg: &BranchAssignment,
) -> Result<Option<HitmWitness>, SolveError> {
    let n = g.vertex_count();
    let Some(pre) = hitm_preprocess(g, h, asg) else {
        return Ok(None);
    };
    let x_set = VertexSet::from_iter(n, asg.branch.iter().copied());
    let mut witness_verts: Vec<Vertex> = asg.branch.clone();
    witness_verts.extend(pre.shared_midpoints.iter().copied());

    if pre.terminal_pairs.is_empty() {
        return finish_witness(g, h, asg, witness_verts);
    }

    // the paths may touch neither the branch vertices nor any other vertex
    // adjacent to them, except the chosen first-path vertices
    let mut delete = x_set.clone();
    let nx = g.neighborhood_of_set(&x_set, &g.all_vertices());
    delete.union_in_place(&nx.difference(&x_set.union(&pre.y_set)));
    delete.union_in_place(&pre.removed);
    let keep = delete.complement();
    let mut new_of: Vec<Option<Vertex>> = vec![None; n];
    for (new, old) in keep.iter().enumerate() {
        new_of[old as usize] = Some(new as Vertex);
    }
    let (rg, old_ids) = g.induced_subgraph(&keep);
    let Some(rd) = d.restrict(&keep, &new_of) else {
        return Ok(None);
    };
    let pairs: Vec<(Vertex, Vertex)> = pre
        .terminal_pairs
        .iter()
        .map(|&(u, w)| (new_of[u as usize].unwrap(), new_of[w as usize].unwrap()))
        .collect();
    let terms = TerminalPairs::new(pairs, rg.vertex_count())?;
    let out = idp_solve(&rg, &rd, &terms, true)?;
    if !out.feasible {
        return Ok(None);
    }
    for path in out.paths.expect("witness requested") {
        witness_verts.extend(path.into_iter().map(|v| old_ids[v as usize]));
    }
    finish_witness(g, h, asg, witness_verts)
}

fn finish_witness(
    g: &Graph,
    h: &Graph,
    asg: &BranchAssignment,
    mut vertices: Vec<Vertex>,
) -> Result<Option<HitmWitness>, SolveError> {
    vertices.sort_unstable();
    vertices.dedup();
    let keep = VertexSet::from_iter(g.vertex_count(), vertices.iter().copied());
    let (w, _) = g.induced_subgraph(&keep);
    if !is_subdivision_of(&w, h) {
        return Err(SolveError::Internal(
            "accepted placement does not induce a subdivision of the pattern".into(),
        ));
    }
    Ok(Some(HitmWitness {
        vertices,
        branch: asg.branch.clone(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::linear_order_decomposition;
    use crate::families;
    use crate::oracle::{hitm_bruteforce, OracleBudget};

    fn ident(g: &Graph) -> BranchDecomposition {
        let order: Vec<Vertex> = (0..g.vertex_count() as Vertex).collect();
        linear_order_decomposition(g, &order).unwrap()
    }

    #[test]
    fn assignment_examples() {
        let k2 = families::path_graph(2);
        let asgs = hitm_enumerate_assignments(&k2, &k2);
        assert_eq!(asgs.len(), 2);
        for a in &asgs {
            // the only available neighbors are the branch vertices themselves
            assert_eq!(a.neighbors.len(), 2);
        }

        let k3 = families::complete_graph(3);
        let p3 = families::path_graph(3);
        assert!(hitm_enumerate_assignments(&p3, &k3).is_empty());

        let k1 = Graph::new(1);
        let g = families::path_graph(4);
        assert_eq!(hitm_enumerate_assignments(&g, &k1).len(), 4);
    }

    #[test]
    fn preprocess_examples() {
        // pattern edge realized directly: no terminal pairs remain
        let k2 = families::path_graph(2);
        let asg = BranchAssignment {
            branch: vec![0, 1],
            neighbors: vec![1, 0],
        };
        let pre = hitm_preprocess(&k2, &k2, &asg).unwrap();
        assert!(pre.terminal_pairs.is_empty());

        // shared midpoint: P3 realizing K2 via 0-1-2
        let p3 = families::path_graph(3);
        let asg = BranchAssignment {
            branch: vec![0, 2],
            neighbors: vec![1, 1],
        };
        let pre = hitm_preprocess(&p3, &k2, &asg).unwrap();
        assert!(pre.terminal_pairs.is_empty());
        assert_eq!(pre.shared_midpoints, vec![1]);

        // stray edge inside the placement: branch vertices adjacent although
        // the pattern has no edge
        let k3 = families::complete_graph(3);
        let two_v = Graph::new(2); // pattern: two isolated vertices
        let asg = BranchAssignment {
            branch: vec![0, 1],
            neighbors: vec![],
        };
        assert!(hitm_preprocess(&k3, &two_v, &asg).is_none());

        // stray edge between a neighbor vertex and the far branch vertex
        let c4 = families::cycle_graph(4);
        let k2p = families::path_graph(2);
        let asg = BranchAssignment {
            branch: vec![0, 2],
            neighbors: vec![1, 1],
        };
        // 0-1-2 realizes the edge with shared midpoint 1: fine
        assert!(hitm_preprocess(&c4, &k2p, &asg).is_some());
        let asg = BranchAssignment {
            branch: vec![0, 2],
            neighbors: vec![1, 3],
        };
        // rejected: vertex 1 is adjacent to the far branch vertex 2
        assert!(hitm_preprocess(&c4, &k2p, &asg).is_none());

        // on C6 the same shape is clean: path 0-1 ... 4-3
        let c6 = families::cycle_graph(6);
        let asg = BranchAssignment {
            branch: vec![0, 3],
            neighbors: vec![1, 4],
        };
        let pre = hitm_preprocess(&c6, &k2p, &asg).unwrap();
        assert_eq!(pre.terminal_pairs, vec![(1, 4)]);
    }

    #[test]
    fn solve_examples() {
        let c6 = families::cycle_graph(6);
        let k3 = families::complete_graph(3);
        let out = hitm_solve(&c6, &ident(&c6), &k3).unwrap();
        assert!(out.found);
        assert_eq!(out.witness.unwrap().vertices.len(), 6);

        let claw = families::star_graph(3);
        for n in 4..8 {
            let p = families::path_graph(n);
            assert!(!hitm_solve(&p, &ident(&p), &claw).unwrap().found);
        }

        let c5 = families::cycle_graph(5);
        let c4 = families::cycle_graph(4);
        assert!(hitm_solve(&c5, &ident(&c5), &c4).unwrap().found);

        let k4 = families::complete_graph(4);
        assert!(!hitm_solve(&k4, &ident(&k4), &c4).unwrap().found);
    }

    #[test]
    fn matches_oracle_on_small_graphs() {
        let budget = OracleBudget::default();
        let patterns: Vec<(&str, Graph)> = vec![
            ("K2", families::path_graph(2)),
            ("P3", families::path_graph(3)),
            ("K3", families::complete_graph(3)),
            ("claw", families::star_graph(3)),
            ("C4", families::cycle_graph(4)),
            ("paw", families::paw_graph()),
        ];
        for n in 4..=7usize {
            for seed in 0..4u64 {
                let g = families::deterministic_random_graph(n, seed * 31 + n as u64, 40);
                let d = ident(&g);
                for (name, h) in &patterns {
                    let expect = hitm_bruteforce(&g, h, &budget).unwrap();
                    let got = hitm_solve(&g, &d, h).unwrap();
                    assert_eq!(got.found, expect, "pattern={name} n={n} seed={seed} g={g:?}");
                }
            }
        }
    }

    #[test]
    fn monotone_under_pattern_edge_removal() {
        // empirical sanity: removing a pattern edge cannot destroy a yes
        let budget = OracleBudget::default();
        let paw = families::paw_graph();
        for seed in 0..6u64 {
            let g = families::deterministic_random_graph(7, seed * 3 + 2, 50);
            let d = ident(&g);
            if hitm_solve(&g, &d, &paw).unwrap().found {
                for drop in 0..paw.edge_count() {
                    let edges: Vec<_> = paw
                        .edges()
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &e)| e)
                        .collect();
                    let h2 = Graph::from_edges(4, &edges).unwrap();
                    assert!(
                        hitm_solve(&g, &d, &h2).unwrap().found
                            || !hitm_bruteforce(&g, &h2, &budget).unwrap(),
                        "seed={seed} drop={drop}"
                    );
                }
            }
        }
    }
}
