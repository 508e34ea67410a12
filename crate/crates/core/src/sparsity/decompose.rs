//! Tree + connected map decompositions of P(2,1)-graphs.
//!
//! Removing an edge f of the (2,2)-circuit leaves a (2,2)-tight graph, which
//! splits into two edge-disjoint spanning trees. Adding f back to one of
//! them gives a connected spanning subgraph with exactly one cycle.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GainValue, OrbitGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMapDecomposition {
    pub tree_edges: BTreeSet<EdgeId>,
    pub map_edges: BTreeSet<EdgeId>,
}

impl TreeMapDecomposition {
    /// Whether the tree edges form a spanning tree, the map edges a connected
    /// spanning subgraph with one cycle, and together all edges of `g`.
    pub fn is_valid_for<M: GainValue>(&self, g: &OrbitGraph<M>) -> bool {
        let n = g.n_vertices();
        let all = self.tree_edges.len() + self.map_edges.len() == g.n_edges()
            && self.tree_edges.is_disjoint(&self.map_edges)
            && self.tree_edges.iter().chain(&self.map_edges).all(|&id| id < g.n_edges());
        all && self.tree_edges.len() + 1 == n
            && self.map_edges.len() == n
            && spans_connected(g, &self.tree_edges)
            && spans_connected(g, &self.map_edges)
    }
}

fn spans_connected<M: GainValue>(g: &OrbitGraph<M>, ids: &BTreeSet<EdgeId>) -> bool {
    let mut h = OrbitGraph::new(g.n_vertices());
    for &id in ids {
        let e = &g.edges()[id];
        // endpoints come from g
        let _ = h.add_edge(e.tail, e.head, e.gain);
    }
    h.is_connected()
}

/// Splits all edges except `skip` into two forests, or `None` when they do
/// not fit. Uses breadth-first augmenting paths for the union of two graphic
/// matroids.
pub fn forest_partition<M: GainValue>(g: &OrbitGraph<M>, skip: Option<EdgeId>) -> Option<[Vec<EdgeId>; 2]> {
    let m = g.n_edges();
    let mut member: Vec<Option<usize>> = vec![None; m];
    for e in 0..m {
        if Some(e) == skip {
            continue;
        }
        if g.edges()[e].is_loop() || !augment(g, &mut member, e) {
            return None;
        }
    }
    let mut out = [Vec::new(), Vec::new()];
    for (id, f) in member.iter().enumerate() {
        if let Some(f) = *f {
            out[f].push(id);
        }
    }
    Some(out)
}

fn augment<M: GainValue>(g: &OrbitGraph<M>, member: &mut [Option<usize>], start: EdgeId) -> bool {
    let m = g.n_edges();
    // pred[y] = (x, i): x enters forest i in place of y
    let mut pred: Vec<Option<(EdgeId, usize)>> = vec![None; m];
    let mut labelled = vec![false; m];
    labelled[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for i in 0..2 {
            if member[x] == Some(i) {
                continue;
            }
            let e = &g.edges()[x];
            match forest_path(g, member, i, e.tail, e.head) {
                None => {
                    member[x] = Some(i);
                    let mut w = x;
                    while let Some((y, j)) = pred[w] {
                        member[y] = Some(j);
                        w = y;
                    }
                    return true;
                }
                Some(cycle) => {
                    for y in cycle {
                        if !labelled[y] {
                            labelled[y] = true;
                            pred[y] = Some((x, i));
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
    }
    false
}

/// Edge ids on the path from `a` to `b` in forest `i`, or `None` if the
/// two vertices are in different trees.
fn forest_path<M: GainValue>(
    g: &OrbitGraph<M>,
    member: &[Option<usize>],
    i: usize,
    a: VertexId,
    b: VertexId,
) -> Option<Vec<EdgeId>> {
    let n = g.n_vertices();
    let mut adj: Vec<Vec<(EdgeId, VertexId)>> = vec![Vec::new(); n];
    for (id, e) in g.edges().iter().enumerate() {
        if member[id] == Some(i) {
            adj[e.tail].push((id, e.head));
            adj[e.head].push((id, e.tail));
        }
    }
    let mut via: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut path = Vec::new();
            let mut w = b;
            while let Some((id, p)) = via[w] {
                path.push(id);
                w = p;
            }
            return Some(path);
        }
        for &(id, w) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                via[w] = Some((id, u));
                queue.push_back(w);
            }
        }
    }
    None
}

/// A tree + connected map decomposition of a P(2,1)-graph. The edge added
/// to the map is a loop of the circuit if there is one.
pub fn tree_map_decompose<M: GainValue>(g: &OrbitGraph<M>) -> Result<TreeMapDecomposition> {
    if !g.is_connected() || !super::p21_tight(g) {
        return Err(Error::NotP21);
    }
    let circuit = super::circuit_edges(g);
    let f = circuit
        .iter()
        .copied()
        .find(|&id| g.edges()[id].is_loop())
        .or_else(|| circuit.first().copied())
        .ok_or(Error::NotP21)?;
    let [a, b] = forest_partition(g, Some(f)).ok_or(Error::NotP21)?;
    let mut map: BTreeSet<EdgeId> = b.into_iter().collect();
    map.insert(f);
    Ok(TreeMapDecomposition { tree_edges: a.into_iter().collect(), map_edges: map })
}
