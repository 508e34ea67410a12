//! The T-gain procedure and cycle-gain groups.
//!
//! Given a spanning tree T rooted at u, the T-potential m(v,T) of a vertex is
//! the net gain of the tree path from u to v, and every edge e = (v, w; m)
//! gets the T-gain m(v,T) + m − m(w,T). Tree edges end up with zero gain and
//! the net gain of every cycle is unchanged.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Gain, GainValue, OrbitGraph, VertexId};
use crate::subsets::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TGainTable<M = Gain> {
    /// Spanning forest, one tree per connected component.
    pub tree_edges: BTreeSet<EdgeId>,
    /// One root per component.
    pub roots: Vec<VertexId>,
    pub potentials: Vec<M>,
    pub t_gains: Vec<M>,
}

impl<M: GainValue> TGainTable<M> {
    /// The graph re-labelled with its T-gains.
    pub fn apply(&self, g: &OrbitGraph<M>) -> Result<OrbitGraph<M>> {
        g.with_gains(&self.t_gains)
    }

    /// T-gains of the non-tree edges, in edge order.
    pub fn generators(&self) -> Vec<M> {
        self.t_gains
            .iter()
            .enumerate()
            .filter(|(id, _)| !self.tree_edges.contains(id))
            .map(|(_, &m)| m)
            .collect()
    }
}

/// Runs the procedure with a caller-chosen spanning tree of a connected graph.
pub fn t_gain_procedure<M: GainValue>(
    g: &OrbitGraph<M>,
    tree: &BTreeSet<EdgeId>,
    root: VertexId,
) -> Result<TGainTable<M>> {
    g.check_vertex(root)?;
    for &id in tree {
        if g.edge(id)?.is_loop() {
            return Err(Error::NotSpanningTree("contains a loop"));
        }
    }
    if tree.len() + 1 != g.n_vertices() {
        return Err(Error::NotSpanningTree("wrong number of edges"));
    }
    let (potentials, reached) = grow(g, tree, &[root]);
    if reached != g.n_vertices() {
        return Err(Error::NotSpanningTree("does not reach every vertex"));
    }
    Ok(finish(g, tree.clone(), vec![root], potentials))
}

/// Runs the procedure with a BFS forest: one tree per component, rooted at
/// its smallest vertex, neighbours taken in edge-id order.
pub fn t_gain_auto<M: GainValue>(g: &OrbitGraph<M>) -> TGainTable<M> {
    let adj = g.adjacency();
    let n = g.n_vertices();
    let mut seen = vec![false; n];
    let mut tree = BTreeSet::new();
    let mut roots = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        roots.push(s);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(id, w) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    tree.insert(id);
                    queue.push_back(w);
                }
            }
        }
    }
    let (potentials, _) = grow(g, &tree, &roots);
    finish(g, tree, roots, potentials)
}

/// Potentials along `tree` from `roots`, and how many vertices were reached.
fn grow<M: GainValue>(g: &OrbitGraph<M>, tree: &BTreeSet<EdgeId>, roots: &[VertexId]) -> (Vec<M>, usize) {
    let n = g.n_vertices();
    let mut tree_adj: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &id in tree {
        let e = &g.edges()[id];
        tree_adj[e.tail].push(id);
        tree_adj[e.head].push(id);
    }
    let mut pot = vec![None; n];
    let mut len = 0;
    for &r in roots {
        pot[r] = Some(M::ZERO);
        len += 1;
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            let pu = pot[u].unwrap_or(M::ZERO);
            for &id in &tree_adj[u] {
                let e = &g.edges()[id];
                let w = e.opposite(u);
                if pot[w].is_none() {
                    pot[w] = Some(pu + e.gain_from(u));
                    len += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    (pot.into_iter().map(|p| p.unwrap_or(M::ZERO)).collect(), len)
}

fn finish<M: GainValue>(
    g: &OrbitGraph<M>,
    tree_edges: BTreeSet<EdgeId>,
    roots: Vec<VertexId>,
    potentials: Vec<M>,
) -> TGainTable<M> {
    let t_gains = g
        .edges()
        .iter()
        .map(|e| potentials[e.tail] + e.gain - potentials[e.head])
        .collect();
    TGainTable { tree_edges, roots, potentials, t_gains }
}

/// Subgroup of the gain group generated by net gains of closed walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainGroup<M = Gain> {
    pub generators: Vec<M>,
}

impl<M: GainValue> GainGroup<M> {
    pub fn is_nontrivial(&self) -> bool {
        self.generators.iter().any(|m| !m.is_zero())
    }

    /// Some closed walk has non-zero first coordinate.
    pub fn is_x_nontrivial(&self) -> bool {
        self.generators.iter().any(|m| m.x() != 0)
    }

    /// Some closed walk has non-zero second coordinate.
    pub fn is_y_nontrivial(&self) -> bool {
        self.generators.iter().any(|m| m.y() != 0)
    }

    /// Some group element has both coordinates non-zero. A subgroup of ℤ²
    /// lies in the union of the axes only if it lies in one of them.
    pub fn has_mixed_element(&self) -> bool {
        self.is_x_nontrivial() && self.is_y_nontrivial()
    }
}

/// Induced subgraph on `subset`, with the original id of every kept edge.
pub fn induced<M: GainValue>(g: &OrbitGraph<M>, subset: &VertexSet) -> Result<(OrbitGraph<M>, Vec<EdgeId>)> {
    let mut index = vec![None; g.n_vertices()];
    for (i, &v) in subset.iter().enumerate() {
        g.check_vertex(v)?;
        index[v] = Some(i);
    }
    let mut sub = OrbitGraph::new(subset.len());
    let mut ids = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if let (Some(a), Some(b)) = (index[e.tail], index[e.head]) {
            sub.add_edge(a, b, e.gain)?;
            ids.push(id);
        }
    }
    Ok((sub, ids))
}

/// Gain group of the connected subgraph induced by `subset`.
pub fn gain_group<M: GainValue>(g: &OrbitGraph<M>, subset: &VertexSet) -> Result<GainGroup<M>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let (sub, _) = induced(g, subset)?;
    if !sub.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(GainGroup { generators: t_gain_auto(&sub).generators() })
}
