//! Gain-graph isomorphism up to relabelling, reorientation and switching.
//!
//! Two gain graphs are equivalent when a vertex bijection π and potentials
//! φ map every edge (u, v; m) of one onto an edge (π u, π v; φ(u) + m − φ(v))
//! of the other, as multisets. Switching changes no cycle gain, so the
//! equivalence preserves every gain condition and the generic rank.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeId, GainValue, OrbitGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism<M> {
    /// `vertex_map[v]` is the image of `v`.
    pub vertex_map: Vec<VertexId>,
    pub potentials: Vec<M>,
    /// `edge_map[e]` is the image of edge `e`.
    pub edge_map: Vec<EdgeId>,
}

/// Orientation-free key of an edge: smaller end first, and a loop gain
/// replaced by the larger of ±m.
fn key<M: GainValue>(u: VertexId, v: VertexId, m: M) -> (VertexId, VertexId, M) {
    if u == v {
        (u, v, m.max(-m))
    } else if u < v {
        (u, v, m)
    } else {
        (v, u, -m)
    }
}

struct Search<'a, M> {
    g: &'a OrbitGraph<M>,
    h_adj: Vec<Vec<(EdgeId, VertexId)>>,
    order: Vec<VertexId>,
    /// Already-placed neighbour each vertex is reached from, with the edge.
    parent: Vec<Option<(VertexId, EdgeId)>>,
    /// Edges of `g` grouped by their later endpoint in `order`.
    back_edges: Vec<Vec<EdgeId>>,
    h_degree: Vec<usize>,
    g_degree: Vec<usize>,
    h_between: BTreeMap<(VertexId, VertexId), Vec<M>>,
    map: Vec<Option<VertexId>>,
    used: Vec<bool>,
    pot: Vec<M>,
}

impl<M: GainValue> Search<'_, M> {
    fn h_gains(&self, a: VertexId, b: VertexId) -> Vec<M> {
        // gains of h-edges a -> b
        let (k, flip) = if a <= b { ((a, b), false) } else { ((b, a), true) };
        let mut out: Vec<M> = self.h_between.get(&k).cloned().unwrap_or_default();
        if flip {
            out.iter_mut().for_each(|m| *m = -*m);
        }
        out
    }

    /// Edges of `g` back to placed vertices match those of `h` exactly.
    fn consistent(&self, v: VertexId) -> bool {
        let mut by_pair: BTreeMap<(VertexId, VertexId), Vec<M>> = BTreeMap::new();
        for &id in &self.back_edges[v] {
            let e = &self.g.edges()[id];
            let (a, b) = (self.map[e.tail].unwrap_or(0), self.map[e.head].unwrap_or(0));
            let m = self.pot[e.tail] + e.gain - self.pot[e.head];
            let (x, y, m) = key(a, b, m);
            by_pair.entry((x, y)).or_default().push(m);
        }
        let pv = self.map[v].unwrap_or(0);
        let mut expected = 0;
        for (pair, mut gains) in by_pair {
            gains.sort();
            let mut theirs = self.h_between.get(&pair).cloned().unwrap_or_default();
            theirs.sort();
            if gains != theirs {
                return false;
            }
            expected += 1;
        }
        // no extra h-edges between pv and placed vertices
        let placed_pairs = self
            .h_between
            .keys()
            .filter(|&&(x, y)| {
                let other = if x == pv { y } else if y == pv { x } else { return false };
                other == pv || self.used[other]
            })
            .count();
        placed_pairs == expected
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let candidates: Vec<(VertexId, M)> = match self.parent[v] {
            None => (0..self.h_adj.len())
                .filter(|&w| !self.used[w] && self.h_degree[w] == self.g_degree[v])
                .map(|w| (w, M::ZERO))
                .collect(),
            Some((p, id)) => {
                let e = &self.g.edges()[id];
                let m = e.gain_from(p);
                let pp = self.map[p].unwrap_or(0);
                let mut c: Vec<(VertexId, M)> = self
                    .h_adj[pp]
                    .iter()
                    .map(|&(_, w)| w)
                    .filter(|&w| !self.used[w] && self.h_degree[w] == self.g_degree[v])
                    .flat_map(|w| self.h_gains(pp, w).into_iter().map(move |m2| (w, m2)))
                    .map(|(w, m2)| (w, self.pot[p] + m - m2))
                    .collect();
                c.sort();
                c.dedup();
                c
            }
        };
        for (w, phi) in candidates {
            self.map[v] = Some(w);
            self.used[w] = true;
            self.pot[v] = phi;
            if self.consistent(v) && self.run(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = None;
        }
        false
    }
}

/// An equivalence from `g` onto `h`, if one exists.
pub fn find_isomorphism<M: GainValue>(g: &OrbitGraph<M>, h: &OrbitGraph<M>) -> Option<Isomorphism<M>> {
    let n = g.n_vertices();
    if n != h.n_vertices() || g.n_edges() != h.n_edges() {
        return None;
    }
    let g_degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let h_degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut gs = g_degree.clone();
    let mut hs = h_degree.clone();
    gs.sort();
    hs.sort();
    if gs != hs {
        return None;
    }
    // BFS order per component, each vertex reached from a placed neighbour
    let adj = g.adjacency();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &(id, w) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, id));
                    order.push(w);
                }
            }
        }
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut back_edges = vec![Vec::new(); n];
    for (id, e) in g.edges().iter().enumerate() {
        let later = if rank[e.tail] >= rank[e.head] { e.tail } else { e.head };
        back_edges[later].push(id);
    }
    let mut h_between: BTreeMap<(VertexId, VertexId), Vec<M>> = BTreeMap::new();
    for e in h.edges() {
        let (a, b, m) = key(e.tail, e.head, e.gain);
        h_between.entry((a, b)).or_default().push(m);
    }
    let mut search = Search {
        g,
        h_adj: h.adjacency(),
        order,
        parent,
        back_edges,
        h_degree,
        g_degree,
        h_between,
        map: vec![None; n],
        used: vec![false; n],
        pot: vec![M::ZERO; n],
    };
    if !search.run(0) {
        return None;
    }
    let vertex_map: Vec<VertexId> = search.map.iter().map(|m| m.unwrap_or(0)).collect();
    let potentials = search.pot;
    // pair up edges with equal keys
    let mut pool: BTreeMap<(VertexId, VertexId, M), Vec<EdgeId>> = BTreeMap::new();
    for (id, e) in h.edges().iter().enumerate() {
        pool.entry(key(e.tail, e.head, e.gain)).or_default().push(id);
    }
    let mut edge_map = Vec::with_capacity(g.n_edges());
    for e in g.edges() {
        let m = potentials[e.tail] + e.gain - potentials[e.head];
        let k = key(vertex_map[e.tail], vertex_map[e.head], m);
        edge_map.push(pool.get_mut(&k)?.pop()?);
    }
    Some(Isomorphism { vertex_map, potentials, edge_map })
}

pub fn is_isomorphic<M: GainValue>(g: &OrbitGraph<M>, h: &OrbitGraph<M>) -> bool {
    find_isomorphism(g, h).is_some()
}
