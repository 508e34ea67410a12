//! (2,ℓ)-sparsity, P(2,1)-graphs and their structure.
//!
//! A graph is (2,ℓ)-sparse when every non-empty edge set spans at least
//! (|E'| + ℓ)/2 vertices, and (2,ℓ)-tight when in addition |E| = 2|V| − ℓ.
//! A P(2,1)-graph is (2,1)-tight and has an edge whose removal leaves a
//! (2,2)-tight graph; it contains exactly one (2,2)-circuit.

mod decompose;
mod pebble;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GainValue, OrbitGraph};
use crate::subsets::{mask_to_set, EdgeMasks, Limits, VertexSet};

pub use decompose::{forest_partition, tree_map_decompose, TreeMapDecomposition};
pub use pebble::{accepted_edges, PebbleGame};

/// Sparsity counts with k = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SparsityParams {
    ell: u8,
}

impl SparsityParams {
    pub const K: usize = 2;

    /// Accepts 0 <= ell < 2k.
    pub fn new(ell: u8) -> Option<Self> {
        (usize::from(ell) < 2 * Self::K).then_some(SparsityParams { ell })
    }

    pub fn ell(&self) -> u8 {
        self.ell
    }

    /// 2n − ℓ, or `None` when negative.
    pub fn edge_budget(&self, n: usize) -> Option<usize> {
        (Self::K * n).checked_sub(self.ell.into())
    }
}

pub fn is_sparse<M: GainValue>(g: &OrbitGraph<M>, params: SparsityParams) -> bool {
    accepted_edges(g, params.ell).into_iter().all(|ok| ok)
}

pub fn is_tight<M: GainValue>(g: &OrbitGraph<M>, params: SparsityParams) -> bool {
    params.edge_budget(g.n_vertices()) == Some(g.n_edges()) && is_sparse(g, params)
}

pub(crate) fn p21_tight<M: GainValue>(g: &OrbitGraph<M>) -> bool {
    is_tight(g, SparsityParams { ell: 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CountClass {
    /// i(X) ≥ 2|X|, impossible in a (2,1)-sparse graph.
    Overbraced,
    /// i(X) = 2|X| − 1
    OverCritical,
    /// i(X) = 2|X| − 2
    Critical,
    /// i(X) = 2|X| − 3
    SemiCritical,
    Slack,
}

impl CountClass {
    pub fn of(i_count: usize, size: usize) -> Self {
        let budget = 2 * size as i64;
        match i_count as i64 - budget {
            d if d >= 0 => CountClass::Overbraced,
            -1 => CountClass::OverCritical,
            -2 => CountClass::Critical,
            -3 => CountClass::SemiCritical,
            _ => CountClass::Slack,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetClass {
    pub subset: VertexSet,
    pub i_count: usize,
    pub class: CountClass,
}

/// Induced edge count of `subset` and its count class.
pub fn classify_subset<M: GainValue>(g: &OrbitGraph<M>, subset: &VertexSet) -> Result<SubsetClass> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let i_count = g
        .edges()
        .iter()
        .filter(|e| subset.contains(&e.tail) && subset.contains(&e.head))
        .count();
    for &v in subset {
        g.check_vertex(v)?;
    }
    Ok(SubsetClass { subset: subset.clone(), i_count, class: CountClass::of(i_count, subset.len()) })
}

/// Edges whose removal leaves a (2,2)-tight graph. For a P(2,1)-graph these
/// are exactly the edges of its (2,2)-circuit.
pub fn circuit_edges<M: GainValue>(g: &OrbitGraph<M>) -> Vec<EdgeId> {
    let two_two = SparsityParams { ell: 2 };
    (0..g.n_edges())
        .filter(|&id| {
            let mut h = g.clone();
            // id is in range
            let _ = h.remove_edge(id);
            is_tight(&h, two_two)
        })
        .collect()
}

/// Whether `g` is a P(2,1)-graph. Disconnected graphs never are.
pub fn is_p21<M: GainValue>(g: &OrbitGraph<M>) -> bool {
    g.is_connected() && p21_tight(g) && !circuit_edges(g).is_empty()
}

/// The unique minimal over-critical vertex set of a P(2,1)-graph; it
/// induces the (2,2)-circuit.
pub fn find_circuit<M: GainValue>(g: &OrbitGraph<M>) -> Result<VertexSet> {
    if !g.is_connected() || !p21_tight(g) {
        return Err(Error::NotP21);
    }
    let edges = circuit_edges(g);
    if edges.is_empty() {
        return Err(Error::NotP21);
    }
    Ok(edges.iter().flat_map(|&id| {
        let e = &g.edges()[id];
        [e.tail, e.head]
    })
    .collect())
}

/// Vertex sets S with i(S) = 2|S| − ell and at least one induced edge,
/// in increasing bitmask order.
pub fn tight_subgraphs<M: GainValue>(g: &OrbitGraph<M>, ell: u8, limits: &Limits) -> Result<Vec<VertexSet>> {
    limits.check(g.n_vertices())?;
    let masks = EdgeMasks::new(g);
    let mut out: Vec<u64> = crate::subsets::subsets_desc(g.n_vertices())
        .filter(|&s| {
            let i = masks.induced_count(s);
            i > 0 && i + usize::from(ell) == 2 * s.count_ones() as usize
        })
        .collect();
    out.reverse();
    Ok(out.into_iter().map(mask_to_set).collect())
}

/// Non-loop edges whose removal disconnects the graph.
pub fn bridges<M: GainValue>(g: &OrbitGraph<M>) -> Vec<EdgeId> {
    let base = g.components().len();
    (0..g.n_edges())
        .filter(|&id| {
            if g.edges()[id].is_loop() {
                return false;
            }
            let mut h = g.clone();
            let _ = h.remove_edge(id);
            h.components().len() > base
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::graph::Gain;

    fn p(ell: u8) -> SparsityParams {
        SparsityParams::new(ell).unwrap()
    }

    #[test]
    fn params_range() {
        assert!(SparsityParams::new(3).is_some());
        assert!(SparsityParams::new(4).is_none());
    }

    #[test]
    fn base_graphs_are_21_tight() {
        assert!(is_tight(&k23([Gain::ZERO; 3]), p(1)));
        assert!(is_tight(&loop_graph(g(1, 0)), p(1)));
        assert!(!is_tight(&loop_graph(g(1, 0)), p(2)));
    }

    #[test]
    fn triangle_is_not_22_tight() {
        let t = OrbitGraph::from_edges(3, [(0, 1, Gain::ZERO), (1, 2, Gain::ZERO), (2, 0, Gain::ZERO)]).unwrap();
        assert!(!is_tight(&t, p(2)));
        assert!(is_tight(&t, p(3)));
        assert!(is_sparse(&t, p(2)));
    }

    #[test]
    fn loops_only_with_ell_one() {
        let g2 = OrbitGraph::from_edges(1, [(0, 0, 1i128)]).unwrap();
        assert_eq!(accepted_edges(&g2, 0), [true]);
        assert_eq!(accepted_edges(&g2, 1), [true]);
        assert_eq!(accepted_edges(&g2, 2), [false]);
        assert_eq!(accepted_edges(&g2, 3), [false]);
    }

    #[test]
    fn classify_examples() {
        let be = bunny_ears([g(0, 0), g(0, 1)]);
        let c = classify_subset(&be, &VertexSet::from([0, 1, 2])).unwrap();
        assert_eq!((c.i_count, c.class), (5, CountClass::OverCritical));
        let c = classify_subset(&be, &VertexSet::from([1])).unwrap();
        assert_eq!((c.i_count, c.class), (0, CountClass::Critical));
        let c = classify_subset(&be, &VertexSet::from([0, 1])).unwrap();
        assert_eq!(c.class, CountClass::SemiCritical);
        let c = classify_subset(&k23([Gain::ZERO; 3]), &VertexSet::from([0, 1])).unwrap();
        assert_eq!(c.class, CountClass::OverCritical);
        assert_eq!(classify_subset(&be, &VertexSet::new()), Err(Error::EmptySubset));
    }

    #[test]
    fn p21_examples() {
        assert!(is_p21(&bunny_ears([g(0, 0), g(0, 1)])));
        assert!(is_p21(&loop_graph(g(1, 0))));
        assert!(is_p21(&k23([Gain::ZERO; 3])));
        let two_loops = OrbitGraph::from_edges(2, [(0, 0, g(1, 0)), (1, 1, g(1, 0))]).unwrap();
        assert!(!is_p21(&two_loops));
        // (2,1)-tight but the loop and the double edge are both over-critical
        let h = OrbitGraph::from_edges(3, [(0, 0, g(1, 0)), (0, 1, Gain::ZERO), (1, 2, Gain::ZERO), (1, 2, g(1, 0)), (1, 2, g(2, 0))]);
        assert!(!is_p21(&h.unwrap()));
    }

    #[test]
    fn circuits() {
        let with_loop =
            OrbitGraph::from_edges(2, [(0, 1, Gain::ZERO), (0, 1, g(0, 1)), (1, 1, g(1, 0))]).unwrap();
        assert_eq!(find_circuit(&with_loop).unwrap(), VertexSet::from([1]));
        assert_eq!(find_circuit(&k23([Gain::ZERO; 3])).unwrap(), VertexSet::from([0, 1]));
        assert_eq!(find_circuit(&bunny_ears([g(0, 0), g(0, 1)])).unwrap(), VertexSet::from([0, 1, 2]));
        assert_eq!(find_circuit(&gain_triangle()), Err(Error::NotP21));
    }

    #[test]
    fn tight_subgraph_examples() {
        let l = Limits::default();
        assert_eq!(tight_subgraphs(&loop_graph(g(1, 0)), 1, &l).unwrap(), [VertexSet::from([0])]);
        assert!(tight_subgraphs(&gain_triangle(), 2, &l).unwrap().contains(&VertexSet::from([0, 1, 2])));
        assert_eq!(tight_subgraphs(&k23([Gain::ZERO; 3]), 1, &l).unwrap(), [VertexSet::from([0, 1])]);
        let big = OrbitGraph::<Gain>::new(20);
        assert_eq!(tight_subgraphs(&big, 1, &l), Err(Error::BoundExceeded { n: 20, bound: 14 }));
    }

    #[test]
    fn bunny_ears_is_bridgeless() {
        assert!(bridges(&bunny_ears([g(0, 0), g(0, 1)])).is_empty());
        let path = OrbitGraph::from_edges(2, [(0, 1, Gain::ZERO), (1, 1, g(1, 0))]).unwrap();
        assert_eq!(bridges(&path), [0]);
    }
}
