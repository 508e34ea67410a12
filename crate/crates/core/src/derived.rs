//! Finite pieces of the derived periodic graph G^m.
//!
//! Vertex (v, z) of the derived graph is the copy of v in lattice cell z; the
//! copy (e, z) of edge e = (v, w; m) joins (v, z) to (w, z + m).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Gain, OrbitGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DerivedEdge {
    pub edge: EdgeId,
    pub cell: Gain,
    pub from: (VertexId, Gain),
    pub to: (VertexId, Gain),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedFragment {
    pub window: BTreeSet<Gain>,
    pub vertices: Vec<(VertexId, Gain)>,
    pub edges: Vec<DerivedEdge>,
}

/// Cells `(i, j)` with `0 <= i < width`, `0 <= j < height`.
pub fn rect_window(width: u32, height: u32) -> BTreeSet<Gain> {
    (0..width)
        .flat_map(|i| (0..height).map(move |j| Gain::new(i.into(), j.into())))
        .collect()
}

/// All derived vertices over `window`, and the derived edges whose both
/// endpoints land inside it.
pub fn derive(g: &OrbitGraph, window: &BTreeSet<Gain>) -> Result<DerivedFragment> {
    if window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let vertices = window
        .iter()
        .flat_map(|&z| (0..g.n_vertices()).map(move |v| (v, z)))
        .collect();
    let mut edges = Vec::new();
    for &z in window {
        for (id, e) in g.edges().iter().enumerate() {
            let target = z + e.gain;
            if window.contains(&target) {
                edges.push(DerivedEdge { edge: id, cell: z, from: (e.tail, z), to: (e.head, target) });
            }
        }
    }
    Ok(DerivedFragment { window: window.clone(), vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn unit_window_keeps_zero_gain_edges() {
        let h = OrbitGraph::from_edges(2, [(0, 1, g(0, 0)), (0, 1, g(1, 0)), (1, 1, g(0, 1))]).unwrap();
        let f = derive(&h, &BTreeSet::from([g(0, 0)])).unwrap();
        assert_eq!(f.vertices.len(), 2);
        assert_eq!(f.edges.iter().map(|e| e.edge).collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn loop_over_two_cells() {
        let f = derive(&loop_graph(g(1, 0)), &BTreeSet::from([g(0, 0), g(1, 0)])).unwrap();
        assert_eq!(f.vertices.len(), 2);
        assert_eq!(f.edges, [DerivedEdge { edge: 0, cell: g(0, 0), from: (0, g(0, 0)), to: (0, g(1, 0)) }]);
    }

    #[test]
    fn three_by_three_window() {
        let f = derive(&gain_triangle(), &rect_window(3, 3)).unwrap();
        assert_eq!(f.vertices.len(), 27);
        for e in &f.edges {
            assert!(f.vertices.contains(&e.from) && f.vertices.contains(&e.to));
        }
    }

    #[test]
    fn empty_window_rejected() {
        assert_eq!(derive(&gain_triangle(), &BTreeSet::new()), Err(Error::EmptyWindow));
    }
}
