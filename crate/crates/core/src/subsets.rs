//! Exhaustive vertex-subset machinery shared by the sparsity and gain checks.
//!
//! Subsets are `u64` bitmasks internally; the public surface speaks
//! [`VertexSet`].

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GainValue, OrbitGraph, VertexId};

pub type VertexSet = BTreeSet<VertexId>;

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 14;

/// Masks are 64 bits wide; no bound may exceed this.
pub const MAX_BRUTE_FORCE_BOUND: usize = 63;

/// Limits on exponential work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count for which all vertex subsets are enumerated.
    pub brute_force_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { brute_force_bound: DEFAULT_BRUTE_FORCE_BOUND }
    }
}

impl Limits {
    pub fn new(brute_force_bound: usize) -> Self {
        Limits { brute_force_bound: brute_force_bound.min(MAX_BRUTE_FORCE_BOUND) }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.brute_force_bound {
            Err(Error::BoundExceeded { n, bound: self.brute_force_bound })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn mask_to_set(mask: u64) -> VertexSet {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub(crate) fn set_to_mask(set: &VertexSet, n: usize) -> Result<u64> {
    let mut mask = 0;
    for &v in set {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

/// Per-edge endpoint masks of a graph.
pub(crate) struct EdgeMasks {
    masks: Vec<u64>,
}

impl EdgeMasks {
    pub fn new<M: GainValue>(g: &OrbitGraph<M>) -> Self {
        EdgeMasks { masks: g.edges().iter().map(|e| 1u64 << e.tail | 1u64 << e.head).collect() }
    }

    /// i(S): number of edges with both ends (loops included) in `s`.
    pub fn induced_count(&self, s: u64) -> usize {
        self.masks.iter().filter(|&&m| m & !s == 0).count()
    }

    pub fn induced_edges(&self, s: u64) -> impl Iterator<Item = EdgeId> + '_ {
        self.masks.iter().enumerate().filter(move |(_, &m)| m & !s == 0).map(|(i, _)| i)
    }
}

/// Non-empty subsets of `n` vertices, largest mask first.
pub(crate) fn subsets_desc(n: usize) -> impl Iterator<Item = u64> {
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    (1..=full).rev()
}

/// Cycle-space generators of the subgraph induced by `s`, skipping edge
/// `skip`. One generator per non-forest edge, from a spanning forest grown
/// by weighted union-find; the generated group does not depend on the forest.
pub(crate) fn cycle_generators<M: GainValue>(
    g: &OrbitGraph<M>,
    masks: &EdgeMasks,
    s: u64,
    skip: Option<EdgeId>,
) -> Vec<M> {
    let n = g.n_vertices();
    let mut parent: Vec<VertexId> = (0..n).collect();
    // potential of a vertex relative to its parent
    let mut offset = vec![M::ZERO; n];
    fn find<M: GainValue>(parent: &mut [VertexId], offset: &mut [M], v: VertexId) -> (VertexId, M) {
        let mut path = Vec::new();
        let mut r = v;
        while parent[r] != r {
            path.push(r);
            r = parent[r];
        }
        // compress: walk back from the node nearest the root
        let mut acc = M::ZERO;
        for &w in path.iter().rev() {
            acc = acc + offset[w];
            offset[w] = acc;
            parent[w] = r;
        }
        (r, if path.is_empty() { M::ZERO } else { offset[v] })
    }
    let mut gens = Vec::new();
    for id in masks.induced_edges(s) {
        if Some(id) == skip {
            continue;
        }
        let e = &g.edges()[id];
        let (ru, pu) = find(&mut parent, &mut offset, e.tail);
        let (rv, pv) = find(&mut parent, &mut offset, e.head);
        if ru == rv {
            gens.push(pu + e.gain - pv);
        } else {
            // pot(head) = pot(tail) + gain
            parent[rv] = ru;
            offset[rv] = pu + e.gain - pv;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Gain;

    #[test]
    fn induced_counts_include_loops() {
        let g = OrbitGraph::from_edges(3, [(0, 0, Gain::new(1, 0)), (0, 1, Gain::ZERO), (1, 2, Gain::ZERO)])
            .unwrap();
        let m = EdgeMasks::new(&g);
        assert_eq!(m.induced_count(0b001), 1);
        assert_eq!(m.induced_count(0b011), 2);
        assert_eq!(m.induced_count(0b111), 3);
        assert_eq!(m.induced_count(0b100), 0);
    }

    #[test]
    fn generators_match_cycle_gains() {
        // triangle with net gain (1,2) around 0->1->2->0
        let g = OrbitGraph::from_edges(
            3,
            [(0, 1, Gain::new(1, 0)), (1, 2, Gain::new(0, 2)), (2, 0, Gain::ZERO), (1, 1, Gain::new(0, 3))],
        )
        .unwrap();
        let m = EdgeMasks::new(&g);
        let gens = cycle_generators(&g, &m, 0b111, None);
        assert_eq!(gens.len(), 2);
        assert!(gens.contains(&Gain::new(1, 2)) || gens.contains(&Gain::new(-1, -2)));
        assert!(gens.contains(&Gain::new(0, 3)));
        assert_eq!(cycle_generators(&g, &m, 0b111, Some(2)), vec![Gain::new(0, 3)]);
    }

    #[test]
    fn descending_enumeration_starts_full() {
        let all: Vec<u64> = subsets_desc(3).collect();
        assert_eq!(all.first(), Some(&0b111));
        assert_eq!(all.len(), 7);
        assert_eq!(subsets_desc(0).count(), 0);
    }
}
