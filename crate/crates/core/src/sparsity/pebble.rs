//! The (2,ℓ) pebble game.
//!
//! Every vertex starts with two pebbles. An edge is accepted when ℓ + 1
//! pebbles can be gathered on its endpoints (on its single endpoint for a
//! loop); accepting it spends one pebble and orients the edge out of the
//! vertex that paid. Pebbles move by reversing directed paths towards the
//! vertex that needs them.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{GainValue, OrbitGraph, VertexId};

const K: u8 = 2;

/// Incremental game on a fixed vertex set; vertices must be in range.
#[derive(Clone, Debug)]
pub struct PebbleGame {
    ell: u8,
    pebbles: Vec<u8>,
    /// Heads of the accepted edges oriented out of each vertex.
    out: Vec<Vec<VertexId>>,
}

impl PebbleGame {
    pub fn new(n: usize, ell: u8) -> Self {
        PebbleGame { ell, pebbles: vec![K; n], out: vec![Vec::new(); n] }
    }

    fn pebbles_on(&self, u: VertexId, v: VertexId) -> u8 {
        if u == v {
            self.pebbles[u]
        } else {
            self.pebbles[u] + self.pebbles[v]
        }
    }

    /// Tries to add edge `uv`; returns whether it is independent.
    pub fn insert(&mut self, u: VertexId, v: VertexId) -> bool {
        let need = self.ell + 1;
        if u == v && need > K {
            return false;
        }
        while self.pebbles_on(u, v) < need {
            let moved = (self.pebbles[u] < K && self.fetch(u, u, v))
                || (u != v && self.pebbles[v] < K && self.fetch(v, u, v));
            if !moved {
                return false;
            }
        }
        if self.pebbles[u] > 0 {
            self.pebbles[u] -= 1;
            self.out[u].push(v);
        } else {
            self.pebbles[v] -= 1;
            self.out[v].push(u);
        }
        true
    }

    /// Moves one free pebble to `target` from a vertex other than `a`, `b`.
    fn fetch(&mut self, target: VertexId, a: VertexId, b: VertexId) -> bool {
        let n = self.pebbles.len();
        let mut pred: Vec<Option<(VertexId, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[target] = true;
        let mut stack = vec![target];
        while let Some(x) = stack.pop() {
            for slot in 0..self.out[x].len() {
                let y = self.out[x][slot];
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                pred[y] = Some((x, slot));
                if y != a && y != b && self.pebbles[y] > 0 {
                    self.reverse_path(y, &pred);
                    return true;
                }
                stack.push(y);
            }
        }
        false
    }

    fn reverse_path(&mut self, found: VertexId, pred: &[Option<(VertexId, usize)>]) {
        self.pebbles[found] -= 1;
        let mut y = found;
        while let Some((x, slot)) = pred[y] {
            // edge x -> y becomes y -> x
            self.out[x].swap_remove(slot);
            self.out[y].push(x);
            y = x;
        }
        self.pebbles[y] += 1;
    }
}

/// Independence of each edge, in edge order, under the (2,ℓ) count.
pub fn accepted_edges<M: GainValue>(g: &OrbitGraph<M>, ell: u8) -> Vec<bool> {
    let mut game = PebbleGame::new(g.n_vertices(), ell);
    g.edges().iter().map(|e| game.insert(e.tail, e.head)).collect()
}
