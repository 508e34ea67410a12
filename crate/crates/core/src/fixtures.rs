//! Small named graphs shared by unit tests.

use crate::graph::{Gain, OrbitGraph};

pub fn g(x: i128, y: i128) -> Gain {
    Gain::new(x, y)
}

/// Two-cycle triangle with distinct gains; edge 2 runs 0 -> 2.
pub fn gain_triangle() -> OrbitGraph {
    OrbitGraph::from_edges(3, [(0, 1, g(1, 2)), (1, 2, g(0, 1)), (0, 2, g(3, 1)), (2, 0, g(1, -1))]).unwrap()
}

pub fn loop_graph(m: Gain) -> OrbitGraph {
    OrbitGraph::from_edges(1, [(0, 0, m)]).unwrap()
}

pub fn k23(gains: [Gain; 3]) -> OrbitGraph {
    OrbitGraph::from_edges(2, gains.map(|m| (0, 1, m))).unwrap()
}

/// Vertex 0 meets 1 once and 2 twice; the two 1-2 edges are the ears.
pub fn bunny_ears(ears: [Gain; 2]) -> OrbitGraph {
    OrbitGraph::from_edges(
        3,
        [(0, 1, g(0, 0)), (0, 2, g(0, 0)), (0, 2, g(1, 0)), (1, 2, ears[0]), (1, 2, ears[1])],
    )
    .unwrap()
}

/// Five-vertex strip graph with ℤ gains.
pub fn cylinder_strip() -> OrbitGraph<i128> {
    OrbitGraph::from_edges(
        5,
        [(0, 1, 0), (1, 2, 0), (2, 0, 0), (1, 4, 0), (4, 3, 0), (3, 2, 0), (1, 4, 1), (3, 1, 1), (3, 0, 1)],
    )
    .unwrap()
}
