#![allow(dead_code)]

use prk_core::henneberg::generate;
use prk_core::{Gain, GainValue, OrbitGraph, TorusModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gain<M: GainValue>(rng: &mut ChaCha8Rng, range: i128) -> M {
    let x = rng.gen_range(-range..=range);
    let y = if M::ARITY == 2 { rng.gen_range(-range..=range) } else { 0 };
    M::from_pair(Gain::new(x, y)).unwrap()
}

/// Uniform random gain graph on `n` vertices with `m` edges; loops allowed.
pub fn random_graph<M: GainValue>(rng: &mut ChaCha8Rng, n: usize, m: usize, range: i128) -> OrbitGraph<M> {
    let mut g = OrbitGraph::new(n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let mut w: M = gain(rng, range);
        // zero loops have no length at any placement
        while u == v && w.is_zero() {
            w = gain(rng, range);
        }
        g.add_edge(u, v, w).unwrap();
    }
    g
}

/// Re-draws the gain of one random edge.
pub fn perturb<M: GainValue>(rng: &mut ChaCha8Rng, g: &OrbitGraph<M>) -> OrbitGraph<M> {
    let mut gains: Vec<M> = g.edges().iter().map(|e| e.gain).collect();
    let id = rng.gen_range(0..gains.len());
    let e = g.edges()[id];
    loop {
        let w: M = gain(rng, 1);
        if !(e.is_loop() && w.is_zero()) {
            gains[id] = w;
            break;
        }
    }
    g.with_gains(&gains).unwrap()
}

/// Moves one random edge to a random pair of vertices.
pub fn rewire<M: GainValue>(rng: &mut ChaCha8Rng, g: &OrbitGraph<M>) -> OrbitGraph<M> {
    let n = g.n_vertices();
    let id = rng.gen_range(0..g.n_edges());
    let mut h = g.clone();
    let e = h.remove_edge(id).unwrap();
    let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let w = if u == v && e.gain.is_zero() { M::from_pair(Gain::new(1, 0)).unwrap() } else { e.gain };
    h.add_edge(u, v, w).unwrap();
    h
}

/// Mix of generated rigid graphs, small perturbations of them and uniform
/// random graphs, all with |E| = full_rank(n).
pub fn corpus<M: GainValue>(model: TorusModel, seed: u64, count: usize, max_n: usize) -> Vec<OrbitGraph<M>> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let n = r.gen_range(1..=max_n);
        let g = match (i % 3, generate::<M>(n, r.gen(), model)) {
            (0, Ok((g, _))) => g,
            (1, Ok((g, _))) if r.gen_bool(0.5) => perturb(&mut r, &g),
            (1, Ok((g, _))) => rewire(&mut r, &g),
            _ => random_graph(&mut r, n, model.full_rank(n), 2),
        };
        out.push(g);
    }
    out
}

pub fn gain_triangle() -> OrbitGraph {
    let g = |x, y| Gain::new(x, y);
    OrbitGraph::from_edges(3, [(0, 1, g(1, 2)), (1, 2, g(0, 1)), (0, 2, g(3, 1)), (2, 0, g(1, -1))]).unwrap()
}

/// Vertex 0 meets 1 once and 2 twice; the two 1-2 edges are the ears.
pub fn bunny_ears(ears: [Gain; 2]) -> OrbitGraph {
    let z = Gain::ZERO;
    OrbitGraph::from_edges(3, [(0, 1, z), (0, 2, z), (0, 2, Gain::new(1, 0)), (1, 2, ears[0]), (1, 2, ears[1])])
        .unwrap()
}

/// Brute-force oracles that share no code with the library.
pub mod oracle {
    use prk_core::{GainValue, OrbitGraph};

    pub fn pairs<M: GainValue>(g: &OrbitGraph<M>) -> Vec<(usize, usize)> {
        g.edges().iter().map(|e| (e.tail, e.head)).collect()
    }

    /// i(S) ≤ 2|S| − ell for every S spanning an edge.
    pub fn sparse(n: usize, edges: &[(usize, usize)], ell: usize) -> bool {
        (1u64..1 << n).all(|s| {
            let i = edges.iter().filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1).count();
            i == 0 || i + ell <= 2 * s.count_ones() as usize
        })
    }

    /// Edges kept by adding them one at a time while the kept set stays sparse.
    pub fn greedy(n: usize, edges: &[(usize, usize)], ell: usize) -> Vec<bool> {
        let mut kept = Vec::new();
        edges
            .iter()
            .map(|&e| {
                kept.push(e);
                let ok = sparse(n, &kept, ell);
                if !ok {
                    kept.pop();
                }
                ok
            })
            .collect()
    }

    pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut parts = n;
        for &(u, v) in edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                parts -= 1;
            }
        }
        parts <= 1
    }

    /// Minimal vertex sets with i(S) = 2|S| − 1.
    pub fn minimal_over_critical(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
        let over: Vec<u64> = (1u64..1 << n)
            .filter(|&s| {
                let i = edges.iter().filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1).count();
                i > 0 && i + 1 == 2 * s.count_ones() as usize
            })
            .collect();
        over.iter().copied().filter(|&s| !over.iter().any(|&t| t != s && t & s == t)).collect()
    }

    pub fn bridges(n: usize, edges: &[(usize, usize)]) -> usize {
        (0..edges.len())
            .filter(|&i| {
                let mut rest = edges.to_vec();
                rest.remove(i);
                !connected(n, &rest)
            })
            .count()
    }
}
