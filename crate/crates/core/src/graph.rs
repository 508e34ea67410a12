//! Gain graphs: directed multigraphs whose edges carry elements of ℤ² (or ℤ
//! for one-dimensional models).
//!
//! Traversing an edge against its orientation contributes the negated gain,
//! so `{u, v; m}` and `{v, u; -m}` describe the same edge. Edges are
//! identified by position; parallel edges with equal gains are still
//! distinct.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Element of the gain group.
pub trait GainValue:
    Copy
    + Eq
    + Ord
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
{
    const ZERO: Self;
    /// Number of integer components (1 or 2).
    const ARITY: usize;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// First component.
    fn x(self) -> i128;

    /// Second component, zero for scalar gains.
    fn y(self) -> i128;

    /// The gain as a ℤ² element; scalar gains land on the first axis.
    fn to_pair(self) -> Gain {
        Gain::new(self.x(), self.y())
    }

    /// Inverse of [`GainValue::to_pair`]; `None` off the first axis for
    /// scalar gains.
    fn from_pair(m: Gain) -> Option<Self>;
}

/// An element of ℤ².
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gain {
    pub x: i128,
    pub y: i128,
}

impl Gain {
    pub const fn new(x: i128, y: i128) -> Self {
        Gain { x, y }
    }

    /// Exchanges the two coordinates.
    pub const fn swapped(self) -> Self {
        Gain { x: self.y, y: self.x }
    }
}

impl From<(i128, i128)> for Gain {
    fn from((x, y): (i128, i128)) -> Self {
        Gain { x, y }
    }
}

impl fmt::Display for Gain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for Gain {
    type Output = Gain;
    fn add(self, rhs: Gain) -> Gain {
        Gain::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Gain {
    type Output = Gain;
    fn sub(self, rhs: Gain) -> Gain {
        Gain::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Gain {
    type Output = Gain;
    fn neg(self) -> Gain {
        Gain::new(-self.x, -self.y)
    }
}

impl GainValue for Gain {
    const ZERO: Self = Gain { x: 0, y: 0 };
    const ARITY: usize = 2;

    fn x(self) -> i128 {
        self.x
    }

    fn y(self) -> i128 {
        self.y
    }

    fn from_pair(m: Gain) -> Option<Self> {
        Some(m)
    }
}

impl GainValue for i128 {
    const ZERO: Self = 0;
    const ARITY: usize = 1;

    fn x(self) -> i128 {
        self
    }

    fn y(self) -> i128 {
        0
    }

    fn from_pair(m: Gain) -> Option<Self> {
        (m.y == 0).then_some(m.x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge<M = Gain> {
    pub tail: VertexId,
    pub head: VertexId,
    pub gain: M,
}

impl<M: GainValue> Edge<M> {
    pub fn new(tail: VertexId, head: VertexId, gain: M) -> Self {
        Edge { tail, head, gain }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn is_incident(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint opposite to `v`.
    pub fn opposite(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    /// Gain picked up when the edge is traversed starting at `v`.
    pub fn gain_from(&self, v: VertexId) -> M {
        if self.tail == v {
            self.gain
        } else {
            -self.gain
        }
    }

    /// The same edge written in the opposite orientation.
    pub fn reversed(&self) -> Self {
        Edge::new(self.head, self.tail, -self.gain)
    }
}

/// A periodic orbit graph ⟨G, m⟩.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbitGraph<M = Gain> {
    n: usize,
    edges: Vec<Edge<M>>,
}

impl<M: GainValue> OrbitGraph<M> {
    pub fn new(n_vertices: usize) -> Self {
        OrbitGraph { n: n_vertices, edges: Vec::new() }
    }

    pub fn from_edges<I>(n_vertices: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, M)>,
    {
        let mut g = Self::new(n_vertices);
        for (u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<M>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge<M>> {
        self.edges.get(id).ok_or(Error::EdgeOutOfRange(id))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, tail: VertexId, head: VertexId, gain: M) -> Result<EdgeId> {
        self.check_vertex(tail)?;
        self.check_vertex(head)?;
        self.edges.push(Edge::new(tail, head, gain));
        Ok(self.edges.len() - 1)
    }

    /// Removes an edge; ids of later edges shift down by one.
    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Edge<M>> {
        if id >= self.edges.len() {
            return Err(Error::EdgeOutOfRange(id));
        }
        Ok(self.edges.remove(id))
    }

    /// Deletes `v` with its incident edges. Vertices above `v` shift down by
    /// one, edge order is otherwise kept.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        self.check_vertex(v)?;
        self.edges.retain(|e| !e.is_incident(v));
        let shift = |w: VertexId| if w > v { w - 1 } else { w };
        for e in &mut self.edges {
            e.tail = shift(e.tail);
            e.head = shift(e.head);
        }
        self.n -= 1;
        Ok(())
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.is_incident(v))
            .map(|(i, _)| i)
    }

    pub fn map_gains<N: GainValue>(&self, mut f: impl FnMut(M) -> N) -> OrbitGraph<N> {
        OrbitGraph {
            n: self.n,
            edges: self.edges.iter().map(|e| Edge::new(e.tail, e.head, f(e.gain))).collect(),
        }
    }

    /// Same graph with every gain replaced.
    pub fn with_gains(&self, gains: &[M]) -> Result<Self> {
        if gains.len() != self.edges.len() {
            return Err(Error::InconsistentTable);
        }
        let mut g = self.clone();
        for (e, &m) in g.edges.iter_mut().zip(gains) {
            e.gain = m;
        }
        Ok(g)
    }

    /// Adjacency lists of (edge id, neighbour); a loop appears once.
    pub fn adjacency(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((id, e.head));
            if !e.is_loop() {
                adj[e.head].push((id, e.tail));
            }
        }
        adj
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(_, w) in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Signed sum of gains along a walk; consecutive steps must share a vertex.
    pub fn net_gain(&self, walk: &[(EdgeId, Direction)]) -> Result<M> {
        let mut total = M::ZERO;
        let mut at: Option<VertexId> = None;
        for (step, &(id, dir)) in walk.iter().enumerate() {
            let e = self.edge(id)?;
            let (from, to, m) = match dir {
                Direction::Forward => (e.tail, e.head, e.gain),
                Direction::Backward => (e.head, e.tail, -e.gain),
            };
            if at.is_some_and(|a| a != from) {
                return Err(Error::DisconnectedWalk(step));
            }
            total = total + m;
            at = Some(to);
        }
        Ok(total)
    }
}
