//! Gain-preserving Henneberg moves.
//!
//! Every move appends a vertex v0 (id n) with edges directed out of it, and
//! new edges are appended after the surviving old ones.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Gain, GainValue, OrbitGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// Vertex joined to two distinct vertices.
    H1a,
    /// Vertex joined twice to one vertex, with different gains.
    H1b,
    /// Edge split with the third edge to another vertex.
    H2a,
    /// Edge split with the third edge parallel to the second.
    H2b,
    /// Loop split.
    H2c,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [MoveKind::H1a, MoveKind::H1b, MoveKind::H2a, MoveKind::H2b, MoveKind::H2c];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::H1a => "H1a",
            MoveKind::H1b => "H1b",
            MoveKind::H2a => "H2a",
            MoveKind::H2b => "H2b",
            MoveKind::H2c => "H2c",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Number of gains the move carries, one per new edge.
    pub fn n_gains(self) -> usize {
        match self {
            MoveKind::H1a | MoveKind::H1b => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Vertex and edge ids in the graph the move is applied to.
///
/// H1a uses `v1`, `v2`; H1b uses `v1`. H2a and H2b split `edge`, with `v1`
/// naming one of its endpoints and v2 the other; H2a also uses `v3`. H2c
/// splits the loop `edge` at v2 and joins the new vertex to `v1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Anchors {
    pub v1: Option<VertexId>,
    pub v2: Option<VertexId>,
    pub v3: Option<VertexId>,
    pub edge: Option<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub anchors: Anchors,
    /// Gains of the new edges, directed out of the new vertex, in the order
    /// they are appended.
    pub gains: Vec<Gain>,
}

impl Move {
    pub fn h1a(v1: VertexId, v2: VertexId, m01: Gain, m02: Gain) -> Self {
        Move {
            kind: MoveKind::H1a,
            anchors: Anchors { v1: Some(v1), v2: Some(v2), ..Anchors::default() },
            gains: [m01, m02].into(),
        }
    }

    pub fn h1b(v1: VertexId, m01: Gain, m02: Gain) -> Self {
        Move { kind: MoveKind::H1b, anchors: Anchors { v1: Some(v1), ..Anchors::default() }, gains: [m01, m02].into() }
    }

    /// `m_e` is the gain of `edge` read from `v1` to the other endpoint.
    pub fn h2a(edge: EdgeId, v1: VertexId, m_e: Gain, v3: VertexId, m03: Gain) -> Self {
        Move {
            kind: MoveKind::H2a,
            anchors: Anchors { v1: Some(v1), v3: Some(v3), edge: Some(edge), ..Anchors::default() },
            gains: [Gain::ZERO, m_e, m03].into(),
        }
    }

    pub fn h2b(edge: EdgeId, v1: VertexId, m_e: Gain, m03: Gain) -> Self {
        Move {
            kind: MoveKind::H2b,
            anchors: Anchors { v1: Some(v1), edge: Some(edge), ..Anchors::default() },
            gains: [Gain::ZERO, m_e, m03].into(),
        }
    }

    /// Needs m1 − m2 = ± the loop gain.
    pub fn h2c(edge: EdgeId, v1: VertexId, m0: Gain, m1: Gain, m2: Gain) -> Self {
        Move {
            kind: MoveKind::H2c,
            anchors: Anchors { v1: Some(v1), edge: Some(edge), ..Anchors::default() },
            gains: [m0, m1, m2].into(),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        let a = &self.anchors;
        for (name, v) in [("edge", a.edge), ("v1", a.v1), ("v2", a.v2), ("v3", a.v3)] {
            if let Some(v) = v {
                write!(f, " {name}={v}")?;
            }
        }
        f.write_str(" gains")?;
        for m in &self.gains {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

fn invalid(msg: impl Into<alloc::string::String>) -> Error {
    Error::InvalidMove(msg.into())
}

fn need<T>(x: Option<T>, what: &str) -> Result<T> {
    x.ok_or_else(|| invalid(format!("missing anchor {what}")))
}

/// The graph after `mv`. The input is not required to be P(2,1).
pub fn apply_move<M: GainValue>(g: &OrbitGraph<M>, mv: &Move) -> Result<OrbitGraph<M>> {
    if mv.gains.len() != mv.kind.n_gains() {
        return Err(invalid(format!("{} takes {} gains", mv.kind, mv.kind.n_gains())));
    }
    let mut gains = Vec::with_capacity(3);
    for &m in &mv.gains {
        gains.push(M::from_pair(m).ok_or_else(|| invalid(format!("gain {m} does not fit the gain group")))?);
    }
    let a = &mv.anchors;
    let mut h = g.clone();
    // (neighbour, gain) for each new edge
    let targets: Vec<(VertexId, M)> = match mv.kind {
        MoveKind::H1a => {
            let (v1, v2) = (need(a.v1, "v1")?, need(a.v2, "v2")?);
            g.check_vertex(v1)?;
            g.check_vertex(v2)?;
            if v1 == v2 {
                return Err(invalid("H1a needs two distinct vertices"));
            }
            [(v1, gains[0]), (v2, gains[1])].into()
        }
        MoveKind::H1b => {
            let v1 = need(a.v1, "v1")?;
            g.check_vertex(v1)?;
            if gains[0] == gains[1] {
                return Err(invalid("H1b needs two different gains"));
            }
            [(v1, gains[0]), (v1, gains[1])].into()
        }
        MoveKind::H2a | MoveKind::H2b => {
            let id = need(a.edge, "edge")?;
            let e = *g.edge(id)?;
            let v1 = need(a.v1, "v1")?;
            if e.is_loop() {
                return Err(invalid("cannot split a loop with H2a or H2b"));
            }
            if !e.is_incident(v1) {
                return Err(invalid(format!("vertex {v1} is not an end of edge {id}")));
            }
            let v2 = e.opposite(v1);
            let m_e = e.gain_from(v1);
            if !gains[0].is_zero() || gains[1] != m_e {
                return Err(invalid("split edges must carry (0,0) and the split gain"));
            }
            let v3 = if mv.kind == MoveKind::H2a {
                let v3 = need(a.v3, "v3")?;
                g.check_vertex(v3)?;
                if v3 == v1 || v3 == v2 {
                    return Err(invalid("H2a needs a third vertex"));
                }
                v3
            } else {
                if gains[2] == m_e {
                    return Err(invalid("H2b needs the parallel gains to differ"));
                }
                v2
            };
            h.remove_edge(id)?;
            [(v1, gains[0]), (v2, gains[1]), (v3, gains[2])].into()
        }
        MoveKind::H2c => {
            let id = need(a.edge, "edge")?;
            let e = *g.edge(id)?;
            let v1 = need(a.v1, "v1")?;
            g.check_vertex(v1)?;
            if !e.is_loop() {
                return Err(invalid("H2c splits a loop"));
            }
            let d = gains[1] - gains[2];
            if d != e.gain && d != -e.gain {
                return Err(invalid("H2c gains must differ by the loop gain"));
            }
            // joined three times to the loop vertex: the edges must differ
            if v1 == e.tail && (gains[0] == gains[1] || gains[0] == gains[2]) {
                return Err(invalid("H2c back onto the loop vertex needs three different gains"));
            }
            h.remove_edge(id)?;
            [(v1, gains[0]), (e.tail, gains[1]), (e.tail, gains[2])].into()
        }
    };
    let v0 = h.add_vertex();
    for (w, m) in targets {
        h.add_edge(v0, w, m)?;
    }
    Ok(h)
}

/// The starting loop of a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseLoop {
    pub vertex: VertexId,
    pub gain: Gain,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstructionCertificate {
    pub base: BaseLoop,
    pub moves: Vec<Move>,
}

impl ConstructionCertificate {
    pub fn base_graph<M: GainValue>(&self) -> Result<OrbitGraph<M>> {
        if self.base.vertex != 0 {
            return Err(invalid("the base loop sits on vertex 0"));
        }
        let m = M::from_pair(self.base.gain).ok_or_else(|| invalid("base gain does not fit the gain group"))?;
        OrbitGraph::from_edges(1, [(0, 0, m)])
    }

    /// Every intermediate graph, base first.
    pub fn replay<M: GainValue>(&self) -> Result<Vec<OrbitGraph<M>>> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(self.base_graph()?);
        for mv in &self.moves {
            let next = apply_move(out.last().unwrap_or_else(|| unreachable!()), mv)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn build<M: GainValue>(&self) -> Result<OrbitGraph<M>> {
        let mut g = self.base_graph()?;
        for mv in &self.moves {
            g = apply_move(&g, mv)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::gains::is_tx_constructive;
    use crate::sparsity::is_p21;

    #[test]
    fn h1b_on_a_loop() {
        let h = apply_move(&loop_graph(g(1, 0)), &Move::h1b(0, g(0, 0), g(0, 1))).unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (2, 3));
        assert!(is_p21(&h));
        assert!(is_tx_constructive(&h).unwrap().satisfied);
        assert!(matches!(
            apply_move(&loop_graph(g(1, 0)), &Move::h1b(0, g(1, 1), g(1, 1))),
            Err(Error::InvalidMove(_))
        ));
    }

    #[test]
    fn h2a_gains_verbatim() {
        let base = bunny_ears([g(0, 0), g(0, 1)]);
        // split edge 3 (1 -> 2, gain (0,0)) read from vertex 2
        let mv = Move::h2a(3, 2, g(0, 0), 0, g(5, 7));
        let h = apply_move(&base, &mv).unwrap();
        assert_eq!(h.n_edges(), 7);
        let new: Vec<_> = h.edges()[4..].iter().map(|e| (e.tail, e.head, e.gain)).collect();
        assert_eq!(new, [(3, 2, g(0, 0)), (3, 1, g(0, 0)), (3, 0, g(5, 7))]);
        // edge 4 (1 -> 2, (0,1)) read from 2 has gain (0,-1)
        let h = apply_move(&base, &Move::h2a(4, 2, g(0, -1), 0, g(1, 0))).unwrap();
        assert_eq!(h.edges()[5].gain, g(0, -1));
        assert!(apply_move(&base, &Move::h2a(4, 2, g(0, 1), 0, g(1, 0))).is_err());
        assert!(apply_move(&base, &Move::h2a(4, 2, g(0, -1), 1, g(1, 0))).is_err());
    }

    #[test]
    fn h2b_and_h2c_constraints() {
        let k = k23([g(0, 0), g(1, 0), g(0, 1)]);
        assert!(apply_move(&k, &Move::h2b(0, 0, g(0, 0), g(0, 0))).is_err());
        let h = apply_move(&k, &Move::h2b(0, 0, g(0, 0), g(2, 0))).unwrap();
        assert_eq!(h.degree(2), 3);

        let l = loop_graph(g(1, 0));
        let h = apply_move(&l, &Move::h2c(0, 0, g(0, 1), g(1, 0), g(0, 0))).unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (2, 3));
        assert!(is_p21(&h));
        // a repeated gain would double an edge
        assert!(apply_move(&l, &Move::h2c(0, 0, g(0, 0), g(1, 0), g(0, 0))).is_err());
        assert!(apply_move(&l, &Move::h2c(0, 0, g(0, 0), g(2, 0), g(0, 0))).is_err());
        assert!(apply_move(&k, &Move::h2c(0, 0, g(0, 0), g(1, 0), g(0, 0))).is_err());
    }

    #[test]
    fn scalar_gains() {
        let l = OrbitGraph::from_edges(1, [(0, 0, 1i128)]).unwrap();
        assert!(apply_move(&l, &Move::h1b(0, g(0, 0), g(1, 0))).is_ok());
        assert!(apply_move(&l, &Move::h1b(0, g(0, 0), g(0, 1))).is_err());
    }

    #[test]
    fn replay_lists_every_stage() {
        let c = ConstructionCertificate {
            base: BaseLoop { vertex: 0, gain: g(1, 0) },
            moves: [Move::h1b(0, g(0, 0), g(0, 1)), Move::h1a(0, 1, g(0, 0), g(0, 0))].into(),
        };
        let stages = c.replay::<Gain>().unwrap();
        assert_eq!(stages.iter().map(|s| s.n_edges()).collect::<Vec<_>>(), [1, 3, 5]);
        assert_eq!(c.build::<Gain>().unwrap(), stages[2]);
    }
}
