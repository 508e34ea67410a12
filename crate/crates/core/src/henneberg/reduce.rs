//! Inverse Henneberg moves down to a single loop.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::iso::{find_isomorphism, Isomorphism};
use super::moves::{apply_move, Anchors, BaseLoop, ConstructionCertificate, Move, MoveKind};
use crate::error::{Error, Result};
use crate::gains::{scan, Condition, GainWitness, Rule, TorusModel};
use crate::graph::{Gain, GainValue, OrbitGraph, VertexId};
use crate::sparsity::{is_p21, p21_tight};
use crate::subsets::{mask_to_set, subsets_desc, EdgeMasks, Limits, VertexSet};

/// Why a graph is not generically minimally rigid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Count { vertices: usize, edges: usize, expected: usize },
    Disconnected { component: VertexSet },
    /// A vertex set inducing more than 2|S| − ell edges; `None` when the
    /// graph is too large to search for one.
    Overbraced { subset: Option<VertexSet>, i_count: usize, ell: u8 },
    /// (2,1)-tight, but no edge deletion leaves a (2,2)-tight graph.
    NoCircuit,
    Gain(GainWitness),
    /// Every inverse move sequence was tried above the brute-force bound.
    Exhausted,
    /// No inverse move keeps the invariants although the graph has them.
    Stuck { vertices: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Count { vertices, edges, expected } => {
                write!(f, "{edges} edges on {vertices} vertices, expected {expected}")
            }
            Witness::Disconnected { component } => write!(f, "disconnected, component {component:?}"),
            Witness::Overbraced { subset: Some(s), i_count, ell } => {
                write!(f, "{s:?} induces {i_count} edges, more than 2|S| - {ell}")
            }
            Witness::Overbraced { subset: None, ell, .. } => write!(f, "not (2,{ell})-sparse"),
            Witness::NoCircuit => f.write_str("no edge leaves a (2,2)-tight graph"),
            Witness::Gain(w) => write!(f, "{w}"),
            Witness::Exhausted => f.write_str("no inverse move sequence reaches a single loop"),
            Witness::Stuck { vertices } => write!(f, "no admissible inverse move at {vertices} vertices"),
        }
    }
}

/// First vertex set breaking (2,ell)-sparsity, smallest mask first.
pub(crate) fn overbraced<M: GainValue>(g: &OrbitGraph<M>, ell: u8, limits: &Limits) -> Witness {
    if limits.check(g.n_vertices()).is_ok() {
        let masks = EdgeMasks::new(g);
        let mut all: Vec<u64> = subsets_desc(g.n_vertices()).collect();
        all.reverse();
        for s in all {
            let i = masks.induced_count(s);
            if i + usize::from(ell) > 2 * s.count_ones() as usize {
                return Witness::Overbraced { subset: Some(mask_to_set(s)), i_count: i, ell };
            }
        }
    }
    Witness::Overbraced { subset: None, i_count: g.n_edges(), ell }
}

/// Why `g` is not P(2,1), or `None` if it is.
pub(crate) fn p21_witness<M: GainValue>(g: &OrbitGraph<M>, limits: &Limits) -> Option<Witness> {
    let expected = (2 * g.n_vertices()).saturating_sub(1);
    if g.n_vertices() == 0 || g.n_edges() != expected {
        return Some(Witness::Count { vertices: g.n_vertices(), edges: g.n_edges(), expected });
    }
    let comps = g.components();
    if comps.len() > 1 {
        return Some(Witness::Disconnected { component: comps[0].iter().copied().collect() });
    }
    if !p21_tight(g) {
        return Some(overbraced(g, 1, limits));
    }
    (!is_p21(g)).then_some(Witness::NoCircuit)
}

pub(crate) fn rule_for(model: TorusModel) -> Result<(Rule, Condition)> {
    match model {
        TorusModel::XVariable | TorusModel::Cylinder => {
            Ok((Rule::Axis(Condition::XConstructive), Condition::XConstructive))
        }
        TorusModel::YVariable => Ok((Rule::Axis(Condition::YConstructive), Condition::YConstructive)),
        _ => Err(Error::UnsupportedModel(model.name())),
    }
}

fn loop_ok<M: GainValue>(m: M, cond: Condition) -> bool {
    match cond {
        Condition::YConstructive => m.y() != 0,
        _ => m.x() != 0,
    }
}

/// An inverse move at `v0`: the smaller graph and the forward move that
/// rebuilds the current one up to switching at `v0`.
pub(crate) struct Inverse<M> {
    pub result: OrbitGraph<M>,
    pub forward: Move,
    /// Vertices of `result` every new subset to check contains.
    pub required: VertexSet,
}

fn shift(v0: VertexId) -> impl Fn(VertexId) -> VertexId {
    move |w| if w > v0 { w - 1 } else { w }
}

/// Neighbour and gain read from `v0`, for each edge at `v0` in id order;
/// `None` if `v0` carries a loop.
fn spokes<M: GainValue>(g: &OrbitGraph<M>, v0: VertexId) -> Option<Vec<(VertexId, M)>> {
    let mut out = Vec::new();
    for id in g.incident_edges(v0) {
        let e = &g.edges()[id];
        if e.is_loop() {
            return None;
        }
        out.push((e.opposite(v0), e.gain_from(v0)));
    }
    Some(out)
}

fn without<M: GainValue>(g: &OrbitGraph<M>, v0: VertexId) -> OrbitGraph<M> {
    let mut h = g.clone();
    // v0 is a vertex of g
    let _ = h.remove_vertex(v0);
    h
}

fn h1<M: GainValue>(g: &OrbitGraph<M>, v0: VertexId) -> Option<Inverse<M>> {
    let s = spokes(g, v0)?;
    let [(a, ga), (b, gb)] = s[..] else { return None };
    let sh = shift(v0);
    let forward = if a != b {
        Move::h1a(sh(a), sh(b), ga.to_pair(), gb.to_pair())
    } else if ga != gb {
        Move::h1b(sh(a), ga.to_pair(), gb.to_pair())
    } else {
        return None;
    };
    Some(Inverse { result: without(g, v0), forward, required: VertexSet::new() })
}

/// Inverse H2a/H2b at a 3-valent `v0`, in (i, j, gain) order of the new edge.
fn h2ab<M: GainValue>(g: &OrbitGraph<M>, v0: VertexId) -> Vec<Inverse<M>> {
    let Some(s) = spokes(g, v0) else { return Vec::new() };
    if s.len() != 3 {
        return Vec::new();
    }
    let sh = shift(v0);
    let mut found: Vec<((VertexId, VertexId, M), Inverse<M>)> = Vec::new();
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let ((a, gi), (b, gj), (c, gk)) = (s[i], s[j], s[k]);
        if a == b {
            continue;
        }
        // new edge read from the smaller end
        let key = if a < b { (a, b, gj - gi) } else { (b, a, gi - gj) };
        if found.iter().any(|(k2, _)| *k2 == key) {
            continue;
        }
        let mut result = without(g, v0);
        let edge = result.add_edge(sh(key.0), sh(key.1), key.2).unwrap_or_else(|_| unreachable!());
        let forward = if c != a && c != b {
            Move::h2a(edge, sh(a), (gj - gi).to_pair(), sh(c), (gk - gi).to_pair())
        } else if c == b {
            if gk == gj {
                continue;
            }
            Move::h2b(edge, sh(a), (gj - gi).to_pair(), (gk - gi).to_pair())
        } else {
            if gk == gi {
                continue;
            }
            Move::h2b(edge, sh(b), (gi - gj).to_pair(), (gk - gj).to_pair())
        };
        let required = VertexSet::from([sh(a), sh(b)]);
        found.push((key, Inverse { result, forward, required }));
    }
    found.sort_by_key(|x| x.0);
    found.into_iter().map(|(_, inv)| inv).collect()
}

/// Inverse H2c at a 3-valent `v0` with two edges to one vertex.
fn h2c<M: GainValue>(g: &OrbitGraph<M>, v0: VertexId) -> Vec<Inverse<M>> {
    let Some(s) = spokes(g, v0) else { return Vec::new() };
    if s.len() != 3 {
        return Vec::new();
    }
    let sh = shift(v0);
    let mut out: Vec<Inverse<M>> = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, i, j) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let ((v1, g0), (v2, g1), (w, g2)) = (s[k], s[i], s[j]);
        if v2 != w || g1 == g2 || (v1 == v2 && (g0 == g1 || g0 == g2)) {
            continue;
        }
        let lg = (g1 - g2).max(g2 - g1);
        if !seen.insert((v2, lg)) {
            continue;
        }
        let mut result = without(g, v0);
        let edge = result.add_edge(sh(v2), sh(v2), g1 - g2).unwrap_or_else(|_| unreachable!());
        let forward = Move::h2c(edge, sh(v1), g0.to_pair(), g1.to_pair(), g2.to_pair());
        out.push(Inverse { result, forward, required: VertexSet::from([sh(v2)]) });
    }
    out
}

/// All inverse moves in the order they are tried: degree-2 vertices, then
/// edge splits at degree-3 vertices, then loop splits.
pub(crate) fn inverse_moves<M: GainValue>(g: &OrbitGraph<M>) -> Vec<Inverse<M>> {
    let n = g.n_vertices();
    let mut out: Vec<Inverse<M>> = (0..n).filter(|&v| g.degree(v) == 2).filter_map(|v| h1(g, v)).collect();
    let cubic: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    out.extend(cubic.iter().flat_map(|&v| h2ab(g, v)));
    out.extend(cubic.iter().flat_map(|&v| h2c(g, v)));
    out
}

/// Whether the smaller graph keeps P(2,1) and the gain condition, given
/// that the current graph has both.
pub(crate) fn admissible<M: GainValue>(inv: &Inverse<M>, rule: Rule, limits: &Limits) -> Result<bool> {
    if !is_p21(&inv.result) {
        return Ok(false);
    }
    if inv.required.is_empty() {
        return Ok(true);
    }
    let mask = crate::subsets::set_to_mask(&inv.required, inv.result.n_vertices())?;
    Ok(scan(&inv.result, rule, mask, limits)?.is_none())
}

/// Largest number of graphs visited by the search above the brute-force
/// bound.
pub const SEARCH_BUDGET: usize = 20_000;

/// A construction certificate for an x-variable P(2,1)-graph.
pub fn reduce<M: GainValue>(g: &OrbitGraph<M>) -> Result<ConstructionCertificate> {
    reduce_with(g, TorusModel::XVariable, &Limits::default())
}

/// Reduces `g` to a single loop. Within the brute-force bound every step is
/// re-verified and the first admissible inverse move is taken. Above it the
/// gain conditions are not enumerated; instead every inverse move sequence
/// through P(2,1)-graphs is searched, which is exact but exponential in the
/// worst case, and gives up with `BoundExceeded` after [`SEARCH_BUDGET`] graphs.
pub fn reduce_with<M: GainValue>(
    g: &OrbitGraph<M>,
    model: TorusModel,
    limits: &Limits,
) -> Result<ConstructionCertificate> {
    let (rule, cond) = rule_for(model)?;
    if let Some(w) = p21_witness(g, limits) {
        return Err(Error::NotReducible(w.into()));
    }
    if limits.check(g.n_vertices()).is_err() {
        let mut budget = SEARCH_BUDGET;
        let mut steps = Vec::new();
        return match search(g, cond, &mut budget, &mut steps) {
            Some(base) => certificate(base, steps),
            None if budget == 0 => Err(Error::BoundExceeded { n: g.n_vertices(), bound: limits.brute_force_bound }),
            None => Err(Error::NotReducible(Witness::Exhausted.into())),
        };
    }
    if let Some(w) = scan(g, rule, 0, limits)? {
        return Err(Error::NotReducible(Witness::Gain(w).into()));
    }
    let mut current = g.clone();
    let mut steps = Vec::new();
    while current.n_vertices() > 1 {
        let mut next = None;
        for inv in inverse_moves(&current) {
            if admissible(&inv, rule, limits)? {
                next = Some(inv);
                break;
            }
        }
        let Some(inv) = next else {
            return Err(Error::NotReducible(Witness::Stuck { vertices: current.n_vertices() }.into()));
        };
        steps.push((inv.forward, inv.result.clone()));
        current = inv.result;
    }
    let base = current.edges()[0].gain;
    if !loop_ok(base, cond) {
        return Err(Error::NotReducible(Witness::Stuck { vertices: 1 }.into()));
    }
    steps.reverse();
    certificate(base, steps)
}

/// Assembles the certificate from forward moves in construction order, each
/// paired with the graph it was read off. Replayed graphs only agree with
/// those up to relabelling and switching, so every move is carried over to
/// the replayed graph through an isomorphism.
fn certificate<M: GainValue>(base: M, steps: Vec<(Move, OrbitGraph<M>)>) -> Result<ConstructionCertificate> {
    let mut cert = ConstructionCertificate { base: BaseLoop { vertex: 0, gain: base.to_pair() }, moves: Vec::new() };
    let mut g: OrbitGraph<M> = cert.base_graph()?;
    for (mv, frame) in steps {
        let iso = find_isomorphism(&frame, &g)
            .ok_or_else(|| Error::InvalidMove("replayed graph lost track of the reduction".into()))?;
        let mv = translate(&mv, &frame, &iso, &g)?;
        g = apply_move(&g, &mv)?;
        cert.moves.push(mv);
    }
    Ok(cert)
}

/// `mv` read on `frame`, rewritten for `target` = iso(`frame`). The new
/// vertex gets potential pot(v1) for edge splits and 0 otherwise.
fn translate<M: GainValue>(mv: &Move, frame: &OrbitGraph<M>, iso: &Isomorphism<M>, target: &OrbitGraph<M>) -> Result<Move> {
    let a = &mv.anchors;
    let vmap = |v: Option<VertexId>| v.map(|v| iso.vertex_map[v]);
    let pot = |v: VertexId| iso.potentials[v];
    let lift = |m| M::from_pair(m).ok_or_else(|| Error::InvalidMove("gain does not fit the gain group".into()));
    let mut out = Move {
        kind: mv.kind,
        anchors: Anchors { v1: vmap(a.v1), v2: vmap(a.v2), v3: vmap(a.v3), edge: a.edge.map(|e| iso.edge_map[e]) },
        gains: Vec::with_capacity(3),
    };
    match mv.kind {
        MoveKind::H1a | MoveKind::H1b => {
            let v1 = a.v1.unwrap_or(0);
            let v2 = a.v2.unwrap_or(v1);
            out.gains.push((lift(mv.gains[0])? - pot(v1)).to_pair());
            out.gains.push((lift(mv.gains[1])? - pot(v2)).to_pair());
        }
        MoveKind::H2a | MoveKind::H2b => {
            let (id, v1) = (a.edge.unwrap_or(0), a.v1.unwrap_or(0));
            let e = frame.edge(id)?;
            let v3 = if mv.kind == MoveKind::H2a { a.v3.unwrap_or(0) } else { e.opposite(v1) };
            let e2 = target.edge(iso.edge_map[id])?;
            let m_e = e2.gain_from(iso.vertex_map[v1]);
            let m03 = pot(v1) + lift(mv.gains[2])? - pot(v3);
            out.gains.extend([Gain::ZERO, m_e.to_pair(), m03.to_pair()]);
        }
        MoveKind::H2c => {
            let (id, v1) = (a.edge.unwrap_or(0), a.v1.unwrap_or(0));
            let v2 = frame.edge(id)?.tail;
            out.gains.push((lift(mv.gains[0])? - pot(v1)).to_pair());
            out.gains.push((lift(mv.gains[1])? - pot(v2)).to_pair());
            out.gains.push((lift(mv.gains[2])? - pot(v2)).to_pair());
        }
    }
    Ok(out)
}

/// Depth-first search through P(2,1)-graphs. On success `steps` holds the
/// forward moves in construction order and the base loop gain is returned.
fn search<M: GainValue>(
    g: &OrbitGraph<M>,
    cond: Condition,
    budget: &mut usize,
    steps: &mut Vec<(Move, OrbitGraph<M>)>,
) -> Option<M> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if g.n_vertices() == 1 {
        let m = g.edges()[0].gain;
        return loop_ok(m, cond).then_some(m);
    }
    for inv in inverse_moves(g) {
        if !is_p21(&inv.result) {
            continue;
        }
        if let Some(base) = search(&inv.result, cond, budget, steps) {
            steps.push((inv.forward, inv.result));
            return Some(base);
        }
        if *budget == 0 {
            return None;
        }
    }
    None
}
