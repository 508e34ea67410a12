//! JSON documents for orbit graphs and construction certificates.
//!
//! Graph documents look like
//! `{"model": "x-variable", "n": 3, "edges": [{"u": 0, "v": 1, "gain": [1, 2]}]}`;
//! models with ℤ gains (cylinder, circles) write each gain as `[m]`.
//! Serialization is canonical: keys in that order, edges in id order.

use prk_core::henneberg::{Anchors, BaseLoop, ConstructionCertificate, Move, MoveKind};
use prk_core::{Gain, GainValue, OrbitGraph, TorusModel};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("edge {edge}: gain has {got} components, the {model} model needs {want}")]
    GainArity { edge: usize, got: usize, want: usize, model: &'static str },
    #[error("edge {edge}: {source}")]
    Edge { edge: usize, source: prk_core::Error },
    #[error("move {index}: unknown kind {kind:?}")]
    UnknownMove { index: usize, kind: String },
    #[error("{0}")]
    Certificate(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub u: usize,
    pub v: usize,
    pub gain: Vec<i128>,
}

/// Rational placement used by `export-svg`; optional in graph documents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementDoc {
    pub positions: Vec<[f64; 2]>,
    /// Rows are the two lattice generators.
    pub lattice: [[f64; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub model: String,
    pub n: usize,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<PlacementDoc>,
}

/// A parsed graph with the gain type its model needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Pair(OrbitGraph<Gain>),
    Scalar(OrbitGraph<i128>),
}

impl AnyGraph {
    pub fn n_vertices(&self) -> usize {
        match self {
            AnyGraph::Pair(g) => g.n_vertices(),
            AnyGraph::Scalar(g) => g.n_vertices(),
        }
    }

    pub fn n_edges(&self) -> usize {
        match self {
            AnyGraph::Pair(g) => g.n_edges(),
            AnyGraph::Scalar(g) => g.n_edges(),
        }
    }

    /// Scalar gains as (m, 0).
    pub fn lifted(&self) -> OrbitGraph<Gain> {
        match self {
            AnyGraph::Pair(g) => g.clone(),
            AnyGraph::Scalar(g) => prk_core::gains::lift_cylinder(g),
        }
    }
}

fn build<M: GainValue>(doc: &GraphDoc, model: TorusModel) -> Result<OrbitGraph<M>, FormatError> {
    let mut g = OrbitGraph::new(doc.n);
    for (edge, e) in doc.edges.iter().enumerate() {
        let want = M::ARITY;
        if e.gain.len() != want {
            return Err(FormatError::GainArity { edge, got: e.gain.len(), want, model: model.name() });
        }
        let pair = Gain::new(e.gain[0], e.gain.get(1).copied().unwrap_or(0));
        let m = M::from_pair(pair).ok_or(FormatError::GainArity { edge, got: e.gain.len(), want, model: model.name() })?;
        g.add_edge(e.u, e.v, m).map_err(|source| FormatError::Edge { edge, source })?;
    }
    Ok(g)
}

impl GraphDoc {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn model(&self) -> Result<TorusModel, FormatError> {
        TorusModel::from_name(&self.model).ok_or_else(|| FormatError::UnknownModel(self.model.clone()))
    }

    /// The graph read with the gain arity of `model`.
    pub fn graph(&self, model: TorusModel) -> Result<AnyGraph, FormatError> {
        Ok(match model.gain_arity() {
            1 => AnyGraph::Scalar(build(self, model)?),
            _ => AnyGraph::Pair(build(self, model)?),
        })
    }

    pub fn from_graph<M: GainValue>(g: &OrbitGraph<M>, model: TorusModel) -> Self {
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeDoc { u: e.tail, v: e.head, gain: gain_vec(e.gain) })
            .collect();
        GraphDoc { model: model.name().to_owned(), n: g.n_vertices(), edges, placement: None }
    }

    pub fn from_any(g: &AnyGraph, model: TorusModel) -> Self {
        match g {
            AnyGraph::Pair(g) => Self::from_graph(g, model),
            AnyGraph::Scalar(g) => Self::from_graph(g, model),
        }
    }

    pub fn to_json(&self) -> String {
        // plain data, cannot fail
        serde_json::to_string_pretty(self).unwrap_or_default()
    }
}

fn gain_vec<M: GainValue>(m: M) -> Vec<i128> {
    if M::ARITY == 1 {
        vec![m.x()]
    } else {
        vec![m.x(), m.y()]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v3: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveDoc {
    pub kind: String,
    pub anchors: AnchorsDoc,
    pub gains: Vec<Vec<i128>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub vertex: usize,
    pub gain: Vec<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub base: BaseDoc,
    pub moves: Vec<MoveDoc>,
}

fn pair_vec(m: Gain, arity: usize) -> Vec<i128> {
    if arity == 1 {
        vec![m.x]
    } else {
        vec![m.x, m.y]
    }
}

fn vec_pair(v: &[i128], what: &str) -> Result<Gain, FormatError> {
    match v {
        [x] => Ok(Gain::new(*x, 0)),
        [x, y] => Ok(Gain::new(*x, *y)),
        _ => Err(FormatError::Certificate(format!("{what}: a gain has one or two components"))),
    }
}

impl CertificateDoc {
    /// Gains are written with `arity` components.
    pub fn from_certificate(cert: &ConstructionCertificate, arity: usize) -> Self {
        let moves = cert
            .moves
            .iter()
            .map(|mv| MoveDoc {
                kind: mv.kind.name().to_owned(),
                anchors: AnchorsDoc {
                    v1: mv.anchors.v1,
                    v2: mv.anchors.v2,
                    v3: mv.anchors.v3,
                    edge: mv.anchors.edge,
                },
                gains: mv.gains.iter().map(|&m| pair_vec(m, arity)).collect(),
            })
            .collect();
        CertificateDoc { base: BaseDoc { vertex: cert.base.vertex, gain: pair_vec(cert.base.gain, arity) }, moves }
    }

    pub fn certificate(&self) -> Result<ConstructionCertificate, FormatError> {
        let base = BaseLoop { vertex: self.base.vertex, gain: vec_pair(&self.base.gain, "base")? };
        let mut moves = Vec::with_capacity(self.moves.len());
        for (index, m) in self.moves.iter().enumerate() {
            let kind = MoveKind::from_name(&m.kind)
                .ok_or_else(|| FormatError::UnknownMove { index, kind: m.kind.clone() })?;
            let gains = m
                .gains
                .iter()
                .map(|g| vec_pair(g, &format!("move {index}")))
                .collect::<Result<Vec<_>, _>>()?;
            let a = &m.anchors;
            let anchors = Anchors { v1: a.v1, v2: a.v2, v3: a.v3, edge: a.edge };
            moves.push(Move { kind, anchors, gains });
        }
        Ok(ConstructionCertificate { base, moves })
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }
}
