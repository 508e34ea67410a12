//! Gain conditions for each torus model.
//!
//! All checks run over induced vertex subsets. For an over-critical set S
//! the (2,2)-tight subgraphs on S are G[S] − e for each induced edge e, so
//! those are checked separately.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Gain, GainValue, OrbitGraph};
use crate::sparsity::{is_p21, is_sparse, SparsityParams};
use crate::subsets::{cycle_generators, mask_to_set, set_to_mask, subsets_desc, EdgeMasks, Limits, VertexSet};
use crate::tgain::gain_group;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TorusModel {
    Fixed,
    XVariable,
    YVariable,
    /// Flexible angle between the two generators.
    Angle,
    /// Variable cylinder: one period, ℤ gains.
    Cylinder,
    CircleFixed,
    CircleFlexible,
}

impl TorusModel {
    pub const ALL: [TorusModel; 7] = [
        TorusModel::Fixed,
        TorusModel::XVariable,
        TorusModel::YVariable,
        TorusModel::Angle,
        TorusModel::Cylinder,
        TorusModel::CircleFixed,
        TorusModel::CircleFlexible,
    ];

    /// Name used in orbit-graph documents.
    pub fn name(self) -> &'static str {
        match self {
            TorusModel::Fixed => "fixed",
            TorusModel::XVariable => "x-variable",
            TorusModel::YVariable => "y-variable",
            TorusModel::Angle => "angle",
            TorusModel::Cylinder => "cylinder",
            TorusModel::CircleFixed => "circle-fixed",
            TorusModel::CircleFlexible => "circle-flexible",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    /// Components per gain.
    pub fn gain_arity(self) -> usize {
        match self {
            TorusModel::Cylinder | TorusModel::CircleFixed | TorusModel::CircleFlexible => 1,
            _ => 2,
        }
    }

    /// Coordinates per vertex position.
    pub fn position_dim(self) -> usize {
        match self {
            TorusModel::CircleFixed | TorusModel::CircleFlexible => 1,
            _ => 2,
        }
    }

    pub fn has_lattice_column(self) -> bool {
        !matches!(self, TorusModel::Fixed | TorusModel::CircleFixed)
    }

    /// Rank of the rigidity matrix of a rigid framework on `n` vertices.
    pub fn full_rank(self, n: usize) -> usize {
        let cols = self.position_dim() * n + usize::from(self.has_lattice_column());
        cols.saturating_sub(self.position_dim())
    }
}

impl fmt::Display for TorusModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The property a witness subgraph lacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// A cycle with non-zero net gain.
    Constructive,
    /// A cycle whose net gain has non-zero first coordinate.
    XConstructive,
    /// A cycle whose net gain has non-zero second coordinate.
    YConstructive,
    /// Cycles with non-zero first and non-zero second coordinate, possibly
    /// different cycles.
    Mixed,
    Connected,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Constructive => "constructive",
            Condition::XConstructive => "x-constructive",
            Condition::YConstructive => "y-constructive",
            Condition::Mixed => "mixed",
            Condition::Connected => "connected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainWitness {
    pub subset: VertexSet,
    /// Cycle-space generators of the offending subgraph.
    pub generators: Vec<Gain>,
    /// Set when the offending subgraph is G[subset] minus this edge.
    pub removed_edge: Option<EdgeId>,
    pub condition: Condition,
}

impl fmt::Display for GainWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subgraph on {:?}", self.subset)?;
        if let Some(e) = self.removed_edge {
            write!(f, " minus edge {e}")?;
        }
        write!(f, " is not {} (generators [", self.condition)?;
        for (i, m) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("])")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainVerdict {
    pub satisfied: bool,
    pub witness: Option<GainWitness>,
}

impl GainVerdict {
    pub fn ok() -> Self {
        GainVerdict { satisfied: true, witness: None }
    }

    pub fn fail(witness: GainWitness) -> Self {
        GainVerdict { satisfied: false, witness: Some(witness) }
    }

    fn from_witness(w: Option<GainWitness>) -> Self {
        match w {
            Some(w) => Self::fail(w),
            None => Self::ok(),
        }
    }
}

/// What an over-critical set must contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rule {
    /// No over-critical sets are expected.
    Fixed,
    Axis(Condition),
    Mixed,
}

impl Rule {
    pub(crate) fn for_model(model: TorusModel) -> Self {
        match model {
            TorusModel::Fixed => Rule::Fixed,
            TorusModel::YVariable => Rule::Axis(Condition::YConstructive),
            TorusModel::Angle => Rule::Mixed,
            _ => Rule::Axis(Condition::XConstructive),
        }
    }
}

fn condition_holds<M: GainValue>(condition: Condition, gens: &[M]) -> bool {
    match condition {
        Condition::Constructive => gens.iter().any(|m| !m.is_zero()),
        Condition::XConstructive => gens.iter().any(|m| m.x() != 0),
        Condition::YConstructive => gens.iter().any(|m| m.y() != 0),
        Condition::Mixed => gens.iter().any(|m| m.x() != 0) && gens.iter().any(|m| m.y() != 0),
        Condition::Connected => true,
    }
}

/// First failing subset containing `required`, scanning masks downwards so
/// that the whole vertex set comes first.
pub(crate) fn scan<M: GainValue>(
    g: &OrbitGraph<M>,
    rule: Rule,
    required: u64,
    limits: &Limits,
) -> Result<Option<GainWitness>> {
    limits.check(g.n_vertices())?;
    let masks = EdgeMasks::new(g);
    let witness = |s: u64, gens: Vec<M>, removed_edge, condition| GainWitness {
        subset: mask_to_set(s),
        generators: gens.into_iter().map(GainValue::to_pair).collect(),
        removed_edge,
        condition,
    };
    for s in subsets_desc(g.n_vertices()).filter(|s| s & required == required) {
        let i = masks.induced_count(s);
        let budget = 2 * s.count_ones() as usize;
        if i == 0 || i + 2 < budget {
            continue;
        }
        let gens = cycle_generators(g, &masks, s, None);
        if i + 2 == budget {
            if !condition_holds(Condition::Constructive, &gens) {
                return Ok(Some(witness(s, gens, None, Condition::Constructive)));
            }
            continue;
        }
        let cond = match rule {
            Rule::Fixed => continue,
            Rule::Axis(c) => c,
            Rule::Mixed => Condition::Mixed,
        };
        if !condition_holds(cond, &gens) {
            return Ok(Some(witness(s, gens, None, cond)));
        }
        // a lone loop leaves the empty subgraph behind
        for e in masks.induced_edges(s).filter(|_| i > 1) {
            let sub = cycle_generators(g, &masks, s, Some(e));
            if !condition_holds(Condition::Constructive, &sub) {
                return Ok(Some(witness(s, sub, Some(e), Condition::Constructive)));
            }
        }
    }
    Ok(None)
}

/// Every (2,2)-tight subgraph has a cycle with non-zero net gain.
pub fn is_constructive<M: GainValue>(g: &OrbitGraph<M>) -> Result<GainVerdict> {
    is_constructive_with(g, &Limits::default())
}

pub fn is_constructive_with<M: GainValue>(g: &OrbitGraph<M>, limits: &Limits) -> Result<GainVerdict> {
    if !is_sparse(g, SparsityParams::new(2).unwrap_or_else(|| unreachable!())) {
        return Err(Error::NotSparse { ell: 2 });
    }
    Ok(GainVerdict::from_witness(scan(g, Rule::Fixed, 0, limits)?))
}

/// Whether the connected subgraph induced by `subset` has a cycle whose net
/// gain has non-zero first coordinate.
pub fn is_x_constructive<M: GainValue>(g: &OrbitGraph<M>, subset: &VertexSet) -> Result<bool> {
    Ok(gain_group(g, subset)?.is_x_nontrivial())
}

/// Every (2,2)-tight subgraph is constructive and every (2,1)-tight
/// subgraph is x-constructive.
pub fn is_tx_constructive<M: GainValue>(g: &OrbitGraph<M>) -> Result<GainVerdict> {
    is_tx_constructive_with(g, &Limits::default())
}

pub fn is_tx_constructive_with<M: GainValue>(g: &OrbitGraph<M>, limits: &Limits) -> Result<GainVerdict> {
    limits.check(g.n_vertices())?;
    if !is_p21(g) {
        return Err(Error::NotP21);
    }
    Ok(GainVerdict::from_witness(scan(g, Rule::Axis(Condition::XConstructive), 0, limits)?))
}

/// As [`is_tx_constructive_with`] but only over subsets containing every
/// vertex of `required`, and without the P(2,1) check.
pub fn tx_witness_containing<M: GainValue>(
    g: &OrbitGraph<M>,
    model: TorusModel,
    required: &VertexSet,
    limits: &Limits,
) -> Result<Option<GainWitness>> {
    let mask = set_to_mask(required, g.n_vertices())?;
    scan(g, Rule::for_model(model), mask, limits)
}

/// The gain condition of `model`, with the sparsity precondition it needs.
pub fn model_condition<M: GainValue>(g: &OrbitGraph<M>, model: TorusModel) -> Result<GainVerdict> {
    model_condition_with(g, model, &Limits::default())
}

pub fn model_condition_with<M: GainValue>(
    g: &OrbitGraph<M>,
    model: TorusModel,
    limits: &Limits,
) -> Result<GainVerdict> {
    if M::ARITY != model.gain_arity() {
        return Err(Error::ArityMismatch(model.name()));
    }
    match model {
        TorusModel::Fixed => is_constructive_with(g, limits),
        TorusModel::XVariable => is_tx_constructive_with(g, limits),
        // scalar gains read as their first coordinate, so the cylinder
        // runs the x-variable scan without lifting
        TorusModel::YVariable | TorusModel::Angle | TorusModel::Cylinder => {
            limits.check(g.n_vertices())?;
            if !is_p21(g) {
                return Err(Error::NotP21);
            }
            Ok(GainVerdict::from_witness(scan(g, Rule::for_model(model), 0, limits)?))
        }
        TorusModel::CircleFixed | TorusModel::CircleFlexible => {
            let all: VertexSet = (0..g.n_vertices()).collect();
            let components = g.components();
            if components.len() > 1 {
                return Ok(GainVerdict::fail(GainWitness {
                    subset: components[0].iter().copied().collect(),
                    generators: Vec::new(),
                    removed_edge: None,
                    condition: Condition::Connected,
                }));
            }
            if model == TorusModel::CircleFixed || all.is_empty() {
                return Ok(GainVerdict::ok());
            }
            let group = gain_group(g, &all)?;
            if group.is_nontrivial() {
                Ok(GainVerdict::ok())
            } else {
                Ok(GainVerdict::fail(GainWitness {
                    subset: all,
                    generators: group.generators.into_iter().map(GainValue::to_pair).collect(),
                    removed_edge: None,
                    condition: Condition::Constructive,
                }))
            }
        }
    }
}

/// Lifts ℤ gains to ℤ² by m ↦ (m, 0).
pub fn lift_cylinder(g: &OrbitGraph<i128>) -> OrbitGraph<Gain> {
    g.map_gains(|m| Gain::new(m, 0))
}
