//! Henneberg moves, reduction to a single loop and the rigidity decision.

mod generate;
mod iso;
mod moves;
mod reduce;
mod verify;

pub use generate::{generate, generate_with, GAIN_RANGE};
pub use iso::{find_isomorphism, is_isomorphic, Isomorphism};
pub use moves::{apply_move, Anchors, BaseLoop, ConstructionCertificate, Move, MoveKind};
pub use reduce::{reduce, reduce_with, Witness, SEARCH_BUDGET};
pub use verify::{tree_map_from_certificate, verify_certificate, verify_certificate_with, Verification, VerifyFailure};

use reduce::{overbraced, p21_witness};
use crate::error::{Error, Result};
use crate::gains::{model_condition_with, scan, Rule, TorusModel};
use crate::graph::{GainValue, OrbitGraph};
use crate::sparsity::{is_sparse, SparsityParams};
use crate::subsets::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Generically minimally rigid. One-parameter tori come with a
    /// construction.
    Rigid { certificate: Option<ConstructionCertificate> },
    Flexible { witness: Witness },
    /// |E| differs from the rank of a minimally rigid framework.
    CountMismatch { vertices: usize, edges: usize, expected: usize },
}

impl Verdict {
    pub fn is_rigid(&self) -> bool {
        matches!(self, Verdict::Rigid { .. })
    }
}

/// Decides generic minimal rigidity of `g` on `model`.
pub fn decide<M: GainValue>(g: &OrbitGraph<M>, model: TorusModel) -> Result<Verdict> {
    decide_with(g, model, &Limits::default())
}

pub fn decide_with<M: GainValue>(g: &OrbitGraph<M>, model: TorusModel, limits: &Limits) -> Result<Verdict> {
    if M::ARITY != model.gain_arity() {
        return Err(Error::ArityMismatch(model.name()));
    }
    let (vertices, edges) = (g.n_vertices(), g.n_edges());
    let expected = model.full_rank(vertices);
    if edges != expected {
        return Ok(Verdict::CountMismatch { vertices, edges, expected });
    }
    let flexible = |witness| Ok(Verdict::Flexible { witness });
    match model {
        TorusModel::Fixed => {
            if !is_sparse(g, SparsityParams::new(2).unwrap_or_else(|| unreachable!())) {
                return flexible(overbraced(g, 2, limits));
            }
            match scan(g, Rule::Fixed, 0, limits)? {
                Some(w) => flexible(Witness::Gain(w)),
                None => Ok(Verdict::Rigid { certificate: None }),
            }
        }
        TorusModel::XVariable | TorusModel::YVariable | TorusModel::Cylinder => match reduce_with(g, model, limits) {
            Ok(cert) => Ok(Verdict::Rigid { certificate: Some(cert) }),
            Err(Error::NotReducible(w)) => flexible(*w),
            Err(e) => Err(e),
        },
        TorusModel::Angle => {
            if let Some(w) = p21_witness(g, limits) {
                return flexible(w);
            }
            match scan(g, Rule::Mixed, 0, limits)? {
                Some(w) => flexible(Witness::Gain(w)),
                None => Ok(Verdict::Rigid { certificate: None }),
            }
        }
        TorusModel::CircleFixed | TorusModel::CircleFlexible => {
            let verdict = model_condition_with(g, model, limits)?;
            match verdict.witness {
                Some(w) if w.generators.is_empty() => {
                    flexible(Witness::Disconnected { component: w.subset })
                }
                Some(w) => flexible(Witness::Gain(w)),
                None => Ok(Verdict::Rigid { certificate: None }),
            }
        }
    }
}
