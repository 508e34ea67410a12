//! Certificate replay and checking.

use alloc::collections::BTreeSet;
use core::fmt;

use super::iso::find_isomorphism;
use super::moves::{ConstructionCertificate, MoveKind};
use super::reduce::{p21_witness, rule_for, Witness};
use crate::error::{Error, Result};
use crate::gains::{scan, TorusModel};
use crate::graph::{GainValue, OrbitGraph};
use crate::sparsity::TreeMapDecomposition;
use crate::subsets::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    Base(Error),
    /// Move `index` (from 0) cannot be applied.
    Move { index: usize, error: Error },
    /// The graph after the first `after_moves` moves breaks an invariant.
    Invariant { after_moves: usize, witness: Witness },
    /// The replayed graph is not equivalent to the target.
    NotIsomorphic,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::Base(e) => write!(f, "base loop: {e}"),
            VerifyFailure::Move { index, error } => write!(f, "move {index}: {error}"),
            VerifyFailure::Invariant { after_moves, witness } => write!(f, "after {after_moves} moves: {witness}"),
            VerifyFailure::NotIsomorphic => f.write_str("replayed graph differs from the target"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub failure: Option<VerifyFailure>,
    /// Intermediate graphs above the brute-force bound were not checked.
    pub invariants_skipped: bool,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks an x-variable certificate against `target`.
pub fn verify_certificate<M: GainValue>(target: &OrbitGraph<M>, cert: &ConstructionCertificate) -> Verification {
    verify_certificate_with(target, cert, TorusModel::XVariable, &Limits::default())
}

/// Replays `cert`, checking each move's gain rules, P(2,1) and the model's
/// gain condition after every step, and equivalence with `target` at the end.
pub fn verify_certificate_with<M: GainValue>(
    target: &OrbitGraph<M>,
    cert: &ConstructionCertificate,
    model: TorusModel,
    limits: &Limits,
) -> Verification {
    let mut skipped = false;
    let fail = |failure, skipped| Verification { failure: Some(failure), invariants_skipped: skipped };
    let rule = match rule_for(model) {
        Ok((rule, _)) => rule,
        Err(e) => return fail(VerifyFailure::Base(e), false),
    };
    let mut g: OrbitGraph<M> = match cert.base_graph() {
        Ok(g) => g,
        Err(e) => return fail(VerifyFailure::Base(e), false),
    };
    for index in 0..=cert.moves.len() {
        if index > 0 {
            match super::moves::apply_move(&g, &cert.moves[index - 1]) {
                Ok(h) => g = h,
                Err(error) => return fail(VerifyFailure::Move { index: index - 1, error }, skipped),
            }
        }
        if let Some(witness) = p21_witness(&g, limits) {
            return fail(VerifyFailure::Invariant { after_moves: index, witness }, skipped);
        }
        match scan(&g, rule, 0, limits) {
            Ok(Some(w)) => {
                return fail(VerifyFailure::Invariant { after_moves: index, witness: Witness::Gain(w) }, skipped)
            }
            Ok(None) => {}
            Err(_) => skipped = true,
        }
    }
    if find_isomorphism(&g, target).is_none() {
        return fail(VerifyFailure::NotIsomorphic, skipped);
    }
    Verification { failure: None, invariants_skipped: skipped }
}

/// Tree + connected map decomposition of `target` carried along the
/// construction: the base loop starts the map, and each new vertex becomes
/// a leaf of both parts or subdivides the part holding the split edge.
pub fn tree_map_from_certificate<M: GainValue>(
    target: &OrbitGraph<M>,
    cert: &ConstructionCertificate,
) -> Result<TreeMapDecomposition> {
    let mut g: OrbitGraph<M> = cert.base_graph()?;
    // in_tree[e] for each edge of the current graph
    let mut in_tree = alloc::vec![false];
    for mv in &cert.moves {
        let h = super::moves::apply_move(&g, mv)?;
        let new = match mv.kind {
            MoveKind::H1a | MoveKind::H1b => [true, false].to_vec(),
            MoveKind::H2a | MoveKind::H2b => {
                let id = mv.anchors.edge.unwrap_or(0);
                let side = in_tree.remove(id);
                [side, side, !side].to_vec()
            }
            MoveKind::H2c => {
                in_tree.remove(mv.anchors.edge.unwrap_or(0));
                [true, false, false].to_vec()
            }
        };
        in_tree.extend(new);
        g = h;
    }
    let iso = find_isomorphism(&g, target).ok_or(Error::InvalidMove("certificate does not build the target".into()))?;
    let mut tree_edges = BTreeSet::new();
    let mut map_edges = BTreeSet::new();
    for (id, &t) in in_tree.iter().enumerate() {
        if t { &mut tree_edges } else { &mut map_edges }.insert(iso.edge_map[id]);
    }
    Ok(TreeMapDecomposition { tree_edges, map_edges })
}
