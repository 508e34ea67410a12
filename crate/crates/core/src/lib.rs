//! Generic rigidity of periodic orbit frameworks on partially variable tori.
//!
//! A periodic framework is described by its finite quotient: a directed
//! multigraph whose edges carry integer gains ([`OrbitGraph`]). This crate
//! decides generic minimal rigidity of such gain graphs on the fixed torus,
//! the x- and y-variable tori, the flexible-angle torus, the variable
//! cylinder and the fixed/flexible circle. For the one-parameter tori the
//! decision comes with a Henneberg construction certificate, and every
//! combinatorial answer can be cross-checked against the exact rank of the
//! rigidity matrix at random rational placements.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod derived;
#[cfg(test)]
mod fixtures;
pub mod error;
pub mod gains;
pub mod graph;
pub mod henneberg;
pub mod linear;
pub mod sparsity;
pub mod subsets;
pub mod tgain;

pub use error::{Error, Result};
pub use gains::{GainVerdict, TorusModel};
pub use graph::{Direction, Edge, EdgeId, Gain, GainValue, OrbitGraph, VertexId};
pub use henneberg::{ConstructionCertificate, Move, MoveKind, Verdict};
pub use linear::{Placement, RigidityMatrix};
pub use subsets::{Limits, VertexSet};
pub use tgain::{GainGroup, TGainTable};
