//! Random constructions by forward moves.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::moves::{apply_move, BaseLoop, ConstructionCertificate, Move, MoveKind};
use super::reduce::rule_for;
use crate::error::{Error, Result};
use crate::gains::{scan, Condition, TorusModel};
use crate::graph::{Gain, GainValue, OrbitGraph};
use crate::sparsity::is_p21;
use crate::subsets::Limits;

/// Gains of new edges are drawn from [−GAIN_RANGE, GAIN_RANGE]².
pub const GAIN_RANGE: i128 = 2;

/// Attempts per step before the generator gives up on a move.
const ATTEMPTS: usize = 200;

struct Gen {
    rng: ChaCha8Rng,
    scalar: bool,
}

impl Gen {
    fn gain(&mut self) -> Gain {
        let x = self.rng.gen_range(-GAIN_RANGE..=GAIN_RANGE);
        let y = if self.scalar { 0 } else { self.rng.gen_range(-GAIN_RANGE..=GAIN_RANGE) };
        Gain::new(x, y)
    }

    fn other_gain(&mut self, not: Gain) -> Gain {
        loop {
            let m = self.gain();
            if m != not {
                return m;
            }
        }
    }

    fn random_move<M: GainValue>(&mut self, g: &OrbitGraph<M>) -> Option<Move> {
        let n = g.n_vertices();
        let loops: Vec<usize> = (0..g.n_edges()).filter(|&id| g.edges()[id].is_loop()).collect();
        let plain: Vec<usize> = (0..g.n_edges()).filter(|&id| !g.edges()[id].is_loop()).collect();
        let mut kinds = Vec::from([MoveKind::H1b]);
        if n >= 2 {
            kinds.push(MoveKind::H1a);
        }
        if !plain.is_empty() {
            kinds.push(MoveKind::H2b);
            if n >= 3 {
                kinds.push(MoveKind::H2a);
            }
        }
        if !loops.is_empty() {
            kinds.push(MoveKind::H2c);
        }
        let kind = *kinds.choose(&mut self.rng)?;
        let rng = &mut self.rng;
        let vertex = |rng: &mut ChaCha8Rng| rng.gen_range(0..n);
        Some(match kind {
            MoveKind::H1a => {
                let v1 = vertex(rng);
                let v2 = (v1 + rng.gen_range(1..n)) % n;
                let (a, b) = (self.gain(), self.gain());
                Move::h1a(v1, v2, a, b)
            }
            MoveKind::H1b => {
                let v1 = vertex(rng);
                let a = self.gain();
                Move::h1b(v1, a, self.other_gain(a))
            }
            MoveKind::H2a | MoveKind::H2b => {
                let id = *plain.choose(rng)?;
                let e = g.edges()[id];
                let v1 = if rng.gen_bool(0.5) { e.tail } else { e.head };
                let v2 = e.opposite(v1);
                let m_e = e.gain_from(v1).to_pair();
                if kind == MoveKind::H2a {
                    let others: Vec<usize> = (0..n).filter(|&w| w != v1 && w != v2).collect();
                    let v3 = *others.choose(rng)?;
                    Move::h2a(id, v1, m_e, v3, self.gain())
                } else {
                    Move::h2b(id, v1, m_e, self.other_gain(m_e))
                }
            }
            MoveKind::H2c => {
                let id = *loops.choose(rng)?;
                let l = g.edges()[id].gain.to_pair();
                let v1 = vertex(rng);
                let sign = if rng.gen_bool(0.5) { l } else { -l };
                let (m0, m1) = (self.gain(), self.gain());
                Move::h2c(id, v1, m0, m1, m1 - sign)
            }
        })
    }
}

/// A random generically minimally rigid graph on `n` vertices for the x-
/// or y-variable torus or the variable cylinder, with its construction.
pub fn generate<M: GainValue>(n: usize, seed: u64, model: TorusModel) -> Result<(OrbitGraph<M>, ConstructionCertificate)> {
    generate_with(n, seed, model, &Limits::default())
}

/// Within the brute-force bound every step is checked and moves that break
/// P(2,1) or the gain condition are redrawn.
pub fn generate_with<M: GainValue>(
    n: usize,
    seed: u64,
    model: TorusModel,
    limits: &Limits,
) -> Result<(OrbitGraph<M>, ConstructionCertificate)> {
    if M::ARITY != model.gain_arity() {
        return Err(Error::ArityMismatch(model.name()));
    }
    let (rule, cond) = rule_for(model)?;
    if n == 0 {
        return Err(Error::InvalidMove("a construction has at least one vertex".into()));
    }
    let mut gen = Gen { rng: ChaCha8Rng::seed_from_u64(seed), scalar: M::ARITY == 1 };
    let base = loop {
        let m = gen.gain();
        let ok = match cond {
            Condition::YConstructive => m.y != 0,
            _ => m.x != 0,
        };
        if ok {
            break m;
        }
    };
    let mut cert = ConstructionCertificate { base: BaseLoop { vertex: 0, gain: base }, moves: Vec::new() };
    let mut g: OrbitGraph<M> = cert.base_graph()?;
    while g.n_vertices() < n {
        let mut accepted = None;
        for _ in 0..ATTEMPTS {
            let Some(mv) = gen.random_move(&g) else { continue };
            let Ok(h) = apply_move(&g, &mv) else { continue };
            if limits.check(h.n_vertices()).is_ok() {
                // only subsets through the new vertex can have changed
                let new = 1u64 << (h.n_vertices() - 1);
                if !is_p21(&h) || scan(&h, rule, new, limits)?.is_some() {
                    continue;
                }
            }
            accepted = Some((mv, h));
            break;
        }
        let Some((mv, h)) = accepted else {
            return Err(Error::InvalidMove("no admissible move found".into()));
        };
        cert.moves.push(mv);
        g = h;
    }
    Ok((g, cert))
}
