//! Rigidity matrices over ℚ and generic rank.
//!
//! The row of edge {i, j; m} has d = p_i − p_j − mL under vertex i, −d under
//! vertex j (the two cancel on a loop), and (m L̇)·d in the lattice column,
//! where L̇ is the derivative of the lattice along the model's single
//! degree of freedom. Scalar gains act on the first generator only.

mod exact;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gains::TorusModel;
use crate::graph::{GainValue, OrbitGraph};
use crate::tgain::TGainTable;

pub use exact::{kernel, rank, Q};

pub type Vector = [Q; 2];
/// Rows are the two generators.
pub type Lattice = [[Q; 2]; 2];

/// Largest numerator and denominator drawn for random coordinates.
pub const SAMPLE_BOUND: u64 = 1_000_000;

pub const DEFAULT_TRIALS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    /// For circle models only the first coordinate is used.
    pub positions: Vec<Vector>,
    pub lattice: Lattice,
    pub lattice_velocity: Lattice,
}

fn zero_lattice() -> Lattice {
    [[Q::zero(), Q::zero()], [Q::zero(), Q::zero()]]
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn sample(rng: &mut ChaCha8Rng) -> Q {
    let n = rng.gen_range(1..=SAMPLE_BOUND);
    let d = rng.gen_range(1..=SAMPLE_BOUND);
    Q::new(n.into(), d.into())
}

impl Placement {
    /// Random rational placement for `model`; `L` is lower triangular with
    /// positive diagonal.
    pub fn random(n: usize, model: TorusModel, rng: &mut ChaCha8Rng) -> Self {
        let dim = model.position_dim();
        let positions = (0..n)
            .map(|_| {
                let x = sample(rng);
                let y = if dim == 2 { sample(rng) } else { Q::zero() };
                [x, y]
            })
            .collect();
        let mut lattice = [[sample(rng), Q::zero()], [sample(rng), sample(rng)]];
        let mut velocity = zero_lattice();
        match model {
            TorusModel::Fixed | TorusModel::CircleFixed => {}
            TorusModel::XVariable | TorusModel::Cylinder | TorusModel::CircleFlexible => {
                velocity[0][0] = Q::one();
            }
            TorusModel::YVariable => velocity[1][1] = Q::one(),
            TorusModel::Angle => {
                // second generator r(cos θ, sin θ) with a rational point on
                // the unit circle: cos = (1 − t²)/(1 + t²), sin = 2t/(1 + t²)
                let t = sample(rng);
                let r = sample(rng);
                let den = Q::one() + &t * &t;
                let cos = (Q::one() - &t * &t) / &den;
                let sin = (q(2) * &t) / &den;
                lattice[1] = [&r * &cos, &r * &sin];
                velocity[1] = [-(&r * &sin), &r * &cos];
            }
        }
        Placement { positions, lattice, lattice_velocity: velocity }
    }

    pub fn n_vertices(&self) -> usize {
        self.positions.len()
    }
}

fn times_lattice(m: (i128, i128), l: &Lattice) -> Vector {
    let (a, b) = (Q::from_integer(m.0.into()), Q::from_integer(m.1.into()));
    [&a * &l[0][0] + &b * &l[1][0], &a * &l[0][1] + &b * &l[1][1]]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityMatrix {
    pub model: TorusModel,
    pub n_vertices: usize,
    /// `position_dim · n` entries per row.
    pub vertex_block: Vec<Vec<Q>>,
    /// One entry per row for models with a variable lattice.
    pub lattice_column: Option<Vec<Q>>,
}

impl RigidityMatrix {
    pub fn n_rows(&self) -> usize {
        self.vertex_block.len()
    }

    pub fn n_cols(&self) -> usize {
        self.model.position_dim() * self.n_vertices + usize::from(self.lattice_column.is_some())
    }

    /// Rows with the lattice entry appended.
    pub fn dense(&self) -> Vec<Vec<Q>> {
        self.vertex_block
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                if let Some(col) = &self.lattice_column {
                    r.push(col[i].clone());
                }
                r
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(&self.dense())
    }
}

pub fn build_matrix<M: GainValue>(
    g: &OrbitGraph<M>,
    placement: &Placement,
    model: TorusModel,
) -> Result<RigidityMatrix> {
    if M::ARITY != model.gain_arity() {
        return Err(Error::ArityMismatch(model.name()));
    }
    if placement.n_vertices() != g.n_vertices() {
        return Err(Error::BadPlacement("vertex count differs from the graph"));
    }
    let dim = model.position_dim();
    let n = g.n_vertices();
    let mut vertex_block = Vec::with_capacity(g.n_edges());
    let mut lattice_column = model.has_lattice_column().then(Vec::new);
    for (id, e) in g.edges().iter().enumerate() {
        let m = (e.gain.x(), e.gain.y());
        let shift = times_lattice(m, &placement.lattice);
        let (pi, pj) = (&placement.positions[e.tail], &placement.positions[e.head]);
        let d: Vec<Q> = (0..dim).map(|k| &pi[k] - &pj[k] - &shift[k]).collect();
        if d.iter().all(Zero::is_zero) {
            return Err(Error::ZeroLengthEdge(id));
        }
        let mut row = vec![Q::zero(); dim * n];
        for k in 0..dim {
            row[dim * e.tail + k] += &d[k];
            row[dim * e.head + k] -= &d[k];
        }
        vertex_block.push(row);
        if let Some(col) = lattice_column.as_mut() {
            let v = times_lattice(m, &placement.lattice_velocity);
            col.push((0..dim).map(|k| &v[k] * &d[k]).sum());
        }
    }
    Ok(RigidityMatrix { model, n_vertices: n, vertex_block, lattice_column })
}

/// Attempts per trial before a placement with a zero-length edge is given up.
const RESAMPLES: usize = 64;

/// Largest rank over `trials` random placements; deterministic in `seed`.
pub fn generic_rank<M: GainValue>(g: &OrbitGraph<M>, model: TorusModel, trials: usize, seed: u64) -> Result<usize> {
    if M::ARITY != model.gain_arity() {
        return Err(Error::ArityMismatch(model.name()));
    }
    // a loop with zero gain has length zero at every placement
    if let Some(id) = g.edges().iter().position(|e| e.is_loop() && e.gain.is_zero()) {
        return Err(Error::ZeroLengthEdge(id));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let mut attempt = 0;
        let matrix = loop {
            let p = Placement::random(g.n_vertices(), model, &mut rng);
            match build_matrix(g, &p, model) {
                Err(Error::ZeroLengthEdge(id)) if attempt + 1 >= RESAMPLES => {
                    return Err(Error::ZeroLengthEdge(id))
                }
                Err(Error::ZeroLengthEdge(_)) => attempt += 1,
                other => break other?,
            }
        };
        best = best.max(matrix.rank());
        if best == model.full_rank(g.n_vertices()).min(g.n_edges()) {
            break;
        }
    }
    Ok(best)
}

pub fn is_inf_rigid<M: GainValue>(g: &OrbitGraph<M>, model: TorusModel, trials: usize, seed: u64) -> Result<bool> {
    Ok(generic_rank(g, model, trials, seed)? == model.full_rank(g.n_vertices()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionSpace {
    pub dimension: usize,
    /// Vertex coordinates first, then the lattice coordinate if any.
    pub basis: Vec<Vec<Q>>,
}

pub fn motion_space<M: GainValue>(g: &OrbitGraph<M>, placement: &Placement, model: TorusModel) -> Result<MotionSpace> {
    let r = build_matrix(g, placement, model)?;
    let basis = kernel(&r.dense(), r.n_cols());
    Ok(MotionSpace { dimension: basis.len(), basis })
}

/// Moves each vertex by its T-potential in lattice coordinates. With the
/// T-gains every edge vector is unchanged, so the vertex block is too.
pub fn t_gain_shifted_placement<M: GainValue>(
    g: &OrbitGraph<M>,
    table: &TGainTable<M>,
    placement: &Placement,
) -> Result<Placement> {
    let n = g.n_vertices();
    let consistent = table.potentials.len() == n
        && table.t_gains.len() == g.n_edges()
        && placement.n_vertices() == n
        && g.edges()
            .iter()
            .zip(&table.t_gains)
            .all(|(e, &t)| table.potentials[e.tail] + e.gain - table.potentials[e.head] == t);
    if !consistent {
        return Err(Error::InconsistentTable);
    }
    let positions = placement
        .positions
        .iter()
        .zip(&table.potentials)
        .map(|(p, pot)| {
            let s = times_lattice((pot.x(), pot.y()), &placement.lattice);
            [&p[0] + &s[0], &p[1] + &s[1]]
        })
        .collect();
    Ok(Placement { positions, ..placement.clone() })
}
