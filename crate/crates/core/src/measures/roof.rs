//! Convex-roof optimization over ensemble decompositions.
//!
//! Every decomposition of ρ with `k` members is `√p_i|ψ_i⟩ = Σ_j V_ij √q_j|e_j⟩`
//! for an isometry `V` (k × rank) and the eigen-ensemble `{q_j, |e_j⟩}`. The optimizer
//! starts from random isometries and applies Givens rotations between pairs of
//! members, which keeps `V` an isometry and touches only two members per move.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pure::weighted_pure_value;
use super::PureMeasure;
use crate::qudit::{hermitian_eigen, max_abs_diff, CMatrix, DensityMatrix, PureState};
use crate::{Error, Result, STRUCT_TOL};

/// Eigenvalues at or below this are dropped from the eigen-ensemble.
const RANK_TOL: f64 = 1e-12;
/// Rotation phases tried for every member pair.
const PHASES: [f64; 4] = [0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4];
/// Consecutive repeats of a successful move before moving on.
const MAX_REPEATS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundDirection {
    /// The estimate can only overshoot a minimum (concurrence, CREN).
    UpperBoundOnMinimum,
    /// The estimate can only undershoot a maximum (CoA).
    LowerBoundOnMaximum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    fn score(self, value: f64) -> f64 {
        match self {
            Sense::Minimize => value,
            Sense::Maximize => -value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoofOptions {
    /// Independent random starts; restart `r` uses seed `seed + r`.
    pub restarts: usize,
    pub seed: u64,
    /// Members beyond the rank of ρ (k = rank + extra_members).
    pub extra_members: usize,
    pub initial_step: f64,
    /// Descent stops once the rotation step shrinks below this.
    pub min_step: f64,
    /// A sweep improving the objective by less than this halves the step.
    pub sweep_tol: f64,
    pub max_sweeps: usize,
}

impl Default for RoofOptions {
    fn default() -> Self {
        Self {
            restarts: 200,
            seed: 0,
            extra_members: 1,
            initial_step: 0.5,
            min_step: 1e-4,
            sweep_tol: 1e-7,
            max_sweeps: 10_000,
        }
    }
}

/// A pure-state decomposition `{p_i, |ψ_i⟩}` of a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    /// Weights must lie in (0, 1] and sum to one within 1e-10.
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Argument("empty ensemble".into()));
        }
        if let Some((p, _)) = members
            .iter()
            .find(|(p, _)| !(*p > 0.0 && *p <= 1.0 + STRUCT_TOL))
        {
            return Err(Error::Argument(format!(
                "ensemble weight {p} outside (0, 1]"
            )));
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > STRUCT_TOL {
            return Err(Error::Argument(format!("ensemble weights sum to {total}")));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Σ p_i |ψ_i⟩⟨ψ_i|.
    pub fn density(&self) -> CMatrix {
        let d = self.members[0].1.amps().len();
        let mut m = CMatrix::zeros(d, d);
        for (p, psi) in &self.members {
            m += (psi.amps() * psi.amps().adjoint()).scale(*p);
        }
        m
    }

    /// Max elementwise deviation between the reconstructed and the given matrix.
    pub fn reconstruction_error(&self, rho: &DensityMatrix) -> f64 {
        max_abs_diff(&self.density(), rho.matrix())
    }

    /// Σ p_i M(ψ_i) for a two-site state, site 0 against site 1.
    pub fn average(&self, measure: PureMeasure) -> f64 {
        self.members
            .iter()
            .map(|(p, psi)| {
                let dims = psi.shape().dims();
                let amps: Vec<Complex64> = psi.amps().iter().copied().collect();
                p * weighted_pure_value(&amps, dims[0], dims[1], measure)
            })
            .sum()
    }
}

/// Result of a convex-roof search.
#[derive(Debug, Clone)]
pub struct RoofEstimate {
    pub value: f64,
    pub direction: BoundDirection,
    pub restarts: usize,
    /// Restart index that produced `value`.
    pub best_restart: usize,
    pub ensemble: Ensemble,
}

/// Eigen-ensemble weights and unit vectors (columns), with each vector's
/// largest-modulus component made real positive (first index on ties).
fn eigen_ensemble(rho: &DensityMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let eig = hermitian_eigen(rho.matrix())?;
    let keep: Vec<usize> = (0..eig.values.len())
        .filter(|&j| eig.values[j] > RANK_TOL)
        .collect();
    let d = eig.vectors.nrows();
    let mut vectors = CMatrix::zeros(d, keep.len());
    for (col, &j) in keep.iter().enumerate() {
        let v = eig.vectors.column(j);
        let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pivot = v
            .iter()
            .position(|z| z.norm() >= max - 1e-12)
            .expect("unit eigenvector has a nonzero entry");
        let phase = v[pivot].conj() / v[pivot].norm();
        for r in 0..d {
            vectors[(r, col)] = v[r] * phase;
        }
    }
    Ok((keep.iter().map(|&j| eig.values[j]).collect(), vectors))
}

/// Rows `√p_i ψ_i` for the isometry `mixing` (k × rank).
fn mixed_rows(weights: &[f64], vectors: &CMatrix, mixing: &CMatrix) -> Vec<Vec<Complex64>> {
    let d = vectors.nrows();
    (0..mixing.nrows())
        .map(|i| {
            let mut row = vec![Complex64::new(0.0, 0.0); d];
            for (j, &q) in weights.iter().enumerate() {
                let coeff = mixing[(i, j)] * q.sqrt();
                if coeff.norm() == 0.0 {
                    continue;
                }
                for (r, slot) in row.iter_mut().enumerate() {
                    *slot += coeff * vectors[(r, j)];
                }
            }
            row
        })
        .collect()
}

fn rows_to_ensemble(rho: &DensityMatrix, rows: &[Vec<Complex64>]) -> Result<Ensemble> {
    let mut members = Vec::with_capacity(rows.len());
    for row in rows {
        let p: f64 = row.iter().map(Complex64::norm_sqr).sum();
        if p <= 1e-300 {
            continue;
        }
        let amps = DVector::from_iterator(row.len(), row.iter().map(|z| z / p.sqrt()));
        members.push((p, PureState::new(rho.shape().clone(), amps)?));
    }
    let total: f64 = members.iter().map(|(p, _)| p).sum();
    for (p, _) in members.iter_mut() {
        *p /= total;
    }
    Ensemble::new(members)
}

/// Haar-random `k × r` isometry: the first `r` columns of a Haar unitary.
pub fn haar_isometry(k: usize, r: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    assert!(r <= k, "isometry needs r <= k");
    let g = CMatrix::from_fn(k, k, |_, _| {
        Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let qr = g.qr();
    let (q, r_mat) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..k {
        let d = r_mat[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..k {
            u[(i, j)] *= phase;
        }
    }
    u.columns(0, r).into_owned()
}

/// Decomposition induced by the isometry `mixing` (k rows, rank columns).
pub fn sample_ensemble(rho: &DensityMatrix, mixing: &CMatrix) -> Result<Ensemble> {
    let (weights, vectors) = eigen_ensemble(rho)?;
    let rank = weights.len();
    if mixing.nrows() < rank {
        return Err(Error::Argument(format!(
            "ensemble size {} below rank {rank}",
            mixing.nrows()
        )));
    }
    if mixing.ncols() != rank {
        return Err(Error::Shape {
            expected: format!("{rank} mixing columns"),
            actual: format!("{}", mixing.ncols()),
        });
    }
    let gram = mixing.adjoint() * mixing;
    if max_abs_diff(&gram, &CMatrix::identity(rank, rank)) > 1e-10 {
        return Err(Error::Argument("mixing matrix is not an isometry".into()));
    }
    rows_to_ensemble(rho, &mixed_rows(&weights, &vectors, mixing))
}

fn require_bipartite(rho: &DensityMatrix) -> Result<(usize, usize)> {
    match rho.shape().dims() {
        [a, b] => Ok((*a, *b)),
        dims => Err(Error::Argument(format!(
            "convex roofs need a two-site (bipartite) shape, got {dims:?}"
        ))),
    }
}

/// Upper bound on min Σ p_i M(ψ_i) over decompositions of ρ.
pub fn roof_minimize(
    rho: &DensityMatrix,
    measure: PureMeasure,
    opts: &RoofOptions,
) -> Result<RoofEstimate> {
    optimize(rho, measure, opts, Sense::Minimize)
}

/// Lower bound on max Σ p_i C(ψ_i) over decompositions of ρ (the concurrence of assistance).
pub fn roof_maximize(rho: &DensityMatrix, opts: &RoofOptions) -> Result<RoofEstimate> {
    optimize(rho, PureMeasure::Concurrence, opts, Sense::Maximize)
}

struct Problem {
    dim_a: usize,
    dim_b: usize,
    measure: PureMeasure,
    sense: Sense,
}

impl Problem {
    fn score(&self, row: &[Complex64]) -> f64 {
        self.sense.score(weighted_pure_value(
            row,
            self.dim_a,
            self.dim_b,
            self.measure,
        ))
    }
}

fn optimize(
    rho: &DensityMatrix,
    measure: PureMeasure,
    opts: &RoofOptions,
    sense: Sense,
) -> Result<RoofEstimate> {
    let (dim_a, dim_b) = require_bipartite(rho)?;
    if opts.restarts == 0 {
        return Err(Error::Argument("at least one restart is required".into()));
    }
    let direction = match sense {
        Sense::Minimize => BoundDirection::UpperBoundOnMinimum,
        Sense::Maximize => BoundDirection::LowerBoundOnMaximum,
    };
    let problem = Problem {
        dim_a,
        dim_b,
        measure,
        sense,
    };
    let (weights, vectors) = eigen_ensemble(rho)?;
    let rank = weights.len();

    if rank == 1 {
        let row: Vec<Complex64> = vectors.column(0).iter().copied().collect();
        let ensemble = rows_to_ensemble(rho, std::slice::from_ref(&row))?;
        return Ok(RoofEstimate {
            value: weighted_pure_value(&row, dim_a, dim_b, measure),
            direction,
            restarts: opts.restarts,
            best_restart: 0,
            ensemble,
        });
    }

    let k = rank + opts.extra_members;
    let best = (0..opts.restarts)
        .into_par_iter()
        .map(|restart| {
            let mixing = if restart == 0 {
                CMatrix::identity(k, rank)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(restart as u64));
                haar_isometry(k, rank, &mut rng)
            };
            let mut rows = mixed_rows(&weights, &vectors, &mixing);
            descend(&problem, &mut rows, opts);
            let score: f64 = rows.iter().map(|r| problem.score(r)).sum();
            (score, restart, rows)
        })
        .reduce_with(|a, b| {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");

    let (score, best_restart, rows) = best;
    Ok(RoofEstimate {
        value: sense.score(score),
        direction,
        restarts: opts.restarts,
        best_restart,
        ensemble: rows_to_ensemble(rho, &rows)?,
    })
}

/// Applies the unitary [[c, s·e], [−s·ē, c]] to rows `a` and `b`.
fn rotated(
    a: &[Complex64],
    b: &[Complex64],
    theta: f64,
    phase: Complex64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let (s, c) = theta.sin_cos();
    let se = phase * s;
    let new_a = a.iter().zip(b).map(|(x, y)| x * c + y * se).collect();
    let new_b = a
        .iter()
        .zip(b)
        .map(|(x, y)| -x * se.conj() + y * c)
        .collect();
    (new_a, new_b)
}

/// Coordinate descent over pairwise Givens rotations with a shrinking step.
fn descend(problem: &Problem, rows: &mut [Vec<Complex64>], opts: &RoofOptions) {
    let k = rows.len();
    let mut scores: Vec<f64> = rows.iter().map(|r| problem.score(r)).collect();
    let phases: Vec<Complex64> = PHASES
        .iter()
        .map(|&p| Complex64::from_polar(1.0, p))
        .collect();
    let mut step = opts.initial_step;

    for _ in 0..opts.max_sweeps {
        let before: f64 = scores.iter().sum();
        for a in 0..k {
            for b in a + 1..k {
                for &phase in &phases {
                    for theta in [step, -step] {
                        for _ in 0..MAX_REPEATS {
                            let (na, nb) = rotated(&rows[a], &rows[b], theta, phase);
                            let (sa, sb) = (problem.score(&na), problem.score(&nb));
                            if sa + sb < scores[a] + scores[b] - 1e-15 {
                                rows[a] = na;
                                rows[b] = nb;
                                scores[a] = sa;
                                scores[b] = sb;
                            } else {
                                break;
                            }
                        }
                    }
                }
            }
        }
        let after: f64 = scores.iter().sum();
        if before - after < opts.sweep_tol {
            step *= 0.5;
            if step < opts.min_step {
                break;
            }
        }
    }
}
