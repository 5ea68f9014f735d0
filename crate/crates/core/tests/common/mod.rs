#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use wmono_core::qudit::{CMatrix, CVector, DensityMatrix, PureState, SystemShape};
use wmono_core::Complex64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cgauss(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_pure(dims: &[usize], rng: &mut ChaCha8Rng) -> PureState {
    let shape = SystemShape::new(dims.to_vec()).unwrap();
    let amps = CVector::from_fn(shape.total_dim(), |_, _| cgauss(rng));
    PureState::normalized(shape, amps).unwrap()
}

pub fn random_density(dims: &[usize], rank: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let shape = SystemShape::new(dims.to_vec()).unwrap();
    let n = shape.total_dim();
    let g = CMatrix::from_fn(n, rank, |_, _| cgauss(rng));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(shape, m.unscale(tr)).unwrap()
}

/// Digits of `idx` in the mixed radix `dims`, most significant first.
pub fn digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

pub fn undigits(ds: &[usize], dims: &[usize]) -> usize {
    ds.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}
