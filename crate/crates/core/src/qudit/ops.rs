use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::hermitian_eigenvalues;
use super::shape::{SubsetSelector, SystemShape};
use super::state::{CMatrix, DensityMatrix, PureState};
use crate::{Error, Result, DERIVED_TOL};

/// Eigenvalues in [-CLIP_TOL, 0) are set to zero; anything lower is an error.
pub const CLIP_TOL: f64 = 1e-9;

/// Splits every flat index into (index over `keep`, index over the complement).
fn split_indices(shape: &SystemShape, keep: &SubsetSelector) -> Vec<(usize, usize)> {
    let dims = shape.dims();
    let strides = shape.strides();
    let kept: Vec<usize> = keep.sites().to_vec();
    let rest: Vec<usize> = keep.complement(shape).sites().to_vec();
    (0..shape.total_dim())
        .map(|f| {
            let level = |s: usize| (f / strides[s]) % dims[s];
            let k = kept.iter().fold(0, |acc, &s| acc * dims[s] + level(s));
            let r = rest.iter().fold(0, |acc, &s| acc * dims[s] + level(s));
            (k, r)
        })
        .collect()
}

fn require_nonempty(keep: &SubsetSelector, shape: &SystemShape) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::Argument(
            "partial trace must keep at least one site".into(),
        ));
    }
    keep.validate(shape)
}

/// Traces out every site not in `keep`. The result's sites follow label order.
pub fn partial_trace(rho: &DensityMatrix, keep: &SubsetSelector) -> Result<DensityMatrix> {
    let shape = rho.shape();
    require_nonempty(keep, shape)?;
    let out_shape = shape.select(keep)?;
    let dk = out_shape.total_dim();
    let dr = shape.total_dim() / dk;
    let split = split_indices(shape, keep);

    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(dk); dr];
    for (f, &(k, r)) in split.iter().enumerate() {
        groups[r].push((k, f));
    }
    let m = rho.matrix();
    let mut out = CMatrix::zeros(dk, dk);
    for group in &groups {
        for &(k1, f1) in group {
            for &(k2, f2) in group {
                out[(k1, k2)] += m[(f1, f2)];
            }
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(out_shape, out))
}

impl PureState {
    /// Reduced density matrix on `keep`, computed directly from the amplitudes.
    pub fn reduced(&self, keep: &SubsetSelector) -> Result<DensityMatrix> {
        let shape = self.shape();
        require_nonempty(keep, shape)?;
        let out_shape = shape.select(keep)?;
        let dk = out_shape.total_dim();
        let dr = shape.total_dim() / dk;
        let mut m = CMatrix::zeros(dk, dr);
        for (f, (k, r)) in split_indices(shape, keep).into_iter().enumerate() {
            m[(k, r)] = self.amps()[f];
        }
        Ok(DensityMatrix::from_parts_unchecked(
            out_shape,
            &m * m.adjoint(),
        ))
    }
}

/// Transposes the row and column levels of the sites in `subset`, leaving the rest.
pub fn partial_transpose(rho: &DensityMatrix, subset: &SubsetSelector) -> Result<CMatrix> {
    let shape = rho.shape();
    subset.validate(shape)?;
    let dims = shape.dims();
    let strides = shape.strides();
    let sub_part: Vec<usize> = (0..shape.total_dim())
        .map(|f| {
            subset
                .sites()
                .iter()
                .map(|&s| ((f / strides[s]) % dims[s]) * strides[s])
                .sum()
        })
        .collect();
    let m = rho.matrix();
    let d = shape.total_dim();
    let mut out = CMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            let r2 = r - sub_part[r] + sub_part[c];
            let c2 = c - sub_part[c] + sub_part[r];
            out[(r2, c2)] = m[(r, c)];
        }
    }
    Ok(out)
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(mat: &CMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(mat)?.iter().map(|x| x.abs()).sum())
}

/// Tr(ρ²).
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().iter().map(Complex64::norm_sqr).sum()
}

/// Schmidt coefficients λ_i of a pure bipartite state, descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSpectrum {
    values: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Clips eigenvalues in [-1e-9, 0) to zero and checks they sum to one.
    pub fn from_eigenvalues(mut values: Vec<f64>) -> Result<Self> {
        for v in values.iter_mut() {
            if *v < -CLIP_TOL {
                return Err(Error::NegativeEigenvalue(*v));
            }
            *v = v.max(0.0);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > DERIVED_TOL {
            return Err(Error::Argument(format!("Schmidt values sum to {total}")));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Requires `part_a` to be a proper, non-empty subset of the state's sites.
pub fn schmidt_spectrum(state: &PureState, part_a: &SubsetSelector) -> Result<SchmidtSpectrum> {
    check_bipartition(state.shape(), part_a)?;
    let rho_a = state.reduced(part_a)?;
    SchmidtSpectrum::from_eigenvalues(hermitian_eigenvalues(rho_a.matrix())?)
}

pub(crate) fn check_bipartition(shape: &SystemShape, part_a: &SubsetSelector) -> Result<()> {
    part_a.validate(shape)?;
    if part_a.is_empty() || part_a.len() == shape.num_sites() {
        return Err(Error::Argument(format!(
            "{:?} is not a proper bipartition of {} sites",
            part_a.sites(),
            shape.num_sites()
        )));
    }
    Ok(())
}
