use num_complex::Complex64;

use super::PureMeasure;
use crate::qudit::{
    check_bipartition, flatten_index, partial_transpose, purity, trace_norm, unflatten_index,
    CMatrix, PureState, SubsetSelector,
};
use crate::Result;

/// √(2(1 − Tr ρ_A²)) for a pure state split into `part_a` and its complement.
pub fn concurrence_pure(state: &PureState, part_a: &SubsetSelector) -> Result<f64> {
    check_bipartition(state.shape(), part_a)?;
    let p = purity(&state.reduced(part_a)?);
    Ok((2.0 * (1.0 - p)).max(0.0).sqrt())
}

/// Σ_{i<j} 2√(λ_i λ_j) over the Schmidt coefficients.
pub fn negativity_pure(state: &PureState, part_a: &SubsetSelector) -> Result<f64> {
    check_bipartition(state.shape(), part_a)?;
    // √λ_i are the singular values of the amplitude matrix; taking them directly
    // keeps zero Schmidt coefficients at rounding level instead of its square root.
    let sigma = amplitude_matrix(state, part_a)?.singular_values();
    let mut total = 0.0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            total += 2.0 * sigma[i] * sigma[j];
        }
    }
    Ok(total)
}

/// ψ reshaped to a `dim(A) × dim(B)` matrix.
fn amplitude_matrix(state: &PureState, part_a: &SubsetSelector) -> Result<CMatrix> {
    let shape = state.shape();
    let part_b = part_a.complement(shape);
    let (shape_a, shape_b) = (shape.select(part_a)?, shape.select(&part_b)?);
    let mut m = CMatrix::zeros(shape_a.total_dim(), shape_b.total_dim());
    for (f, amp) in state.amps().iter().enumerate() {
        let levels = unflatten_index(f, shape)?;
        let pick =
            |sel: &SubsetSelector| sel.sites().iter().map(|&s| levels[s]).collect::<Vec<_>>();
        let r = flatten_index(&pick(part_a), &shape_a)?;
        let c = flatten_index(&pick(&part_b), &shape_b)?;
        m[(r, c)] = *amp;
    }
    Ok(m)
}

/// ‖ρ^{T_B}‖₁ − 1, the partial-transpose route to the same value as [`negativity_pure`].
pub fn negativity_partial_transpose(state: &PureState, part_a: &SubsetSelector) -> Result<f64> {
    check_bipartition(state.shape(), part_a)?;
    let part_b = part_a.complement(state.shape());
    let pt = partial_transpose(&state.to_density(), &part_b)?;
    Ok(trace_norm(&pt)? - 1.0)
}

/// `‖ψ‖² · M(ψ/‖ψ‖)` for an unnormalized vector on a `dim_a × dim_b` space
/// (site A most significant). Both measures are homogeneous of degree one in ‖ψ‖²,
/// so this is what convex-roof ensembles sum directly.
///
/// Concurrence uses C² = 4 Σ_{i<j} λ_iλ_j = 4 Σ |2×2 minors of ψ|², which stays
/// accurate near zero where 1 − Tr ρ_A² cancels. Negativity uses singular values.
pub fn weighted_pure_value(
    psi: &[Complex64],
    dim_a: usize,
    dim_b: usize,
    measure: PureMeasure,
) -> f64 {
    debug_assert_eq!(psi.len(), dim_a * dim_b);
    if measure == PureMeasure::Concurrence || dim_a.min(dim_b) == 2 {
        // In a 2 × n split Σ_{i<j} 2√(λ_iλ_j) = 2√(λ_1λ_2), the concurrence.
        return 2.0 * minor_sum(psi, dim_a, dim_b).sqrt();
    }
    let m = CMatrix::from_row_slice(dim_a, dim_b, psi);
    let sigma = m.singular_values();
    let mut total = 0.0;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            total += 2.0 * sigma[i] * sigma[j];
        }
    }
    total
}

/// Σ over all 2×2 minors of the `dim_a × dim_b` reshaping of `psi` of |minor|².
fn minor_sum(psi: &[Complex64], dim_a: usize, dim_b: usize) -> f64 {
    let at = |r: usize, c: usize| psi[r * dim_b + c];
    let mut total = 0.0;
    for r1 in 0..dim_a {
        for r2 in r1 + 1..dim_a {
            for c1 in 0..dim_b {
                for c2 in c1 + 1..dim_b {
                    total += (at(r1, c1) * at(r2, c2) - at(r1, c2) * at(r2, c1)).norm_sqr();
                }
            }
        }
    }
    total
}
