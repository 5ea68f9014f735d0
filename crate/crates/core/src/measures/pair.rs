//! Mixed-state measure of a bipartite state, choosing the exact two-qubit formulas
//! whenever the state is (or compresses to) 2⊗2 and the convex-roof optimizer otherwise.

use serde::{Deserialize, Serialize};

use super::roof::{roof_maximize, roof_minimize, BoundDirection, RoofOptions};
use super::two_qubit::{coa_two_qubit, wootters_concurrence};
use super::MixedMeasure;
use crate::qudit::{
    hermitian_eigen, partial_trace, CMatrix, DensityMatrix, SubsetSelector, SystemShape,
};
use crate::{Error, Result};

/// Reduced-state eigenvalues above this span the local support.
const SUPPORT_EIG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub roof: RoofOptions,
    /// Restrict each side to the support of its reduced state before choosing a method.
    /// Ensemble members always live in supp ρ_A ⊗ supp ρ_B, so this is exact.
    pub compress_support: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            roof: RoofOptions::default(),
            compress_support: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMethod {
    /// Closed-form Wootters quantities on a 2⊗2 state.
    ExactTwoQubit,
    /// Convex-roof optimizer; the value is a one-sided bound.
    Roof(BoundDirection),
    /// One side has a one-dimensional support, so the state is a product.
    Product,
    /// The cut splits a pure state; closed-form value.
    Pure,
}

impl PairMethod {
    pub fn is_exact(self) -> bool {
        !matches!(self, PairMethod::Roof(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairValue {
    pub value: f64,
    pub method: PairMethod,
    /// Dimensions the method actually ran on.
    pub effective_dims: [usize; 2],
}

/// Outcome of projecting both sides of a bipartite state onto their local supports.
#[derive(Debug, Clone)]
pub enum LocalSupport {
    /// Both supports have dimension at least two.
    Compressed(DensityMatrix),
    /// A side has rank one; every measure vanishes.
    Product,
}

fn local_basis(rho: &DensityMatrix, site: usize) -> Result<CMatrix> {
    let reduced = partial_trace(rho, &SubsetSelector::single(site))?;
    let eig = hermitian_eigen(reduced.matrix())?;
    let keep: Vec<usize> = (0..eig.values.len())
        .filter(|&j| eig.values[j] > SUPPORT_EIG_TOL)
        .collect();
    Ok(CMatrix::from_fn(eig.vectors.nrows(), keep.len(), |r, c| {
        eig.vectors[(r, keep[c])]
    }))
}

/// (W_A ⊗ W_B)† ρ (W_A ⊗ W_B) with W_X an orthonormal basis of supp ρ_X.
pub fn compress_local_support(rho: &DensityMatrix) -> Result<LocalSupport> {
    if rho.shape().num_sites() != 2 {
        return Err(Error::Argument(format!(
            "expected a bipartite state, got dims {:?}",
            rho.shape().dims()
        )));
    }
    let wa = local_basis(rho, 0)?;
    let wb = local_basis(rho, 1)?;
    if wa.ncols() < 2 || wb.ncols() < 2 {
        return Ok(LocalSupport::Product);
    }
    let w = wa.kronecker(&wb);
    let mut m = w.adjoint() * rho.matrix() * &w;
    m = (&m + m.adjoint()).scale(0.5);
    let tr = m.trace().re;
    let shape = SystemShape::new(vec![wa.ncols(), wb.ncols()])?;
    Ok(LocalSupport::Compressed(DensityMatrix::new(
        shape,
        m.unscale(tr),
    )?))
}

/// Value of `measure` on a bipartite state (site 0 against site 1).
pub fn pair_value(
    rho: &DensityMatrix,
    measure: MixedMeasure,
    opts: &OracleOptions,
) -> Result<PairValue> {
    let target = if opts.compress_support {
        match compress_local_support(rho)? {
            LocalSupport::Product => {
                return Ok(PairValue {
                    value: 0.0,
                    method: PairMethod::Product,
                    effective_dims: [1, 1],
                })
            }
            LocalSupport::Compressed(m) => m,
        }
    } else {
        if rho.shape().num_sites() != 2 {
            return Err(Error::Argument(format!(
                "expected a bipartite state, got dims {:?}",
                rho.shape().dims()
            )));
        }
        rho.clone()
    };
    let dims = [target.shape().dims()[0], target.shape().dims()[1]];
    if dims == [2, 2] {
        // CREN = C on 2⊗2: pure-state negativity and concurrence coincide there.
        let value = match measure {
            MixedMeasure::Concurrence | MixedMeasure::Cren => wootters_concurrence(&target)?,
            MixedMeasure::Coa => coa_two_qubit(&target)?,
        };
        return Ok(PairValue {
            value,
            method: PairMethod::ExactTwoQubit,
            effective_dims: dims,
        });
    }
    let est = match measure {
        MixedMeasure::Coa => roof_maximize(&target, &opts.roof)?,
        m => roof_minimize(&target, m.pure_measure(), &opts.roof)?,
    };
    Ok(PairValue {
        value: est.value,
        method: PairMethod::Roof(est.direction),
        effective_dims: dims,
    })
}
