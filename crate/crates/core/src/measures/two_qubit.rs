use num_complex::Complex64;

use crate::qudit::{hermitian_eigen, CMatrix, DensityMatrix};
use crate::{Error, Result};

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.shape().dims() != [2, 2] {
        return Err(Error::Shape {
            expected: "[2, 2]".into(),
            actual: format!("{:?}", rho.shape().dims()),
        });
    }
    Ok(())
}

/// Descending square roots μ_i of the eigenvalues of ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y).
///
/// With ρ = W W† (columns of W are √λ_j|e_j⟩), these are the singular values of the
/// symmetric matrix W^T (σ_y⊗σ_y) W, which avoids a square root of rounding noise.
pub fn wootters_spectrum(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let eig = hermitian_eigen(rho.matrix())?;
    let w = CMatrix::from_fn(4, 4, |r, j| {
        eig.vectors[(r, j)] * eig.values[j].max(0.0).sqrt()
    });
    let tau = w.transpose() * spin_flip() * &w;
    let mut mu: Vec<f64> = tau.singular_values().iter().copied().collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok([mu[0], mu[1], mu[2], mu[3]])
}

/// σ_y⊗σ_y: −1 at (0,3) and (3,0), +1 at (1,2) and (2,1).
fn spin_flip() -> CMatrix {
    let mut y = CMatrix::zeros(4, 4);
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y
}

/// Exact two-qubit concurrence max(0, μ₁ − μ₂ − μ₃ − μ₄).
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let mu = wootters_spectrum(rho)?;
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Exact two-qubit concurrence of assistance Σ μ_i.
pub fn coa_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(wootters_spectrum(rho)?.iter().sum())
}
