use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::eigen::hermitian_eigenvalues;
use super::shape::{flatten_index, SystemShape};
use crate::{Error, Result, STRUCT_TOL};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Normalized amplitude vector over a multi-site space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    shape: SystemShape,
    amps: CVector,
}

impl PureState {
    /// Validates length and normalization (squared norm within 1e-10 of 1).
    pub fn new(shape: SystemShape, amps: CVector) -> Result<Self> {
        if amps.len() != shape.total_dim() {
            return Err(Error::Shape {
                expected: format!("{} amplitudes", shape.total_dim()),
                actual: format!("{}", amps.len()),
            });
        }
        let norm_sqr = amps.norm_squared();
        if (norm_sqr - 1.0).abs() > STRUCT_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { shape, amps })
    }

    /// Rescales `amps` to unit norm first; fails only on the zero vector.
    pub fn normalized(shape: SystemShape, amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Self::new(shape, amps.unscale(norm))
    }

    /// Basis state `|multi⟩`.
    pub fn basis(shape: SystemShape, multi: &[usize]) -> Result<Self> {
        let idx = flatten_index(multi, &shape)?;
        let mut amps = CVector::zeros(shape.total_dim());
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { shape, amps })
    }

    /// Builds a state from `(multi-index, amplitude)` terms, normalizing the result.
    pub fn from_terms(shape: SystemShape, terms: &[(&[usize], Complex64)]) -> Result<Self> {
        let mut amps = CVector::zeros(shape.total_dim());
        for (multi, a) in terms {
            amps[flatten_index(multi, &shape)?] += a;
        }
        Self::normalized(shape, amps)
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn amps(&self) -> &CVector {
        &self.amps
    }

    /// The rank-1 projector |ψ⟩⟨ψ|.
    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            shape: self.shape.clone(),
            mat: &self.amps * self.amps.adjoint(),
        }
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.shape.dims().to_vec();
        dims.extend_from_slice(other.shape.dims());
        PureState {
            shape: SystemShape::new(dims).expect("product of valid shapes"),
            amps: self.amps.kronecker(&other.amps),
        }
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix with its site shape.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    shape: SystemShape,
    mat: CMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity (1e-10), unit trace (1e-10) and λ_min ≥ −1e-9.
    pub fn new(shape: SystemShape, mat: CMatrix) -> Result<Self> {
        let dim = shape.total_dim();
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::Shape {
                expected: format!("{dim}x{dim}"),
                actual: format!("{}x{}", mat.nrows(), mat.ncols()),
            });
        }
        let dev = hermitian_deviation(&mat);
        if dev > STRUCT_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {dev:e})"
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STRUCT_TOL || tr.im.abs() > STRUCT_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} != 1")));
        }
        let min = hermitian_eigenvalues(&mat)?.last().copied().unwrap_or(0.0);
        if min < -1e-9 {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self { shape, mat })
    }

    /// Skips validation; used internally where the construction guarantees the invariants.
    pub(crate) fn from_parts_unchecked(shape: SystemShape, mat: CMatrix) -> Self {
        Self { shape, mat }
    }

    /// `I/d` over `shape`.
    pub fn maximally_mixed(shape: SystemShape) -> Self {
        let d = shape.total_dim();
        let mat = CMatrix::identity(d, d).unscale(d as f64);
        Self { shape, mat }
    }

    /// Σ p_i |ψ_i⟩⟨ψ_i| over states sharing one shape. Weights must sum to one.
    pub fn mixture(members: &[(f64, PureState)]) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::Argument("empty mixture".into()))?;
        let shape = first.1.shape().clone();
        let d = shape.total_dim();
        let mut mat = CMatrix::zeros(d, d);
        for (p, psi) in members {
            if psi.shape() != &shape {
                return Err(Error::Shape {
                    expected: format!("{:?}", shape.dims()),
                    actual: format!("{:?}", psi.shape().dims()),
                });
            }
            if *p < 0.0 {
                return Err(Error::Argument(format!("negative weight {p}")));
            }
            mat += psi.to_density().matrix().scale(*p);
        }
        Self::new(shape, mat)
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    /// Reinterprets the matrix over a different factorization of the same total dimension.
    pub fn reshaped(&self, shape: SystemShape) -> Result<Self> {
        if shape.total_dim() != self.shape.total_dim() {
            return Err(Error::Shape {
                expected: format!("total dimension {}", self.shape.total_dim()),
                actual: format!("{}", shape.total_dim()),
            });
        }
        Ok(Self {
            shape,
            mat: self.mat.clone(),
        })
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.shape.dims().to_vec();
        dims.extend_from_slice(other.shape.dims());
        DensityMatrix {
            shape: SystemShape::new(dims).expect("product of valid shapes"),
            mat: self.mat.kronecker(&other.mat),
        }
    }
}

/// Largest elementwise modulus of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest |A_ij − conj(A_ji)|.
pub(crate) fn hermitian_deviation(mat: &CMatrix) -> f64 {
    let n = mat.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
        }
    }
    dev
}
