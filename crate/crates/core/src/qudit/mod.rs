//! Dense linear algebra for multi-qudit states.

mod eigen;
mod ops;
mod shape;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub(crate) use ops::check_bipartition;
pub use ops::{
    partial_trace, partial_transpose, purity, schmidt_spectrum, trace_norm, SchmidtSpectrum,
};
pub use shape::{flatten_index, unflatten_index, SubsetSelector, SystemShape};
pub use state::{max_abs_diff, CMatrix, CVector, DensityMatrix, PureState};
