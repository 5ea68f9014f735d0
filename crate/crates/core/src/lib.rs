//! Generalized W-class multi-qudit states and their monogamy relations.
//!
//! The crate is layered bottom-up:
//!
//! * [`qudit`] dense complex linear algebra over multi-site Hilbert spaces
//!   (indexing, partial trace and transpose, a Jacobi Hermitian eigensolver).
//! * [`wclass`] construction of generalized W-class states and partitions of
//!   the party set.
//! * [`measures`] concurrence, concurrence of assistance, negativity and the
//!   convex-roof extended negativity, with exact two-qubit formulas and a
//!   randomized convex-roof optimizer for everything else.
//! * [`monogamy`] bound builders and verifiers producing [`monogamy::MonogamyReport`]s.

pub mod error;
pub mod measures;
pub mod monogamy;
pub mod qudit;
pub mod wclass;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Tolerance for structural invariants (normalization, Hermiticity, trace).
pub const STRUCT_TOL: f64 = 1e-10;
/// Tolerance for derived quantities.
pub const DERIVED_TOL: f64 = 1e-9;
