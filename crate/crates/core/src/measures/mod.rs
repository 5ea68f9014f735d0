//! Entanglement measures: concurrence, concurrence of assistance (CoA), negativity
//! and the convex-roof extended negativity (CREN).
//!
//! Pure states use closed forms. Two-qubit mixed states use the Wootters
//! construction. Everything else goes through the randomized convex-roof
//! optimizer in [`roof`], whose results are one-sided bounds.

mod pair;
mod pure;
pub mod roof;
mod two_qubit;

use serde::{Deserialize, Serialize};

pub use pair::{
    compress_local_support, pair_value, LocalSupport, OracleOptions, PairMethod, PairValue,
};
pub use pure::{
    concurrence_pure, negativity_partial_transpose, negativity_pure, weighted_pure_value,
};
pub use roof::{
    haar_isometry, roof_maximize, roof_minimize, sample_ensemble, BoundDirection, Ensemble,
    RoofEstimate, RoofOptions,
};
pub use two_qubit::{coa_two_qubit, wootters_concurrence, wootters_spectrum};

/// Pure-state measure lifted to mixed states by a convex roof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PureMeasure {
    Concurrence,
    Negativity,
}

/// Mixed-state measure of a bipartite state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MixedMeasure {
    /// Convex-roof concurrence (minimum over decompositions).
    Concurrence,
    /// Concurrence of assistance (maximum over decompositions).
    Coa,
    /// Convex-roof extended negativity (minimum over decompositions).
    Cren,
}

impl MixedMeasure {
    pub fn pure_measure(self) -> PureMeasure {
        match self {
            MixedMeasure::Concurrence | MixedMeasure::Coa => PureMeasure::Concurrence,
            MixedMeasure::Cren => PureMeasure::Negativity,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MixedMeasure::Concurrence => "C",
            MixedMeasure::Coa => "CoA",
            MixedMeasure::Cren => "CREN",
        }
    }
}
