//! Bound builders and verifiers for the monogamy and polygamy relations of
//! generalized W-class states.

mod example;
mod power;
mod report;
mod sweep;
mod verify;

pub use example::{example_comparison, published_example_values, ExampleComparison, ExampleValues};
pub use power::{
    g_derivative, g_function, lemma31_check, literal_chain_rhs, select_split, theorem32_rhs,
    theorem34_rhs_chain, ChainBound, OrderingCertificate, PowerParams,
};
pub use report::{MonogamyReport, Premise, Relation, RhsTerm, Verdict};
pub use sweep::{
    sweep_f, sweep_inputs_from_state, AlphaComparison, SweepInputs, SweepResult, SweepRow,
};
pub use verify::{
    cren_equality_check, cut_value, lemma21_equality_check, qubit_power_checks, verify_theorem32,
    verify_theorem34, MonogamyMeasure, VerifyOptions, EXACT_TOL, ORACLE_TOL,
};
