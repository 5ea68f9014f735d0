use serde::{Deserialize, Serialize};

use super::verify::cut_value;
use crate::measures::{MixedMeasure, OracleOptions};
use crate::wclass::{build_wclass_state, WCoefficients};
use crate::Result;

/// Concurrences of the three-qubit state (2|100⟩ + |010⟩ + |001⟩)/√6.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExampleValues {
    pub c_ab: f64,
    pub c_ac: f64,
    pub c_a_bc: f64,
}

impl ExampleValues {
    /// C²(A|BC) − C²(AB) − C²(AC), zero for any W-class state.
    pub fn squared_residual(&self) -> f64 {
        self.c_a_bc * self.c_a_bc - self.c_ab * self.c_ab - self.c_ac * self.c_ac
    }
}

/// Values as they were originally published for this state.
pub fn published_example_values() -> ExampleValues {
    ExampleValues {
        c_ab: 1.0 / 3.0,
        c_ac: 2.0 / 3.0,
        c_a_bc: 5f64.sqrt() / 3.0,
    }
}

/// Published versus recomputed values. The published C(AB) and C(A|BC) differ from
/// what the coefficients give, although both triples satisfy the squared-sum equality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleComparison {
    pub published: ExampleValues,
    pub computed: ExampleValues,
    /// computed − published, per field.
    pub difference: ExampleValues,
    pub computed_c_bc: f64,
    pub published_squared_residual: f64,
    pub computed_squared_residual: f64,
}

pub fn example_comparison(opts: &OracleOptions) -> Result<ExampleComparison> {
    let state = build_wclass_state(&WCoefficients::three_qubit_example())?;
    let c = |l: &[usize], r: &[usize]| -> Result<f64> {
        Ok(cut_value(&state, l, r, MixedMeasure::Concurrence, opts)?.value)
    };
    let computed = ExampleValues {
        c_ab: c(&[0], &[1])?,
        c_ac: c(&[0], &[2])?,
        c_a_bc: c(&[0], &[1, 2])?,
    };
    let published = published_example_values();
    Ok(ExampleComparison {
        published,
        computed,
        difference: ExampleValues {
            c_ab: computed.c_ab - published.c_ab,
            c_ac: computed.c_ac - published.c_ac,
            c_a_bc: computed.c_a_bc - published.c_a_bc,
        },
        computed_c_bc: c(&[1], &[2])?,
        published_squared_residual: published.squared_residual(),
        computed_squared_residual: computed.squared_residual(),
    })
}
