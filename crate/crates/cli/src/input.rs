use std::path::Path;

use anyhow::{anyhow, Context};
use serde::Deserialize;
use wmono_core::qudit::{CVector, PureState, SystemShape};
use wmono_core::wclass::{build_wclass_state, StateDescriptor, WCoefficients};
use wmono_core::Complex64;

/// Name that resolves to the built-in three-qubit example instead of a file.
pub const EXAMPLE_NAME: &str = "example-3.3";

/// An arbitrary pure state: `{"dims": [..], "amplitudes": [[re, im], ..]}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PureDescriptor {
    dims: Vec<usize>,
    amplitudes: Vec<[f64; 2]>,
}

pub struct LoadedState {
    pub name: String,
    /// Present when the input was a W-class descriptor.
    pub coeffs: Option<WCoefficients>,
    pub state: PureState,
}

impl LoadedState {
    pub fn is_example(&self) -> bool {
        self.coeffs
            .as_ref()
            .is_some_and(|c| c.approx_eq(&WCoefficients::three_qubit_example(), 1e-12))
    }
}

pub fn load_state(source: &str) -> anyhow::Result<LoadedState> {
    if source == EXAMPLE_NAME {
        let coeffs = WCoefficients::three_qubit_example();
        let state = build_wclass_state(&coeffs)?;
        return Ok(LoadedState {
            name: source.into(),
            coeffs: Some(coeffs),
            state,
        });
    }
    let text = std::fs::read_to_string(Path::new(source))
        .with_context(|| format!("cannot read state file {source}"))?;
    parse_state(&text)
        .with_context(|| format!("malformed state file {source}"))
        .map(|(coeffs, state)| LoadedState {
            name: source.into(),
            coeffs,
            state,
        })
}

fn parse_state(text: &str) -> anyhow::Result<(Option<WCoefficients>, PureState)> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("coeffs").is_some() {
        let coeffs = StateDescriptor::from_json(text)?.to_coefficients()?;
        let state = build_wclass_state(&coeffs)?;
        return Ok((Some(coeffs), state));
    }
    if value.get("amplitudes").is_some() {
        let desc: PureDescriptor = serde_json::from_value(value)?;
        let shape = SystemShape::new(desc.dims)?;
        if desc.amplitudes.len() != shape.total_dim() {
            return Err(anyhow!(
                "expected {} amplitudes, found {}",
                shape.total_dim(),
                desc.amplitudes.len()
            ));
        }
        let amps = CVector::from_iterator(
            desc.amplitudes.len(),
            desc.amplitudes
                .iter()
                .map(|&[re, im]| Complex64::new(re, im)),
        );
        return Ok((None, PureState::new(shape, amps)?));
    }
    Err(anyhow!(
        "expected a W-class descriptor (coeffs) or a pure state (dims, amplitudes)"
    ))
}
