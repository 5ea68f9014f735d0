use serde::{Deserialize, Serialize};

use super::power::PowerParams;
use super::verify::{cut_value, MonogamyMeasure};
use crate::measures::OracleOptions;
use crate::qudit::PureState;
use crate::wclass::Partition;
use crate::{Error, Result};

/// The three measure values a sweep is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepInputs {
    pub lhs: f64,
    pub max: f64,
    pub min: f64,
}

impl SweepInputs {
    pub fn new(lhs: f64, max: f64, min: f64) -> Result<Self> {
        if !(lhs >= 0.0 && min >= 0.0 && max >= min) {
            return Err(Error::Argument(format!(
                "need lhs >= 0 and max >= min >= 0, got {lhs}, {max}, {min}"
            )));
        }
        Ok(Self { lhs, max, min })
    }
}

/// E(P1|P2P3) and the two pair values of a three-block partition. The flag is true
/// when all three values are closed-form.
pub fn sweep_inputs_from_state(
    state: &PureState,
    partition: &Partition,
    measure: MonogamyMeasure,
    opts: &OracleOptions,
) -> Result<(SweepInputs, bool)> {
    partition.validate(state.shape())?;
    let b = partition.blocks();
    if b.len() != 3 {
        return Err(Error::Argument(format!(
            "partition {} must have exactly three blocks",
            partition.label()
        )));
    }
    let m = measure.mixed();
    let mut rest = [b[1].clone(), b[2].clone()].concat();
    rest.sort_unstable();
    let lhs = cut_value(state, &b[0], &rest, m, opts)?;
    let p2 = cut_value(state, &b[0], &b[1], m, opts)?;
    let p3 = cut_value(state, &b[0], &b[2], m, opts)?;
    let exact = [lhs, p2, p3].iter().all(|v| v.method.is_exact());
    let inputs = SweepInputs::new(lhs.value, p2.value.max(p3.value), p2.value.min(p3.value))?;
    Ok((inputs, exact))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub beta: f64,
    pub alpha: f64,
    pub lhs_pow: f64,
    /// h·max^β.
    pub max_term: f64,
    pub min_term: f64,
    /// lhs_pow − max_term − min_term.
    pub f: f64,
}

/// f(β, 2) against f(β, α) for one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaComparison {
    pub beta: f64,
    pub alpha: f64,
    pub f_alpha2: f64,
    pub f_alpha: f64,
    /// Whether f(β, 2) ≥ f(β, α). Since h shrinks as α grows, f grows with α and this
    /// only holds when β = 0 or α = 2.
    pub alpha2_dominates: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub inputs: SweepInputs,
    /// β-major, in grid order.
    pub rows: Vec<SweepRow>,
    /// Filled when α = 2 is on the grid.
    pub comparisons: Vec<AlphaComparison>,
}

impl SweepResult {
    pub fn alpha2_dominates_everywhere(&self) -> bool {
        self.comparisons.iter().all(|c| c.alpha2_dominates)
    }

    /// f never decreases along α for any fixed β.
    pub fn nondecreasing_in_alpha(&self, alphas: usize) -> bool {
        self.rows.chunks(alphas).all(|chunk| {
            let mut sorted: Vec<&SweepRow> = chunk.iter().collect();
            sorted.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
            sorted.windows(2).all(|w| w[1].f >= w[0].f - 1e-15)
        })
    }
}

/// f(β, α) = lhs^β − (2^{β/α} − 1)·max^β − min^β over the grid.
pub fn sweep_f(inputs: SweepInputs, betas: &[f64], alphas: &[f64]) -> Result<SweepResult> {
    if betas.is_empty() || alphas.is_empty() {
        return Err(Error::Argument("sweep grid is empty".into()));
    }
    let min_alpha = alphas.iter().copied().fold(f64::INFINITY, f64::min);
    if let Some(b) = betas.iter().find(|&&b| b > min_alpha) {
        return Err(Error::Argument(format!(
            "beta {b} exceeds the smallest alpha {min_alpha}"
        )));
    }
    let mut rows = Vec::with_capacity(betas.len() * alphas.len());
    for &beta in betas {
        for &alpha in alphas {
            let pp = PowerParams::new(alpha, beta)?;
            let lhs_pow = inputs.lhs.powf(beta);
            let max_term = pp.h * inputs.max.powf(beta);
            let min_term = inputs.min.powf(beta);
            rows.push(SweepRow {
                beta,
                alpha,
                lhs_pow,
                max_term,
                min_term,
                f: lhs_pow - max_term - min_term,
            });
        }
    }
    let mut comparisons = Vec::new();
    if let Some(i2) = alphas.iter().position(|&a| a == 2.0) {
        for chunk in rows.chunks(alphas.len()) {
            let base = chunk[i2];
            for row in chunk.iter().filter(|r| r.alpha != 2.0) {
                comparisons.push(AlphaComparison {
                    beta: row.beta,
                    alpha: row.alpha,
                    f_alpha2: base.f,
                    f_alpha: row.f,
                    alpha2_dominates: base.f >= row.f,
                });
            }
        }
    }
    Ok(SweepResult {
        inputs,
        rows,
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn published() -> SweepInputs {
        SweepInputs::new(5f64.sqrt() / 3.0, 2.0 / 3.0, 1.0 / 3.0).unwrap()
    }

    #[test]
    fn saturation_at_two() {
        let res = sweep_f(published(), &[2.0], &[2.0]).unwrap();
        assert!(res.rows[0].f.abs() < 1e-15);
    }

    #[test]
    fn row_invariant_and_order() {
        let betas = [0.0, 0.5, 1.0];
        let alphas = [2.0, 3.0];
        let res = sweep_f(published(), &betas, &alphas).unwrap();
        assert_eq!(res.rows.len(), 6);
        assert_eq!((res.rows[1].beta, res.rows[1].alpha), (0.0, 3.0));
        for r in &res.rows {
            let h = (r.beta / r.alpha).exp2() - 1.0;
            let f = res.inputs.lhs.powf(r.beta)
                - h * res.inputs.max.powf(r.beta)
                - res.inputs.min.powf(r.beta);
            assert_eq!(r.f, f);
        }
        assert!(res.nondecreasing_in_alpha(alphas.len()));
    }

    #[test]
    fn alpha2_dominance_fails_for_positive_beta() {
        let res = sweep_f(published(), &[0.0, 1.0], &[2.0, 4.0]).unwrap();
        assert_eq!(res.comparisons.len(), 2);
        assert!(res.comparisons[0].alpha2_dominates);
        assert!(!res.comparisons[1].alpha2_dominates);
        assert!(!res.alpha2_dominates_everywhere());
    }

    #[test]
    fn grid_errors() {
        assert!(sweep_f(published(), &[], &[2.0]).is_err());
        assert!(sweep_f(published(), &[1.0], &[]).is_err());
        assert!(sweep_f(published(), &[2.5], &[2.0, 3.0]).is_err());
        assert!(sweep_f(published(), &[1.0], &[1.5]).is_err());
        assert!(SweepInputs::new(0.5, 0.1, 0.2).is_err());
    }
}
