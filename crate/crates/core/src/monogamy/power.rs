use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exponents of the power-type bounds: α ≥ 2, β ∈ [0, α], h = 2^{β/α} − 1 ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerParams {
    pub alpha: f64,
    pub beta: f64,
    pub h: f64,
}

impl PowerParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha < 2.0 {
            return Err(Error::Argument(format!("alpha must be >= 2, got {alpha}")));
        }
        if !(0.0..=alpha).contains(&beta) {
            return Err(Error::Argument(format!(
                "beta must lie in [0, {alpha}], got {beta}"
            )));
        }
        let h = if beta == alpha {
            1.0
        } else {
            (beta / alpha).exp2() - 1.0
        };
        Ok(Self { alpha, beta, h })
    }
}

/// (1+t)^x − 1 − (2^x − 1)t^x, nonnegative for x ∈ [0, 1] and t ≥ 1.
pub fn lemma31_check(x: f64, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Argument(format!("x must lie in [0, 1], got {x}")));
    }
    if !t.is_finite() || t < 1.0 {
        return Err(Error::Argument(format!(
            "t must be a finite value >= 1, got {t}"
        )));
    }
    Ok((1.0 + t).powf(x) - 1.0 - (x.exp2() - 1.0) * t.powf(x))
}

/// g_x(t) = ((1+t)^x − 1)/t^x.
pub fn g_function(x: f64, t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Argument(format!("t must be positive, got {t}")));
    }
    Ok(((1.0 + t).powf(x) - 1.0) / t.powf(x))
}

/// dg_x/dt = x·t^{−(x+1)}·(1 − (1+t)^{x−1}).
pub fn g_derivative(x: f64, t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Argument(format!("t must be positive, got {t}")));
    }
    Ok(x * t.powf(-(x + 1.0)) * (1.0 - (1.0 + t).powf(x - 1.0)))
}

fn check_nonneg(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| v.is_nan() || **v < 0.0) {
        Some(v) => Err(Error::Argument(format!(
            "measure values must be >= 0, got {v}"
        ))),
        None => Ok(()),
    }
}

/// h·v_max^β + v_min^β.
pub fn theorem32_rhs(v_max: f64, v_min: f64, pp: &PowerParams) -> Result<f64> {
    check_nonneg(&[v_max, v_min])?;
    if v_max < v_min {
        return Err(Error::Argument(format!("v_max {v_max} < v_min {v_min}")));
    }
    Ok(pp.h * v_max.powf(pp.beta) + v_min.powf(pp.beta))
}

/// Ordering premises behind one telescoped bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingCertificate {
    /// Blocks P_2..P_split take the first regime (pair ≤ tail).
    pub split: usize,
    pub premises: Vec<super::Premise>,
}

impl OrderingCertificate {
    pub fn passed(&self) -> bool {
        self.premises.iter().all(|p| p.satisfied)
    }
}

/// Telescoped bound: weights per pair term and their weighted sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainBound {
    pub rhs: f64,
    /// Coefficient of (value of P_1|P_i)^β for i = 2..m.
    pub weights: Vec<f64>,
    pub certificate: OrderingCertificate,
}

/// Telescopes the three-party bound over blocks P_2..P_m.
///
/// `pairs[k]` is the measure between P_1 and P_{k+2}; `tails[k]` the measure between
/// P_1 and P_{k+2} ∪ ⋯ ∪ P_m (so the last tail equals the last pair). Blocks
/// P_2..P_split are peeled off with pair ≤ tail, the rest with pair ≥ tail, giving
///
/// ```text
/// Σ_{i=2}^{s} h^{i−2} v_i + h^s Σ_{j=s+1}^{m−1} v_j + h^{s−1} v_m,   v = value^β.
/// ```
pub fn theorem34_rhs_chain(
    pairs: &[f64],
    tails: &[f64],
    split: usize,
    pp: &PowerParams,
) -> Result<ChainBound> {
    let len = pairs.len();
    if len < 2 {
        return Err(Error::Argument(
            "the chain needs at least two blocks besides P_1".into(),
        ));
    }
    if tails.len() != len {
        return Err(Error::Argument(format!(
            "premises unverifiable: {} tail values for {len} pair values",
            tails.len()
        )));
    }
    if !(1..=len).contains(&split) {
        return Err(Error::Argument(format!("split {split} outside 1..={len}")));
    }
    check_nonneg(pairs)?;
    check_nonneg(tails)?;

    let m = len + 1;
    let mut premises = Vec::with_capacity(len - 1);
    let mut weights = Vec::with_capacity(len);
    for i in 2..m {
        let (pair, tail) = (pairs[i - 2], tails[i - 1]);
        if i <= split {
            premises.push(super::Premise::new(
                format!("E(P1|P{i}) <= E(P1|P{}..P{m})", i + 1),
                pair <= tail,
            ));
            weights.push(pp.h.powi(i as i32 - 2));
        } else {
            premises.push(super::Premise::new(
                format!("E(P1|P{i}) >= E(P1|P{}..P{m})", i + 1),
                pair >= tail,
            ));
            weights.push(pp.h.powi(split as i32));
        }
    }
    weights.push(pp.h.powi(split as i32 - 1));
    let rhs = weighted_sum(pairs, &weights, pp.beta);
    Ok(ChainBound {
        rhs,
        weights,
        certificate: OrderingCertificate { split, premises },
    })
}

fn weighted_sum(values: &[f64], weights: &[f64], beta: f64) -> f64 {
    values
        .iter()
        .zip(weights)
        .fold(0.0, |acc, (v, w)| acc + w * v.powf(beta))
}

/// The bound with the exponents as printed alongside the theorem statement:
/// Σ_{i=2}^{s} h^{i−1} v_i + h^s Σ_{i=s+1}^{m−1} v_i + h^m v_m.
pub fn literal_chain_rhs(pairs: &[f64], split: usize, pp: &PowerParams) -> f64 {
    let m = pairs.len() + 1;
    let weights: Vec<f64> = (2..=m)
        .map(|i| {
            if i == m {
                pp.h.powi(m as i32)
            } else if i <= split {
                pp.h.powi(i as i32 - 1)
            } else {
                pp.h.powi(split as i32)
            }
        })
        .collect();
    weighted_sum(pairs, &weights, pp.beta)
}

/// Among splits whose premises all hold, the one with the largest bound (smallest
/// split on ties). `None` when no split is certified.
pub fn select_split(pairs: &[f64], tails: &[f64], pp: &PowerParams) -> Result<Option<ChainBound>> {
    let mut best: Option<ChainBound> = None;
    for split in 1..=pairs.len() {
        let chain = theorem34_rhs_chain(pairs, tails, split, pp)?;
        if chain.certificate.passed() && best.as_ref().is_none_or(|b| chain.rhs > b.rhs) {
            best = Some(chain);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn power_params() {
        let pp = PowerParams::new(2.0, 2.0).unwrap();
        assert_eq!(pp.h, 1.0);
        assert_eq!(PowerParams::new(3.0, 0.0).unwrap().h, 0.0);
        assert!(PowerParams::new(1.5, 1.0).is_err());
        assert!(PowerParams::new(2.0, 2.5).is_err());
        assert!(PowerParams::new(2.0, -0.1).is_err());
        let pp = PowerParams::new(4.0, 1.0).unwrap();
        assert!(pp.h > 0.0 && pp.h < 1.0);
    }

    #[test]
    fn power_inequality_examples() {
        assert!(lemma31_check(1.0, 2.0).unwrap().abs() < 1e-15);
        assert!(lemma31_check(0.5, 1.0).unwrap().abs() < 1e-15);
        // 2 − 1 − (√2 − 1)√3 by hand.
        let expected = 1.0 - (2f64.sqrt() - 1.0) * 3f64.sqrt();
        assert!((lemma31_check(0.5, 3.0).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.2826).abs() < 1e-3);
        assert!(lemma31_check(1.5, 2.0).is_err());
        assert!(lemma31_check(0.5, 0.5).is_err());
        assert!(lemma31_check(0.5, f64::NAN).is_err());
    }

    #[test]
    fn g_examples() {
        for t in [0.5, 1.0, 7.0] {
            assert!((g_function(1.0, t).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((g_function(0.5, 1.0).unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!(g_function(0.5, 2.0).unwrap() >= g_function(0.5, 1.0).unwrap() - 1e-12);
        assert!(g_function(0.5, 0.0).is_err());
        assert!(g_derivative(0.5, -1.0).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        for &x in &[0.1, 0.5, 0.9, 1.3] {
            for &t in &[1.0, 2.5, 10.0] {
                let h = 1e-6;
                let fd =
                    (g_function(x, t + h).unwrap() - g_function(x, t - h).unwrap()) / (2.0 * h);
                assert!((fd - g_derivative(x, t).unwrap()).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn two_term_bound_examples() {
        let pp = PowerParams::new(2.0, 2.0).unwrap();
        assert!((theorem32_rhs(0.6, 0.3, &pp).unwrap() - (0.36 + 0.09)).abs() < 1e-15);
        let pp = PowerParams::new(2.0, 0.0).unwrap();
        assert_eq!(theorem32_rhs(0.6, 0.3, &pp).unwrap(), 1.0);
        let pp = PowerParams::new(2.0, 1.0).unwrap();
        let expected = (2f64.sqrt() - 1.0) * (2.0 / 3.0) + 1.0 / 3.0;
        assert!((theorem32_rhs(2.0 / 3.0, 1.0 / 3.0, &pp).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.6095).abs() < 1e-4);
        assert!(theorem32_rhs(-0.1, -0.2, &pp).is_err());
        assert!(theorem32_rhs(0.1, 0.2, &pp).is_err());
    }

    #[test]
    fn chain_reduces_to_two_term_bound() {
        let pp = PowerParams::new(3.0, 1.7).unwrap();
        let (a, b) = (0.42, 0.77);
        // pair ≤ tail: first regime.
        let chain = theorem34_rhs_chain(&[a, b], &[0.9, b], 2, &pp).unwrap();
        assert!(chain.certificate.passed());
        assert_eq!(
            chain.rhs.to_bits(),
            theorem32_rhs(b, a, &pp).unwrap().to_bits()
        );
        // pair ≥ tail: second regime.
        let chain = theorem34_rhs_chain(&[b, a], &[0.9, a], 1, &pp).unwrap();
        assert!(chain.certificate.passed());
        assert_eq!(
            chain.rhs.to_bits(),
            theorem32_rhs(b, a, &pp).unwrap().to_bits()
        );
    }

    #[test]
    fn chain_with_unit_h_sums_powers() {
        let pp = PowerParams::new(2.5, 2.5).unwrap();
        let pairs = [0.3, 0.3, 0.3, 0.3];
        for split in 1..=4 {
            let chain = theorem34_rhs_chain(&pairs, &[0.6, 0.5, 0.4, 0.3], split, &pp).unwrap();
            assert!((chain.rhs - 4.0 * 0.3f64.powf(2.5)).abs() < 1e-15);
            assert!(chain.weights.iter().all(|&w| w == 1.0));
        }
    }

    #[test]
    fn chain_weights_follow_proof() {
        let pp = PowerParams::new(2.0, 1.0).unwrap();
        let h = pp.h;
        let chain = theorem34_rhs_chain(&[0.1, 0.2, 0.3, 0.4, 0.5], &[1.0; 5], 3, &pp).unwrap();
        let expected = [1.0, h, h.powi(3), h.powi(3), h.powi(2)];
        for (w, e) in chain.weights.iter().zip(expected) {
            assert!((w - e).abs() < 1e-15);
        }
        let literal = literal_chain_rhs(&[0.1, 0.2, 0.3, 0.4, 0.5], 3, &pp);
        assert!(literal <= chain.rhs);
    }

    #[test]
    fn chain_errors() {
        let pp = PowerParams::new(2.0, 1.0).unwrap();
        assert!(theorem34_rhs_chain(&[0.1, 0.2], &[0.3], 1, &pp).is_err());
        assert!(theorem34_rhs_chain(&[0.1], &[0.1], 1, &pp).is_err());
        assert!(theorem34_rhs_chain(&[0.1, 0.2], &[0.3, 0.2], 0, &pp).is_err());
        assert!(theorem34_rhs_chain(&[0.1, 0.2], &[0.3, 0.2], 3, &pp).is_err());
    }

    #[test]
    fn split_selection() {
        let pp = PowerParams::new(2.0, 1.0).unwrap();
        // Ascending pairs: first regime holds everywhere.
        let pairs = [0.1, 0.2, 0.3];
        let tails = [0.374, 0.3606, 0.3];
        let chosen = select_split(&pairs, &tails, &pp).unwrap().unwrap();
        assert!(chosen.certificate.passed());
        // Premises that cannot hold for any split.
        let none = select_split(&[0.5, 0.1, 0.3], &[0.6, 0.2, 0.3], &pp).unwrap();
        assert!(none.is_none());
    }

    proptest! {
        #[test]
        fn power_inequality_random(x in 0.0f64..=1.0, t in 1.0f64..1e3) {
            prop_assert!(lemma31_check(x, t).unwrap() >= -1e-12);
        }

        #[test]
        fn rhs_non_increasing_in_alpha(
            a in 0.0f64..1.0, b in 0.0f64..1.0, beta in 0.0f64..2.0, da in 0.0f64..3.0,
        ) {
            let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
            let alpha = 2.0f64.max(beta);
            let r1 = theorem32_rhs(hi, lo, &PowerParams::new(alpha, beta).unwrap()).unwrap();
            let r2 = theorem32_rhs(hi, lo, &PowerParams::new(alpha + da, beta).unwrap()).unwrap();
            prop_assert!(r2 <= r1 + 1e-15);
        }
    }
}
