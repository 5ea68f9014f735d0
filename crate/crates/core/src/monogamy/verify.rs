use serde::{Deserialize, Serialize};

use super::power::{literal_chain_rhs, select_split, theorem34_rhs_chain, PowerParams};
use super::report::{term, MonogamyReport, Premise, Relation};
use crate::measures::{
    pair_value, weighted_pure_value, MixedMeasure, OracleOptions, PairMethod, PairValue,
};
use crate::qudit::PureState;
use crate::wclass::{
    is_wclass_support, reduce_to_partition, site_name, Partition, PartitionedSource,
};
use crate::{Error, Result};

/// Tolerance when every value has a closed form.
pub const EXACT_TOL: f64 = 1e-9;
/// Tolerance when some value came from the convex-roof optimizer.
pub const ORACLE_TOL: f64 = 5e-3;
/// Measure values below this are reported as exactly zero.
const ZERO_FLOOR: f64 = 1e-12;

/// Measure entering the power-type bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonogamyMeasure {
    Coa,
    Cren,
}

impl MonogamyMeasure {
    pub fn mixed(self) -> MixedMeasure {
        match self {
            MonogamyMeasure::Coa => MixedMeasure::Coa,
            MonogamyMeasure::Cren => MixedMeasure::Cren,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub oracle: OracleOptions,
    /// Overrides the automatic choice between [`EXACT_TOL`] and [`ORACLE_TOL`].
    pub tolerance: Option<f64>,
}

impl VerifyOptions {
    fn tolerance(&self, exact: bool) -> f64 {
        self.tolerance
            .unwrap_or(if exact { EXACT_TOL } else { ORACLE_TOL })
    }
}

/// Measure between the sites in `left` and those in `right`, tracing out the rest.
pub fn cut_value(
    state: &PureState,
    left: &[usize],
    right: &[usize],
    measure: MixedMeasure,
    opts: &OracleOptions,
) -> Result<PairValue> {
    let partition = Partition::new(vec![left.to_vec(), right.to_vec()])?;
    let reduced = reduce_to_partition(state, &partition)?;
    let mut value = match &reduced.source {
        PartitionedSource::Pure(p) => {
            let dims = p.shape().dims();
            let amps: Vec<_> = p.amps().iter().copied().collect();
            PairValue {
                value: weighted_pure_value(&amps, dims[0], dims[1], measure.pure_measure()),
                method: PairMethod::Pure,
                effective_dims: [dims[0], dims[1]],
            }
        }
        PartitionedSource::Mixed(rho) => pair_value(rho, measure, opts)?,
    };
    if value.value < ZERO_FLOOR {
        value.value = 0.0;
    }
    Ok(value)
}

fn sites_label(sites: &[usize]) -> String {
    sites.iter().map(|&s| site_name(s)).collect()
}

fn cut_label(measure: MixedMeasure, left: &[usize], right: &[usize]) -> String {
    format!(
        "{}({}|{})",
        measure.name(),
        sites_label(left),
        sites_label(right)
    )
}

fn union(blocks: &[Vec<usize>]) -> Vec<usize> {
    let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
    all.sort_unstable();
    all
}

fn wclass_premise(state: &PureState) -> Premise {
    Premise::new("state has W-class support", is_wclass_support(state))
}

fn power_instance(partition: &Partition, pp: &PowerParams, measure: MonogamyMeasure) -> String {
    format!(
        "{} {} beta={} alpha={}",
        partition.label(),
        measure.mixed().name(),
        pp.beta,
        pp.alpha
    )
}

fn check_blocks(partition: &Partition, state: &PureState, min: usize) -> Result<()> {
    partition.validate(state.shape())?;
    if partition.num_blocks() < min {
        return Err(Error::Argument(format!(
            "partition {} needs at least {min} blocks",
            partition.label()
        )));
    }
    Ok(())
}

/// E^β(P1|P2P3) ≥ h·max^β + min^β over the two pair values, P1 being the first block.
pub fn verify_theorem32(
    state: &PureState,
    partition: &Partition,
    pp: &PowerParams,
    measure: MonogamyMeasure,
    opts: &VerifyOptions,
) -> Result<MonogamyReport> {
    check_blocks(partition, state, 3)?;
    if partition.num_blocks() != 3 {
        return Err(Error::Argument(format!(
            "partition {} must have exactly three blocks",
            partition.label()
        )));
    }
    let m = measure.mixed();
    let b = partition.blocks();
    let rest = union(&b[1..]);
    let whole = cut_value(state, &b[0], &rest, m, &opts.oracle)?;
    let p2 = cut_value(state, &b[0], &b[1], m, &opts.oracle)?;
    let p3 = cut_value(state, &b[0], &b[2], m, &opts.oracle)?;
    let mut pairs = [
        (p2, cut_label(m, &b[0], &b[1])),
        (p3, cut_label(m, &b[0], &b[2])),
    ];
    if pairs[0].0.value < pairs[1].0.value {
        pairs.swap(0, 1);
    }
    let exact = [whole, p2, p3].iter().all(|v| v.method.is_exact());
    let terms = vec![
        term(
            format!("{}^beta", pairs[0].1),
            pairs[0].0.value.powf(pp.beta),
            pp.h,
        ),
        term(
            format!("{}^beta", pairs[1].1),
            pairs[1].0.value.powf(pp.beta),
            1.0,
        ),
    ];
    Ok(MonogamyReport::new(
        "thm32",
        "thm32",
        power_instance(partition, pp, measure),
        Relation::GreaterEq,
        format!("{}^beta", cut_label(m, &b[0], &rest)),
        whole.value.powf(pp.beta),
        terms,
        vec![wclass_premise(state)],
        opts.tolerance(exact),
        exact,
    ))
}

/// Telescoped bound over blocks P2..Pm. With `split = None` the certified split
/// with the largest bound is used.
pub fn verify_theorem34(
    state: &PureState,
    partition: &Partition,
    pp: &PowerParams,
    measure: MonogamyMeasure,
    split: Option<usize>,
    opts: &VerifyOptions,
) -> Result<MonogamyReport> {
    check_blocks(partition, state, 3)?;
    let m = measure.mixed();
    let b = partition.blocks();
    let count = b.len();
    let mut pairs = Vec::with_capacity(count - 1);
    let mut tails = Vec::with_capacity(count - 1);
    let mut exact = true;
    for i in 1..count {
        let pair = cut_value(state, &b[0], &b[i], m, &opts.oracle)?;
        let tail = if i + 1 == count {
            pair
        } else {
            cut_value(state, &b[0], &union(&b[i..]), m, &opts.oracle)?
        };
        exact &= pair.method.is_exact() && tail.method.is_exact();
        pairs.push(pair.value);
        tails.push(tail.value);
    }
    let chain = match split {
        Some(s) => theorem34_rhs_chain(&pairs, &tails, s, pp)?,
        None => match select_split(&pairs, &tails, pp)? {
            Some(c) => c,
            None => theorem34_rhs_chain(&pairs, &tails, 1, pp)?,
        },
    };
    let terms = (1..count)
        .map(|i| {
            term(
                format!("{}^beta", cut_label(m, &b[0], &b[i])),
                pairs[i - 1].powf(pp.beta),
                chain.weights[i - 1],
            )
        })
        .collect();
    let mut premises = vec![wclass_premise(state)];
    premises.extend(chain.certificate.premises.iter().cloned());
    let split = chain.certificate.split;
    Ok(MonogamyReport::new(
        "thm34",
        "thm34",
        format!("{} split={split}", power_instance(partition, pp, measure)),
        Relation::GreaterEq,
        format!("{}^beta", cut_label(m, &b[0], &union(&b[1..]))),
        tails[0].powf(pp.beta),
        terms,
        premises,
        opts.tolerance(exact),
        exact,
    )
    .with_extra("split", split as f64)
    .with_extra("literal_rhs", literal_chain_rhs(&pairs, split, pp)))
}

fn full_cover_focus(state: &PureState, partition: &Partition, focus: usize) -> Result<()> {
    check_blocks(partition, state, 2)?;
    if !partition.covers(state.shape()) {
        return Err(Error::Argument(format!(
            "partition {} must cover every site",
            partition.label()
        )));
    }
    if focus >= partition.num_blocks() {
        return Err(Error::Argument(format!("focus block {focus} out of range")));
    }
    Ok(())
}

fn others(partition: &Partition, focus: usize) -> Vec<usize> {
    (0..partition.num_blocks())
        .filter(|&k| k != focus)
        .collect()
}

/// Squared-sum equalities for a W-class state: C²(P_s|rest) equals both Σ C²(P_s|P_k)
/// and Σ (C^a)²(P_s|P_k), and every pair has C = C^a.
pub fn lemma21_equality_check(
    state: &PureState,
    partition: &Partition,
    focus: usize,
    opts: &VerifyOptions,
) -> Result<Vec<MonogamyReport>> {
    full_cover_focus(state, partition, focus)?;
    let b = partition.blocks();
    let ks = others(partition, focus);
    let rest = union(&ks.iter().map(|&k| b[k].clone()).collect::<Vec<_>>());
    let whole = cut_value(
        state,
        &b[focus],
        &rest,
        MixedMeasure::Concurrence,
        &opts.oracle,
    )?;
    let premises = vec![wclass_premise(state)];
    let instance = format!("{} focus={}", partition.label(), sites_label(&b[focus]));
    let lhs_label = format!(
        "{}^2",
        cut_label(MixedMeasure::Concurrence, &b[focus], &rest)
    );

    let mut c_terms = Vec::new();
    let mut a_terms = Vec::new();
    let mut pair_reports = Vec::new();
    let mut exact_c = whole.method.is_exact();
    let mut exact_a = exact_c;
    for &k in &ks {
        let c = cut_value(
            state,
            &b[focus],
            &b[k],
            MixedMeasure::Concurrence,
            &opts.oracle,
        )?;
        let a = cut_value(state, &b[focus], &b[k], MixedMeasure::Coa, &opts.oracle)?;
        exact_c &= c.method.is_exact();
        exact_a &= a.method.is_exact();
        let c_label = cut_label(MixedMeasure::Concurrence, &b[focus], &b[k]);
        let a_label = cut_label(MixedMeasure::Coa, &b[focus], &b[k]);
        c_terms.push(term(format!("{c_label}^2"), c.value * c.value, 1.0));
        a_terms.push(term(format!("{a_label}^2"), a.value * a.value, 1.0));
        let exact = c.method.is_exact() && a.method.is_exact();
        pair_reports.push(MonogamyReport::new(
            "lemma21-pair",
            "lemma21",
            format!("{instance} pair={}", sites_label(&b[k])),
            Relation::Equal,
            a_label,
            a.value,
            vec![term(c_label, c.value, 1.0)],
            premises.clone(),
            opts.tolerance(exact),
            exact,
        ));
    }
    let lhs = whole.value * whole.value;
    let mut out = vec![
        MonogamyReport::new(
            "lemma21-sum",
            "lemma21",
            instance.clone(),
            Relation::Equal,
            lhs_label.clone(),
            lhs,
            c_terms,
            premises.clone(),
            opts.tolerance(exact_c),
            exact_c,
        ),
        MonogamyReport::new(
            "lemma21-sum-coa",
            "lemma21",
            instance,
            Relation::Equal,
            lhs_label,
            lhs,
            a_terms,
            premises,
            opts.tolerance(exact_a),
            exact_a,
        ),
    ];
    out.extend(pair_reports);
    Ok(out)
}

/// N²(P_s|rest) = Σ CREN²(P_s|P_k) for a W-class state.
pub fn cren_equality_check(
    state: &PureState,
    partition: &Partition,
    focus: usize,
    opts: &VerifyOptions,
) -> Result<MonogamyReport> {
    full_cover_focus(state, partition, focus)?;
    let b = partition.blocks();
    let ks = others(partition, focus);
    let rest = union(&ks.iter().map(|&k| b[k].clone()).collect::<Vec<_>>());
    let whole = cut_value(state, &b[focus], &rest, MixedMeasure::Cren, &opts.oracle)?;
    let mut exact = whole.method.is_exact();
    let mut terms = Vec::new();
    for &k in &ks {
        let v = cut_value(state, &b[focus], &b[k], MixedMeasure::Cren, &opts.oracle)?;
        exact &= v.method.is_exact();
        terms.push(term(
            format!("{}^2", cut_label(MixedMeasure::Cren, &b[focus], &b[k])),
            v.value * v.value,
            1.0,
        ));
    }
    Ok(MonogamyReport::new(
        "cren-sum",
        "cren",
        format!("{} focus={}", partition.label(), sites_label(&b[focus])),
        Relation::Equal,
        format!("N({}|{})^2", sites_label(&b[focus]), sites_label(&rest)),
        whole.value * whole.value,
        terms,
        vec![wclass_premise(state)],
        opts.tolerance(exact),
        exact,
    ))
}

/// Power relations on n-qubit states with party A (site 0) as focus:
///
/// * `c-power`: C^α(A|rest) ≥ Σ C^α(A|B_i) for α ≥ 2,
/// * `c-polygamy`: Σ C^α'(A|B_i) ≥ C^α'(A|rest) for α' ≤ 0,
/// * `coa-polygamy`: Σ (C^a)²(A|B_i) ≥ C²(A|rest),
/// * `n-power`: N^α(A|rest) ≥ Σ CREN^α(A|B_i) for α ≥ 2 on W-class states.
pub fn qubit_power_checks(
    state: &PureState,
    alpha: f64,
    polygamy_alpha: f64,
    opts: &VerifyOptions,
) -> Result<Vec<MonogamyReport>> {
    let shape = state.shape();
    if !shape.is_qubits() || shape.num_sites() < 2 {
        return Err(Error::Argument(
            "power relations need at least two qubits".into(),
        ));
    }
    if alpha.is_nan() || alpha < 2.0 {
        return Err(Error::Argument(format!("alpha must be >= 2, got {alpha}")));
    }
    if polygamy_alpha.is_nan() || polygamy_alpha > 0.0 {
        return Err(Error::Argument(format!(
            "polygamy exponent must be <= 0, got {polygamy_alpha}"
        )));
    }
    let n = shape.num_sites();
    let focus = [0usize];
    let rest: Vec<usize> = (1..n).collect();
    let o = &opts.oracle;
    let c_whole = cut_value(state, &focus, &rest, MixedMeasure::Concurrence, o)?;
    let n_whole = cut_value(state, &focus, &rest, MixedMeasure::Cren, o)?;
    let mut c = Vec::new();
    let mut a = Vec::new();
    let mut r = Vec::new();
    for i in 1..n {
        c.push(cut_value(
            state,
            &focus,
            &[i],
            MixedMeasure::Concurrence,
            o,
        )?);
        a.push(cut_value(state, &focus, &[i], MixedMeasure::Coa, o)?);
        r.push(cut_value(state, &focus, &[i], MixedMeasure::Cren, o)?);
    }
    let all_exact = |vs: &[PairValue], w: &PairValue| {
        w.method.is_exact() && vs.iter().all(|v| v.method.is_exact())
    };
    let instance = format!("{}-qubit focus=A", n);
    let whole_label = |m: MixedMeasure| cut_label(m, &focus, &rest);
    let pair_label = |m: MixedMeasure, i: usize| cut_label(m, &focus, &[i]);

    let mut out = Vec::new();

    let exact = all_exact(&c, &c_whole);
    let terms = (1..n)
        .map(|i| {
            term(
                format!("{}^alpha", pair_label(MixedMeasure::Concurrence, i)),
                c[i - 1].value.powf(alpha),
                1.0,
            )
        })
        .collect();
    out.push(MonogamyReport::new(
        "c-power",
        "qubit-powers",
        format!("{instance} alpha={alpha}"),
        Relation::GreaterEq,
        format!("{}^alpha", whole_label(MixedMeasure::Concurrence)),
        c_whole.value.powf(alpha),
        terms,
        vec![],
        opts.tolerance(exact),
        exact,
    ));

    let nonzero = c_whole.value > 0.0 && c.iter().all(|v| v.value > 0.0);
    let lhs: f64 = c
        .iter()
        .filter(|v| v.value > 0.0)
        .fold(0.0, |acc, v| acc + v.value.powf(polygamy_alpha));
    let whole_pow = if c_whole.value > 0.0 {
        c_whole.value.powf(polygamy_alpha)
    } else {
        0.0
    };
    out.push(MonogamyReport::new(
        "c-polygamy",
        "qubit-powers",
        format!("{instance} alpha={polygamy_alpha}"),
        Relation::GreaterEq,
        "sum_i C(A|B_i)^alpha",
        lhs,
        vec![term(
            format!("{}^alpha", whole_label(MixedMeasure::Concurrence)),
            whole_pow,
            1.0,
        )],
        vec![Premise::new("every concurrence is nonzero", nonzero)],
        opts.tolerance(exact),
        exact,
    ));

    let exact = all_exact(&a, &c_whole);
    let lhs = a.iter().fold(0.0, |acc, v| acc + v.value * v.value);
    out.push(MonogamyReport::new(
        "coa-polygamy",
        "qubit-powers",
        instance.clone(),
        Relation::GreaterEq,
        "sum_i C^a(A|B_i)^2",
        lhs,
        vec![term(
            format!("{}^2", whole_label(MixedMeasure::Concurrence)),
            c_whole.value * c_whole.value,
            1.0,
        )],
        vec![],
        opts.tolerance(exact),
        exact,
    ));

    let exact = all_exact(&r, &n_whole);
    let terms = (1..n)
        .map(|i| {
            term(
                format!("{}^alpha", pair_label(MixedMeasure::Cren, i)),
                r[i - 1].value.powf(alpha),
                1.0,
            )
        })
        .collect();
    out.push(MonogamyReport::new(
        "n-power",
        "qubit-powers",
        format!("{instance} alpha={alpha}"),
        Relation::GreaterEq,
        format!("N(A|{})^alpha", sites_label(&rest)),
        n_whole.value.powf(alpha),
        terms,
        vec![wclass_premise(state)],
        opts.tolerance(exact),
        exact,
    ));
    Ok(out)
}
