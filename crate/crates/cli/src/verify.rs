use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use wmono_core::monogamy::{
    cren_equality_check, example_comparison, lemma21_equality_check, qubit_power_checks,
    verify_theorem32, verify_theorem34, ExampleComparison, MonogamyMeasure, MonogamyReport,
    PowerParams, Verdict,
};
use wmono_core::wclass::Partition;

use crate::config::{emit, fmt_f64, out_path, Format, RunConfig};
use crate::input::{load_state, LoadedState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemma21,
    Thm32,
    Thm34,
    Cren,
    QubitPowers,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureChoice {
    Coa,
    Cren,
    Both,
}

impl MeasureChoice {
    fn measures(self) -> Vec<MonogamyMeasure> {
        match self {
            MeasureChoice::Coa => vec![MonogamyMeasure::Coa],
            MeasureChoice::Cren => vec![MonogamyMeasure::Cren],
            MeasureChoice::Both => vec![MonogamyMeasure::Coa, MonogamyMeasure::Cren],
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// State file, or `example-3.3` for the built-in example.
    state: String,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Exponent of the concurrence polygamy check (must be <= 0).
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    polygamy_alpha: f64,
    #[arg(long, value_enum, default_value = "both")]
    measure: MeasureChoice,
    /// Partition such as `A|BC|D`; the first block is the focus. By default every
    /// suite enumerates its own partitions.
    #[arg(long)]
    partition: Option<String>,
    /// Split index of the chained bound (blocks P2..Ps take pair <= tail).
    #[arg(long)]
    split: Option<usize>,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub holds: usize,
    pub violated: usize,
    pub premises_unmet: usize,
}

impl Counts {
    pub fn add(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::PremisesUnmet => self.premises_unmet += 1,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Params {
    pub beta: f64,
    pub alpha: f64,
    pub polygamy_alpha: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub state: String,
    pub dims: Vec<usize>,
    pub suite: Suite,
    pub params: Params,
    pub config: RunConfig,
    pub summary: Counts,
    pub reports: Vec<MonogamyReport>,
    /// Suites that did not apply to this state, with the reason.
    pub skipped: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example_comparison: Option<ExampleComparison>,
}

struct Ctx<'a> {
    loaded: &'a LoadedState,
    args: &'a VerifyArgs,
    pp: PowerParams,
    config: &'a RunConfig,
    partition: Option<Partition>,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.loaded.state.shape().num_sites()
    }

    /// The user partition, or every full-cover 3-block partition with every focus.
    fn three_block_instances(&self) -> anyhow::Result<Vec<Partition>> {
        if let Some(p) = &self.partition {
            return Ok(vec![p.clone()]);
        }
        let mut out = Vec::new();
        for p in Partition::all_covering(self.n(), 3)? {
            for focus in 0..3 {
                out.push(p.with_focus(focus)?);
            }
        }
        Ok(out)
    }

    /// The user partition, or the finest partition with each site as focus.
    fn finest_instances(&self) -> anyhow::Result<Vec<Partition>> {
        if let Some(p) = &self.partition {
            return Ok(vec![p.clone()]);
        }
        let finest = Partition::finest(self.n())?;
        (0..self.n()).map(|f| Ok(finest.with_focus(f)?)).collect()
    }
}

fn run_suite(
    suite: Suite,
    ctx: &Ctx,
    reports: &mut Vec<MonogamyReport>,
    skipped: &mut Vec<String>,
) -> anyhow::Result<()> {
    let state = &ctx.loaded.state;
    let opts = ctx.config.verify();
    let n = ctx.n();
    match suite {
        Suite::Lemma21 => {
            let parts = if n >= 3 {
                ctx.three_block_instances()?
            } else {
                ctx.finest_instances()?
            };
            for p in parts {
                reports.extend(lemma21_equality_check(state, &p, 0, &opts)?);
            }
        }
        Suite::Thm32 if n < 3 && ctx.partition.is_none() => {
            skipped.push("thm32: needs at least three sites".into())
        }
        Suite::Thm32 => {
            for p in ctx.three_block_instances()? {
                for &m in &ctx.args.measure.measures() {
                    reports.push(verify_theorem32(state, &p, &ctx.pp, m, &opts)?);
                }
            }
        }
        Suite::Thm34 if n < 3 && ctx.partition.is_none() => {
            skipped.push("thm34: needs at least three sites".into())
        }
        Suite::Thm34 => {
            for p in ctx.finest_instances()? {
                for &m in &ctx.args.measure.measures() {
                    reports.push(verify_theorem34(
                        state,
                        &p,
                        &ctx.pp,
                        m,
                        ctx.args.split,
                        &opts,
                    )?);
                }
            }
        }
        Suite::Cren => {
            let p = match &ctx.partition {
                Some(p) => p.clone(),
                None => Partition::finest(n)?,
            };
            reports.push(cren_equality_check(state, &p, 0, &opts)?);
        }
        Suite::QubitPowers if !state.shape().is_qubits() => {
            skipped.push("qubit-powers: state is not made of qubits".into())
        }
        Suite::QubitPowers => reports.extend(qubit_power_checks(
            state,
            ctx.args.alpha,
            ctx.args.polygamy_alpha,
            &opts,
        )?),
        Suite::All => {
            for s in [
                Suite::Lemma21,
                Suite::Thm32,
                Suite::Thm34,
                Suite::Cren,
                Suite::QubitPowers,
            ] {
                run_suite(s, ctx, reports, skipped)?;
            }
        }
    }
    Ok(())
}

pub fn run(args: VerifyArgs, config: &RunConfig) -> anyhow::Result<ExitCode> {
    let loaded = load_state(&args.state)?;
    let pp = PowerParams::new(args.alpha, args.beta)?;
    let partition = args
        .partition
        .as_deref()
        .map(Partition::parse)
        .transpose()
        .context("invalid --partition")?;
    if let Some(p) = &partition {
        p.validate(loaded.state.shape())
            .context("invalid --partition")?;
    }
    if args.polygamy_alpha.is_nan() || args.polygamy_alpha > 0.0 {
        bail!("--polygamy-alpha must be <= 0");
    }
    let ctx = Ctx {
        loaded: &loaded,
        args: &args,
        pp,
        config,
        partition,
    };
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    run_suite(args.suite, &ctx, &mut reports, &mut skipped)?;

    let example = if args.suite == Suite::All && loaded.is_example() {
        Some(example_comparison(&config.oracle())?)
    } else {
        None
    };
    let mut summary = Counts::default();
    for r in &reports {
        summary.add(r.verdict);
    }
    let output = VerifyOutput {
        state: loaded.name.clone(),
        dims: loaded.state.shape().dims().to_vec(),
        suite: args.suite,
        params: Params {
            beta: args.beta,
            alpha: args.alpha,
            polygamy_alpha: args.polygamy_alpha,
        },
        config: config.clone(),
        summary,
        reports,
        skipped,
        example_comparison: example,
    };
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&output)? + "\n",
        Format::Csv => to_csv(&output.reports),
    };
    emit(out_path(&args.out), &text)?;
    Ok(if summary.violated > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn to_csv(reports: &[MonogamyReport]) -> String {
    let mut s = String::from("id,instance,lhs,rhs,residual,tolerance,verdict\n");
    for r in reports {
        let verdict = match r.verdict {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::PremisesUnmet => "premises-unmet",
        };
        s.push_str(&format!(
            "{},\"{}\",{},{},{},{},{}\n",
            r.id,
            r.instance,
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.residual),
            fmt_f64(r.tolerance),
            verdict
        ));
    }
    s
}
