use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use wmono_core::monogamy::{
    published_example_values, sweep_f, sweep_inputs_from_state, SweepInputs,
};
use wmono_core::wclass::Partition;

use crate::config::{emit, fmt_f64, out_path, Format, RunConfig};
use crate::input::load_state;
use crate::verify::MeasureChoice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Measure values computed from the state.
    Oracle,
    /// The published values for the built-in example (lhs √5/3, pairs 2/3 and 1/3).
    PaperValues,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// State file or `example-3.3`; not needed with `--source paper-values`.
    state: Option<String>,
    /// Beta grid: `start:stop:step` or a comma-separated list.
    #[arg(long, default_value = "0:2:0.1")]
    beta: String,
    /// Alpha grid, same syntax.
    #[arg(long, default_value = "2")]
    alpha: String,
    #[arg(long, value_enum, default_value = "coa")]
    measure: MeasureChoice,
    #[arg(long, value_enum, default_value = "oracle")]
    source: Source,
    /// Three-block partition; defaults to A|B|C.
    #[arg(long)]
    partition: Option<String>,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

pub fn parse_grid(spec: &str) -> anyhow::Result<Vec<f64>> {
    let spec = spec.trim();
    if spec.is_empty() {
        bail!("empty grid");
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step): (f64, f64, f64) =
                (start.parse()?, stop.parse()?, step.parse()?);
            if step.is_nan() || step <= 0.0 || stop.is_nan() || stop < start {
                bail!("grid {spec} needs step > 0 and stop >= start");
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count)
                .map(|i| {
                    let x = start + i as f64 * step;
                    if (x - stop).abs() < 1e-9 * step {
                        stop
                    } else {
                        x
                    }
                })
                .collect())
        }
        [_] => spec
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .with_context(|| format!("bad grid value `{x}`"))
            })
            .collect(),
        _ => bail!("grid {spec} must be start:stop:step or a comma list"),
    }
}

pub fn run(args: SweepArgs, config: &RunConfig) -> anyhow::Result<()> {
    let betas = parse_grid(&args.beta).context("invalid --beta")?;
    let alphas = parse_grid(&args.alpha).context("invalid --alpha")?;
    let measure = match args.measure {
        MeasureChoice::Coa => wmono_core::monogamy::MonogamyMeasure::Coa,
        MeasureChoice::Cren => wmono_core::monogamy::MonogamyMeasure::Cren,
        MeasureChoice::Both => bail!("sweep takes a single measure"),
    };
    let inputs = match args.source {
        Source::PaperValues => {
            let v = published_example_values();
            SweepInputs::new(v.c_a_bc, v.c_ab.max(v.c_ac), v.c_ab.min(v.c_ac))?
        }
        Source::Oracle => {
            let Some(source) = args.state.as_deref() else {
                bail!("oracle mode needs a state");
            };
            let loaded = load_state(source)?;
            let partition = match args.partition.as_deref() {
                Some(p) => Partition::parse(p).context("invalid --partition")?,
                None => Partition::parse("A|B|C")?,
            };
            sweep_inputs_from_state(&loaded.state, &partition, measure, &config.oracle())?.0
        }
    };
    let result = sweep_f(inputs, &betas, &alphas)?;
    let failing = result
        .comparisons
        .iter()
        .filter(|c| !c.alpha2_dominates)
        .count();
    if !result.comparisons.is_empty() {
        eprintln!(
            "f(beta,2) >= f(beta,alpha) fails on {failing} of {} grid points",
            result.comparisons.len()
        );
    }
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("beta,alpha,lhs_pow,max_term,min_term,f\n");
            for r in &result.rows {
                let cells = [r.beta, r.alpha, r.lhs_pow, r.max_term, r.min_term, r.f];
                s.push_str(&cells.map(fmt_f64).join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(&result)? + "\n",
    };
    emit(out_path(&args.out), &text)
}
