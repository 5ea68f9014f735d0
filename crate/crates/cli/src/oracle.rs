use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use serde::Serialize;
use wmono_core::measures::{
    coa_two_qubit, roof_maximize, roof_minimize, weighted_pure_value, wootters_concurrence,
    BoundDirection, MixedMeasure,
};
use wmono_core::wclass::{reduce_to_partition, Partition, PartitionedSource};

use crate::config::{fmt_f64, RunConfig};
use crate::input::load_state;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMeasure {
    Concurrence,
    Coa,
    Cren,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// State file or `example-3.3`.
    state: String,
    /// Two blocks, e.g. `A|B` or `A|BC`; other sites are traced out.
    #[arg(long)]
    pair: String,
    #[arg(long, value_enum, default_value = "concurrence")]
    measure: OracleMeasure,
    #[arg(long, value_enum, default_value = "text")]
    format: OracleFormat,
}

#[derive(Debug, Serialize)]
struct OracleOutput {
    pair: String,
    measure: &'static str,
    dims: [usize; 2],
    value: f64,
    direction: BoundDirection,
    restarts: usize,
    best_restart: usize,
    /// Closed-form value when one exists (2x2 pair or pure bipartition).
    exact: Option<f64>,
    exact_method: Option<&'static str>,
}

pub fn run(args: OracleArgs, config: &RunConfig) -> anyhow::Result<()> {
    let loaded = load_state(&args.state)?;
    let partition = Partition::parse(&args.pair).context("invalid --pair")?;
    if partition.num_blocks() != 2 {
        bail!("--pair needs exactly two blocks, got {}", partition.label());
    }
    partition
        .validate(loaded.state.shape())
        .context("invalid --pair")?;
    let measure = match args.measure {
        OracleMeasure::Concurrence => MixedMeasure::Concurrence,
        OracleMeasure::Coa => MixedMeasure::Coa,
        OracleMeasure::Cren => MixedMeasure::Cren,
    };
    let reduced = reduce_to_partition(&loaded.state, &partition)?;
    let rho = reduced.density();
    let dims = rho.shape().dims();
    let dims = [dims[0], dims[1]];
    let roof = config.roof();
    let est = match measure {
        MixedMeasure::Coa => roof_maximize(&rho, &roof)?,
        m => roof_minimize(&rho, m.pure_measure(), &roof)?,
    };
    let (exact, exact_method) = match &reduced.source {
        PartitionedSource::Pure(p) => {
            let amps: Vec<_> = p.amps().iter().copied().collect();
            let v = weighted_pure_value(&amps, dims[0], dims[1], measure.pure_measure());
            (Some(v), Some("pure-state formula"))
        }
        PartitionedSource::Mixed(m) if dims == [2, 2] => match measure {
            MixedMeasure::Coa => (Some(coa_two_qubit(m)?), Some("two-qubit assistance")),
            _ => (Some(wootters_concurrence(m)?), Some("wootters")),
        },
        PartitionedSource::Mixed(_) => (None, None),
    };
    let out = OracleOutput {
        pair: partition.label(),
        measure: measure.name(),
        dims,
        value: est.value,
        direction: est.direction,
        restarts: est.restarts,
        best_restart: est.best_restart,
        exact,
        exact_method,
    };
    match args.format {
        OracleFormat::Json => println!("{}", serde_json::to_string_pretty(&out)?),
        OracleFormat::Text => {
            println!("pair: {}", out.pair);
            println!("measure: {}", out.measure);
            println!("dims: {}x{}", dims[0], dims[1]);
            println!("roof: {}", fmt_f64(out.value));
            println!(
                "direction: {}",
                serde_json::to_value(out.direction)?.as_str().unwrap_or("")
            );
            println!("restarts: {}", out.restarts);
            println!("best restart: {}", out.best_restart);
            if let (Some(v), Some(how)) = (out.exact, out.exact_method) {
                println!("exact: {} ({how})", fmt_f64(v));
            }
        }
    }
    Ok(())
}
