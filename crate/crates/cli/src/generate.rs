use std::path::PathBuf;

use anyhow::bail;
use clap::Args;
use wmono_core::wclass::WCoefficients;

use crate::config::{emit, out_path, RunConfig};

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Write the built-in three-qubit example (2|100> + |010> + |001>)/sqrt(6).
    #[arg(long, conflicts_with_all = ["n", "d"])]
    example: bool,
    /// Number of parties.
    #[arg(short, required_unless_present = "example")]
    n: Option<usize>,
    /// Excitation levels per party; sites have d + 1 levels.
    #[arg(short, default_value_t = 1)]
    d: usize,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

pub fn run(args: GenerateArgs, config: &RunConfig) -> anyhow::Result<()> {
    let coeffs = if args.example {
        WCoefficients::three_qubit_example()
    } else {
        let n = args.n.unwrap_or_default();
        if n < 2 || args.d < 1 {
            bail!("need n >= 2 and d >= 1, got n={n}, d={}", args.d);
        }
        WCoefficients::random(n, args.d, config.seed)?
    };
    let mut text = coeffs.to_descriptor().to_json();
    text.push('\n');
    emit(out_path(&args.out), &text)
}
