use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use wmono_core::measures::{OracleOptions, RoofOptions};
use wmono_core::monogamy::VerifyOptions;

#[derive(Args, Debug)]
pub struct ConfigArgs {
    /// Root seed for every randomized step.
    #[arg(long, global = true, env = "WMONO_SEED", default_value_t = 0)]
    seed: u64,
    /// Random restarts of the convex-roof optimizer.
    #[arg(long, global = true, default_value_t = 200)]
    restarts: usize,
    /// Verdict tolerance; by default 1e-9 for closed-form values, 5e-3 otherwise.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Skip projecting pair states onto their local supports, so every mixed pair
    /// larger than 2x2 goes through the optimizer.
    #[arg(long, global = true)]
    no_compress: bool,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub restarts: usize,
    pub tolerance: Option<f64>,
    pub compress_support: bool,
}

impl ConfigArgs {
    pub fn resolve(&self) -> anyhow::Result<RunConfig> {
        if self.restarts < 1 {
            bail!("--restarts must be at least 1");
        }
        if let Some(t) = self.tolerance {
            if t.is_nan() || t <= 0.0 {
                bail!("--tolerance must be positive, got {t}");
            }
        }
        Ok(RunConfig {
            seed: self.seed,
            restarts: self.restarts,
            tolerance: self.tolerance,
            compress_support: !self.no_compress,
        })
    }
}

impl RunConfig {
    pub fn roof(&self) -> RoofOptions {
        RoofOptions {
            restarts: self.restarts,
            seed: self.seed,
            ..RoofOptions::default()
        }
    }

    pub fn oracle(&self) -> OracleOptions {
        OracleOptions {
            roof: self.roof(),
            compress_support: self.compress_support,
        }
    }

    pub fn verify(&self) -> VerifyOptions {
        VerifyOptions {
            oracle: self.oracle(),
            tolerance: self.tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn out_path(out: &Option<PathBuf>) -> Option<&Path> {
    out.as_deref()
}

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
