use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use wmono_core::monogamy::{MonogamyReport, Relation};

use crate::verify::{Counts, VerifyOutput};

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Report files written by `verify --format json`.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

/// The residual furthest on the wrong side: the smallest for inequalities, the
/// largest in magnitude for equalities.
fn badness(r: &MonogamyReport) -> f64 {
    match r.relation {
        Relation::GreaterEq => -r.residual,
        Relation::Equal => r.residual.abs(),
    }
}

pub fn summarize(outputs: &[VerifyOutput]) -> String {
    let mut suites: BTreeMap<&str, Counts> = BTreeMap::new();
    let mut worst: BTreeMap<&str, (usize, &MonogamyReport)> = BTreeMap::new();
    for r in outputs.iter().flat_map(|o| &o.reports) {
        suites.entry(&r.suite).or_default().add(r.verdict);
        let entry = worst.entry(&r.id).or_insert((0, r));
        entry.0 += 1;
        if badness(r) > badness(entry.1) {
            entry.1 = r;
        }
    }
    let mut s = format!(
        "{:<14} {:>7} {:>9} {:>15}\n",
        "suite", "holds", "violated", "premises-unmet"
    );
    let mut total = Counts::default();
    for (suite, c) in &suites {
        s.push_str(&format!(
            "{suite:<14} {:>7} {:>9} {:>15}\n",
            c.holds, c.violated, c.premises_unmet
        ));
        total.holds += c.holds;
        total.violated += c.violated;
        total.premises_unmet += c.premises_unmet;
    }
    s.push_str(&format!(
        "\n{:<16} {:>9} {:>24}\n",
        "id", "instances", "worst residual"
    ));
    for (id, (count, r)) in &worst {
        s.push_str(&format!("{id:<16} {count:>9} {:>24.6e}\n", r.residual));
    }
    s.push_str(&format!(
        "\nreports: {}  holds: {}  premises-unmet: {}\nviolations: {}\n",
        total.holds + total.violated + total.premises_unmet,
        total.holds,
        total.premises_unmet,
        total.violated
    ));
    s
}

pub fn run(args: ReportArgs) -> anyhow::Result<()> {
    let outputs = args
        .files
        .iter()
        .map(|f| {
            let text = std::fs::read_to_string(f)
                .with_context(|| format!("cannot read {}", f.display()))?;
            serde_json::from_str::<VerifyOutput>(&text)
                .with_context(|| format!("{} is not a verify report", f.display()))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    print!("{}", summarize(&outputs));
    Ok(())
}
