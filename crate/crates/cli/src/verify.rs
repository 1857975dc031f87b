use anyhow::{bail, Result};
use clap::{Args, Subcommand};
use gjtrig::suites::{run_all, run_suite, SuiteOptions, SUITES, UNIFORMIZE_PARTS};

use crate::Output;

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct VerifyArgs {
    #[command(subcommand)]
    part: Option<VerifyPart>,
    /// Suite name or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Trials per suite; each suite has its own default.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Multiplies every tolerance.
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
    /// Add wall time to the report (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum VerifyPart {
    /// Uniformization checks with a single tolerance.
    Uniformize {
        /// One of spherical, symmetric-tet, gj-id.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replaces every tolerance of the part.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        timing: bool,
    },
}

fn render(report: &gjtrig::suites::SuiteReport) -> Result<Output> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    Ok(Output { text, pass: report.pass })
}

pub fn run(a: VerifyArgs) -> Result<Output> {
    if let Some(VerifyPart::Uniformize { suite, trials, seed, tol, timing }) = a.part {
        if !UNIFORMIZE_PARTS.contains(&suite.as_str()) {
            bail!("unknown uniformize suite {suite}; expected one of {}", UNIFORMIZE_PARTS.join(", "));
        }
        if let Some(t) = tol {
            if !(t >= 0.0) {
                bail!("tolerance {t} must be non-negative");
            }
        }
        let opts = SuiteOptions { trials, seed, timing, tol_override: tol, ..SuiteOptions::default() };
        return render(&run_suite(&format!("uniformize/{suite}"), &opts)?);
    }
    if !(a.tol_scale > 0.0 && a.tol_scale.is_finite()) {
        bail!("--tol-scale must be positive");
    }
    let opts = SuiteOptions { trials: a.trials, seed: a.seed, tol_scale: a.tol_scale, timing: a.timing, ..SuiteOptions::default() };
    let report = match a.suite.as_str() {
        "all" => run_all(&opts)?,
        s if SUITES.contains(&s) => run_suite(s, &opts)?,
        s => bail!("unknown suite {s}; expected all or one of {}", SUITES.join(", ")),
    };
    render(&report)
}
