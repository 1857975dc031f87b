use anyhow::Result;
use clap::Args;
use gjtrig::sampling::trial_seed;
use gjtrig::simplex_trig::sample_simplex;

use crate::Output;

#[derive(Args)]
pub struct SampleArgs {
    /// Number of unit vectors, which is also the ambient dimension.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=8))]
    m: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of configurations, one JSON object per line.
    #[arg(long, default_value_t = 1)]
    count: u64,
}

pub fn run(a: SampleArgs) -> Result<Output> {
    let mut text = String::new();
    for i in 0..a.count {
        let c = sample_simplex(a.m as usize, trial_seed(a.seed, i))?;
        text += &serde_json::to_string(&c.gram.to_record())?;
        text.push('\n');
    }
    Ok(Output::ok(text))
}
