//! Randomized verification suites. Each suite draws its trials from
//! per-trial seeds, reduces residuals by maximum and compares them with fixed
//! tolerances, so reports do not depend on scheduling.

mod collapse;
mod dynamics;
mod elliptic;
mod gj;
mod hyperspherical;
mod mdim;
pub mod oracle;
mod spherical;
mod uniformize;
mod vector;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;

pub const SUITES: [&str; 9] =
    ["vector", "spherical", "hyperspherical", "mdim", "elliptic", "gj", "uniformize", "dynamics", "collapse"];

pub const UNIFORMIZE_PARTS: [&str; 3] = ["spherical", "symmetric-tet", "gj-id"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub name: String,
    /// `null` in JSON when some trial produced a non-finite residual.
    pub max_residual: f64,
    pub tolerance: f64,
    /// Number of residuals that entered the maximum.
    pub samples: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub tol_scale: f64,
    pub identities: Vec<IdentityResult>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_s: Option<f64>,
}

impl SuiteReport {
    pub fn identity(&self, name: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|i| i.name == name)
    }

    pub fn failures(&self) -> Vec<&IdentityResult> {
        self.identities.iter().filter(|i| !i.pass).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    /// Overrides the suite's default trial count.
    pub trials: Option<usize>,
    pub seed: u64,
    pub tol_scale: f64,
    /// Caps the worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub timing: bool,
    /// Replaces every residual tolerance (uniformize sub-suites only); see
    /// [`ORDER_CHECKS`].
    pub tol_override: Option<f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { trials: None, seed: 0, tol_scale: 1.0, threads: threads_from_env(), timing: false, tol_override: None }
    }
}

/// GJTRIG_THREADS as a positive count, if set.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("GJTRIG_THREADS").ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

/// Residual maxima keyed by identity name.
#[derive(Debug, Clone, Default)]
pub(crate) struct Acc {
    map: BTreeMap<&'static str, (f64, usize)>,
}

impl Acc {
    pub fn record(&mut self, name: &'static str, r: f64) {
        let r = if r.is_nan() { f64::INFINITY } else { r.abs() };
        let e = self.map.entry(name).or_insert((0.0, 0));
        e.0 = e.0.max(r);
        e.1 += 1;
    }

    /// Records an infinite residual when the computation itself failed.
    pub fn record_result(&mut self, name: &'static str, r: Result<f64>) {
        self.record(name, r.unwrap_or(f64::INFINITY));
    }

    pub fn merge(mut self, other: Acc) -> Acc {
        for (k, (r, n)) in other.map {
            let e = self.map.entry(k).or_insert((0.0, 0));
            e.0 = e.0.max(r);
            e.1 += n;
        }
        self
    }

    pub fn get(&self, name: &str) -> Option<(f64, usize)> {
        self.map.get(name).copied()
    }
}

/// Runs `trial` for indices 0..n in parallel and merges the results.
pub(crate) fn run_trials<F>(n: usize, trial: F) -> Acc
where
    F: Fn(usize) -> Acc + Sync + Send,
{
    (0..n).into_par_iter().map(trial).reduce(Acc::default, Acc::merge)
}

/// Checks whose tolerance bounds a convergence exponent rather than a
/// residual; a tolerance override leaves them alone.
pub const ORDER_CHECKS: [&str; 1] = ["symmetric.differential_order"];

/// Identity names with their documented tolerances, in report order.
pub(crate) type Tolerances = &'static [(&'static str, f64)];

fn finish(name: &str, trials: usize, opts: &SuiteOptions, tols: Tolerances, acc: &Acc) -> SuiteReport {
    let identities: Vec<IdentityResult> = tols
        .iter()
        .map(|&(id, tol)| {
            let tolerance = match opts.tol_override {
                Some(t) if !ORDER_CHECKS.contains(&id) => t,
                _ => tol * opts.tol_scale,
            };
            let (max_residual, samples) = acc.get(id).unwrap_or((f64::INFINITY, 0));
            let pass = samples > 0 && max_residual <= tolerance;
            IdentityResult { name: id.to_string(), max_residual, tolerance, samples, pass }
        })
        .collect();
    let pass = identities.iter().all(|i| i.pass);
    SuiteReport {
        schema: SCHEMA,
        suite: name.to_string(),
        trials,
        seed: opts.seed,
        tol_scale: opts.tol_scale,
        identities,
        pass,
        wall_time_s: None,
    }
}

type SuiteFn = fn(usize, u64) -> Acc;

fn lookup(name: &str) -> Option<(SuiteFn, Tolerances, usize)> {
    Some(match name {
        "vector" => (vector::run as SuiteFn, vector::TOLERANCES, vector::DEFAULT_TRIALS),
        "spherical" => (spherical::run, spherical::TOLERANCES, spherical::DEFAULT_TRIALS),
        "hyperspherical" => (hyperspherical::run, hyperspherical::TOLERANCES, hyperspherical::DEFAULT_TRIALS),
        "mdim" => (mdim::run, mdim::TOLERANCES, mdim::DEFAULT_TRIALS),
        "elliptic" => (elliptic::run, elliptic::TOLERANCES, elliptic::DEFAULT_TRIALS),
        "gj" => (gj::run, gj::TOLERANCES, gj::DEFAULT_TRIALS),
        "uniformize" => (uniformize::run, uniformize::TOLERANCES, uniformize::DEFAULT_TRIALS),
        "uniformize/spherical" => (uniformize::run_spherical, uniformize::SPHERICAL, uniformize::DEFAULT_TRIALS),
        "uniformize/symmetric-tet" => (uniformize::run_symmetric, uniformize::SYMMETRIC, uniformize::DEFAULT_TRIALS),
        "uniformize/gj-id" => (uniformize::run_gj_id, uniformize::GJ_ID, uniformize::DEFAULT_TRIALS),
        "dynamics" => (dynamics::run, dynamics::TOLERANCES, dynamics::DEFAULT_TRIALS),
        "collapse" => (collapse::run, collapse::TOLERANCES, collapse::DEFAULT_TRIALS),
        _ => return None,
    })
}

/// Default trial count of a suite.
pub fn default_trials(name: &str) -> Option<usize> {
    lookup(name).map(|s| s.2)
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs one suite by name: one of [`SUITES`] or `uniformize/<part>` with a
/// part from [`UNIFORMIZE_PARTS`].
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let (run, tols, default) = lookup(name).ok_or_else(|| Error::Domain(format!("unknown suite {name}")))?;
    if !(opts.tol_scale > 0.0) {
        return Err(Error::Domain(format!("tolerance scale {} must be positive", opts.tol_scale)));
    }
    let trials = opts.trials.unwrap_or(default);
    let start = Instant::now();
    let acc = with_pool(opts.threads, || run(trials, opts.seed))?;
    let mut report = finish(name, trials, opts, tols, &acc);
    if opts.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Runs every suite and concatenates the identities as `suite/identity`.
pub fn run_all(opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut identities = vec![];
    for name in SUITES {
        let r = run_suite(name, &SuiteOptions { timing: false, ..opts.clone() })?;
        identities.extend(r.identities.into_iter().map(|i| IdentityResult { name: format!("{name}/{}", i.name), ..i }));
    }
    let pass = identities.iter().all(|i| i.pass);
    Ok(SuiteReport {
        schema: SCHEMA,
        suite: "all".into(),
        // 0 stands for each suite's own default
        trials: opts.trials.unwrap_or(0),
        seed: opts.seed,
        tol_scale: opts.tol_scale,
        identities,
        pass,
        wall_time_s: opts.timing.then(|| start.elapsed().as_secs_f64()),
    })
}
