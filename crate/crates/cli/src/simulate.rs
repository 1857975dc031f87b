use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use gjtrig::dynamics::dell::{dell_quadric_flow, pack, quadrics, unpack, DellParams, DellSolution};
use gjtrig::dynamics::top3::{euler3_rhs, h1, h2, Inertia3, Top3Solution};
use gjtrig::dynamics::top4::{
    balanced_a1, euler4_closed_form, euler4_coefficients, euler4_rhs, hamiltonian_values, params_for_coefficients,
    Nambu4Params,
};
use gjtrig::dynamics::{integrate, linspace, OdeOptions, Trajectory};
use gjtrig::gjelliptic::GJModuli;
use gjtrig::sampling::{rng_from_seed, uniform};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use crate::Output;

#[derive(Subcommand)]
pub enum SimulateCommand {
    /// Free Euler top in three dimensions.
    Top3(SimArgs),
    /// Four-dimensional Euler top with three quadratic Hamiltonians.
    Top4(SimArgs),
    /// The quadric system of the elliptic Calogero-Moser type model.
    Dell(SimArgs),
}

#[derive(Args)]
pub struct SimArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    t0: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    t1: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Draws the parameters when --params is absent.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON file, or an inline JSON object.
    #[arg(long)]
    params: Option<String>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of output rows.
    #[arg(long, default_value_t = 201)]
    samples: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Top3Params {
    inertia: [f64; 3],
    m0: [f64; 3],
}

/// Either the closed-form family (amplitudes A2..A4 with A1 balanced) or
/// explicit Hamiltonian weights with an initial state.
#[derive(Deserialize)]
#[serde(untagged)]
enum Top4Params {
    ClosedForm {
        k1: f64,
        k2: f64,
        a: [f64; 3],
        #[serde(default = "one")]
        rate: f64,
        #[serde(default)]
        phase: f64,
    },
    Explicit {
        alpha: [f64; 4],
        beta: [f64; 4],
        m0: [f64; 4],
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DellSimParams {
    g: f64,
    kt: f64,
    energy: f64,
    #[serde(default)]
    phase: f64,
}

fn load<T: DeserializeOwned>(src: &str) -> Result<T> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?
    };
    serde_json::from_str(&text).context("parsing --params")
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn max_of(&self, col: &str) -> Option<f64> {
        // rows lead with t, which the header omits
        let i = self.header.iter().position(|h| h == col)? + 1;
        Some(self.rows.iter().map(|r| r[i]).fold(0.0, f64::max))
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn complex_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).flat_map(|i| [format!("{prefix}{i}_re"), format!("{prefix}{i}_im")]).collect()
}

fn times(a: &SimArgs) -> Result<Vec<f64>> {
    if !(a.t1 > a.t0) {
        bail!("need t1 > t0");
    }
    if a.samples < 2 {
        bail!("need at least two samples");
    }
    Ok(linspace(a.t0, a.t1, a.samples))
}

fn run_top3(a: &SimArgs) -> Result<Table> {
    let p = match &a.params {
        Some(src) => load::<Top3Params>(src)?,
        None => {
            let mut rng = rng_from_seed(a.seed);
            let i1 = uniform(&mut rng, 0.5, 1.5);
            let inertia = [i1, i1 + uniform(&mut rng, 0.2, 1.0), i1 + uniform(&mut rng, 1.3, 2.0)];
            Top3Params { inertia, m0: std::array::from_fn(|_| uniform(&mut rng, -1.0, 1.0)) }
        }
    };
    let inertia = Inertia3::new(p.inertia[0], p.inertia[1], p.inertia[2])?;
    let closed = match Top3Solution::new(inertia, p.m0) {
        Ok(s) => Some(s),
        Err(gjtrig::Error::Separatrix(_)) => {
            eprintln!("note: initial state on the separatrix, no closed-form column");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let ts = times(a)?;
    let rhs = |_t: f64, y: &[f64]| euler3_rhs(&[y[0], y[1], y[2]], &inertia).to_vec();
    let traj = integrate(&rhs, &p.m0, (a.t0, a.t1), &OdeOptions::new(a.rel_tol), &ts)?;
    let mut header = names("m", 3);
    header.extend(["h1".into(), "h2".into()]);
    if closed.is_some() {
        header.push("closed_form_error".into());
    }
    let rows = rows(&traj, |t, y| {
        let m = [y[0], y[1], y[2]];
        let mut r = m.to_vec();
        r.extend([h1(&m, &inertia), h2(&m)]);
        if let Some(s) = &closed {
            let c = s.state(t - a.t0);
            r.push((0..3).map(|i| (c[i] - m[i]).abs()).fold(0.0, f64::max));
        }
        r
    });
    Ok(Table { header, rows })
}

fn run_top4(a: &SimArgs) -> Result<Table> {
    let p = match &a.params {
        Some(src) => load::<Top4Params>(src)?,
        None => {
            let mut rng = rng_from_seed(a.seed);
            Top4Params::ClosedForm {
                k1: uniform(&mut rng, 0.3, 0.9),
                k2: uniform(&mut rng, 0.0, 0.25),
                a: std::array::from_fn(|_| uniform(&mut rng, 0.5, 1.5)),
                rate: 1.0,
                phase: 0.0,
            }
        }
    };
    let (params, m0, closed) = match p {
        Top4Params::Explicit { alpha, beta, m0 } => (Nambu4Params::new(alpha, beta)?, m0, None),
        Top4Params::ClosedForm { k1, k2, a: [a2, a3, a4], rate, phase } => {
            let md = GJModuli::new(k1, k2)?;
            let amp = [balanced_a1(a2, a3, a4, &md), a2, a3, a4];
            if !amp[0].is_finite() {
                bail!("amplitudes admit no real balanced first component");
            }
            let params = params_for_coefficients(&euler4_coefficients(amp, rate, k1, k2)?)?;
            let closed = move |t: f64| euler4_closed_form(t, amp, rate, &md, phase);
            (params, closed(a.t0), Some(closed))
        }
    };
    let ts = times(a)?;
    let rhs = |_t: f64, y: &[f64]| euler4_rhs(&[y[0], y[1], y[2], y[3]], &params).to_vec();
    let traj = integrate(&rhs, &m0, (a.t0, a.t1), &OdeOptions::new(a.rel_tol), &ts)?;
    let mut header = names("m", 4);
    header.extend(names("h", 3));
    if closed.is_some() {
        header.push("closed_form_error".into());
    }
    let rows = rows(&traj, |t, y| {
        let m = [y[0], y[1], y[2], y[3]];
        let mut r = m.to_vec();
        r.extend(hamiltonian_values(&m, &params));
        if let Some(f) = &closed {
            let c = f(t);
            r.push((0..4).map(|i| (c[i] - m[i]).abs()).fold(0.0, f64::max));
        }
        r
    });
    Ok(Table { header, rows })
}

fn run_dell(a: &SimArgs) -> Result<Table> {
    let p = match &a.params {
        Some(src) => load::<DellSimParams>(src)?,
        None => {
            let mut rng = rng_from_seed(a.seed);
            DellSimParams {
                g: uniform(&mut rng, 0.1, 0.5),
                kt: uniform(&mut rng, 0.3, 0.8),
                energy: uniform(&mut rng, -0.6, 0.6),
                phase: 0.0,
            }
        }
    };
    let params = DellParams::new(p.g, p.kt)?;
    let k = DellSolution::rate_for_energy(&params, p.energy);
    let sol = DellSolution::new(params, p.energy, k, p.phase)?;
    let ts = times(a)?;
    let rhs = |_t: f64, y: &[f64]| pack(&dell_quadric_flow(&unpack(y), &params));
    let traj = integrate(&rhs, &pack(&sol.state(a.t0)), (a.t0, a.t1), &OdeOptions::new(a.rel_tol), &ts)?;
    let mut header = complex_names("x", 6);
    header.extend(complex_names("q", 4));
    header.push("closed_form_error".into());
    let rows = rows(&traj, |t, y| {
        let x = unpack(y);
        let mut r = y.to_vec();
        r.extend(quadrics(&x, &params).iter().flat_map(|q| [q.re, q.im]));
        let c = sol.state(t);
        r.push((0..6).map(|i| (c[i] - x[i]).norm()).fold(0.0, f64::max));
        r
    });
    Ok(Table { header, rows })
}

fn rows(traj: &Trajectory, f: impl Fn(f64, &[f64]) -> Vec<f64>) -> Vec<Vec<f64>> {
    traj.times.iter().zip(&traj.states).map(|(&t, y)| std::iter::once(t).chain(f(t, y)).collect()).collect()
}

fn write_csv<W: std::io::Write>(w: W, table: &Table) -> Result<()> {
    let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    csv.write_record(std::iter::once("t").chain(table.header.iter().map(String::as_str)))?;
    for r in &table.rows {
        csv.write_record(r.iter().map(|x| format!("{x:e}")))?;
    }
    csv.flush()?;
    Ok(())
}

pub fn run(c: SimulateCommand) -> Result<Output> {
    let (name, a) = match &c {
        SimulateCommand::Top3(a) => ("top3", a),
        SimulateCommand::Top4(a) => ("top4", a),
        SimulateCommand::Dell(a) => ("dell", a),
    };
    if !(a.rel_tol > 0.0) {
        bail!("--rel-tol must be positive");
    }
    let table = match c {
        SimulateCommand::Top3(ref a) => run_top3(a)?,
        SimulateCommand::Top4(ref a) => run_top4(a)?,
        SimulateCommand::Dell(ref a) => run_dell(a)?,
    };
    match &a.out {
        Some(path) => {
            let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(std::io::BufWriter::new(file), &table)?;
            let summary = json!({
                "model": name,
                "rows": table.rows.len(),
                "max_closed_form_error": table.max_of("closed_form_error"),
            });
            Ok(Output::ok(serde_json::to_string_pretty(&summary)? + "\n"))
        }
        None => {
            let mut buf = vec![];
            write_csv(&mut buf, &table)?;
            Ok(Output::ok(String::from_utf8(buf)?))
        }
    }
}
