//! Dormand–Prince 5(4) with adaptive steps and cubic Hermite dense output.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
}

impl OdeOptions {
    pub fn new(rel_tol: f64) -> Self {
        Self { rel_tol, abs_tol: rel_tol, max_step: f64::INFINITY }
    }

    pub fn with_max_step(mut self, h: f64) -> Self {
        self.max_step = h;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    /// Conserved quantities per sample, empty until [`Trajectory::fill_ledger`].
    pub ledger: Vec<Vec<f64>>,
    pub steps: usize,
}

impl Trajectory {
    pub fn fill_ledger(&mut self, conserved: &dyn Fn(&[f64]) -> Vec<f64>) {
        self.ledger = self.states.iter().map(|s| conserved(s)).collect();
    }

    /// Largest change of each ledger column relative to max(1, |initial|).
    pub fn max_relative_drift(&self) -> f64 {
        let Some(first) = self.ledger.first() else { return 0.0 };
        let mut worst = 0.0f64;
        for row in &self.ledger {
            for (x, x0) in row.iter().zip(first) {
                worst = worst.max((x - x0).abs() / x0.abs().max(1.0));
            }
        }
        worst
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates y' = rhs(t, y) from t_span.0 to t_span.1 and reports the state
/// at each of `samples` (ascending, inside the span).
pub fn integrate(
    rhs: &dyn Fn(f64, &[f64]) -> Vec<f64>,
    y0: &[f64],
    t_span: (f64, f64),
    opts: &OdeOptions,
    samples: &[f64],
) -> Result<Trajectory> {
    let (t_start, t_end) = t_span;
    if !(opts.rel_tol >= 1e-12) {
        return Err(Error::Domain(format!("rel_tol {} below 1e-12", opts.rel_tol)));
    }
    if !(t_end > t_start) {
        return Err(Error::Domain(format!("empty time span ({t_start}, {t_end})")));
    }
    for w in samples.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Domain("sample times must be strictly increasing".into()));
        }
    }
    if samples.iter().any(|&s| s < t_start || s > t_end) {
        return Err(Error::Domain("sample time outside the span".into()));
    }

    let n = y0.len();
    let mut traj = Trajectory { times: vec![], states: vec![], ledger: vec![], steps: 0 };
    let mut next = 0;
    let mut t = t_start;
    let mut y = y0.to_vec();
    let mut f = rhs(t, &y);
    while next < samples.len() && samples[next] == t {
        traj.times.push(t);
        traj.states.push(y.clone());
        next += 1;
    }

    let span = t_end - t_start;
    let mut h = (1e-3 * span).min(opts.max_step);
    let mut k = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    while t < t_end {
        // land exactly on the next sample time
        let target = samples.get(next).copied().filter(|&s| s < t_end).unwrap_or(t_end);
        let proposed = h;
        let clipped = t + h >= target;
        if clipped {
            h = target - t;
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow(t));
        }
        k[0].clone_from(&f);
        for s in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += h * A[s][j] * kj[i];
                }
                tmp[i] = acc;
            }
            k[s] = rhs(t + C[s] * h, &tmp);
        }
        // stage 7 is evaluated at the fifth-order solution (FSAL)
        let y_new = tmp.clone();
        let mut err = 0.0;
        for i in 0..n {
            let e: f64 = (0..7).map(|s| E[s] * k[s][i]).sum::<f64>() * h;
            let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs());
            err += (e / sc).powi(2);
        }
        let err = (err / n.max(1) as f64).sqrt();
        if err <= 1.0 {
            let t_new = if clipped { target } else { t + h };
            let f_new = k[6].clone();
            while next < samples.len() && samples[next] <= t_new {
                traj.times.push(samples[next]);
                traj.states.push(y_new.clone());
                next += 1;
            }
            t = t_new;
            y = y_new;
            f = f_new;
            traj.steps += 1;
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = if clipped { proposed.max(h * fac) } else { h * fac }.min(opts.max_step);
        } else {
            let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 1.0) } else { 0.1 };
            h *= fac;
        }
    }
    Ok(traj)
}

/// Evenly spaced sample times covering [t0, t1] inclusive.
pub fn linspace(t0: f64, t1: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![t0];
    }
    (0..count).map(|i| if i + 1 == count { t1 } else { t0 + (t1 - t0) * i as f64 / (count - 1) as f64 }).collect()
}
