use super::oracle::amplitude_by_quadrature;
use super::{run_trials, Acc, Tolerances};
use crate::elliptic::{complete_k, jacobi, spherical_addition_residuals, yang_baxter_residual};
use crate::sampling::{rng_from_seed, trial_seed, uniform};

pub const DEFAULT_TRIALS: usize = 1000;

pub const TOLERANCES: Tolerances = &[("landen_vs_quadrature", 1e-11), ("addition", 1e-11), ("yang_baxter", 1e-10)];

const GRID: usize = 100;

/// The Landen grid (nine moduli, 100 points over [−2K, 2K]) is fixed; the
/// trial count sets the number of random addition and Yang–Baxter draws.
pub fn run(trials: usize, seed: u64) -> Acc {
    let grid = run_trials(9 * GRID, |n| {
        let mut acc = Acc::default();
        let k = 0.1 * (n / GRID + 1) as f64;
        let m = k * k;
        let big_k = complete_k(k).unwrap_or(f64::NAN);
        let u = -2.0 * big_k + 4.0 * big_k * (n % GRID) as f64 / (GRID - 1) as f64;
        let phi = amplitude_by_quadrature(u, m);
        match jacobi(u, k) {
            Ok(t) => {
                let dn = (1.0 - m * phi.sin().powi(2)).sqrt();
                acc.record("landen_vs_quadrature", (t.sn - phi.sin()).abs().max((t.cn - phi.cos()).abs()).max((t.dn - dn).abs()));
            }
            Err(_) => acc.record("landen_vs_quadrature", f64::INFINITY),
        }
        acc
    });
    let draws = run_trials(trials, |t| {
        let mut acc = Acc::default();
        let mut rng = rng_from_seed(trial_seed(seed, t as u64));
        let k = uniform(&mut rng, 0.05, 0.95);
        let (aj, ak) = (uniform(&mut rng, -4.0, 4.0), uniform(&mut rng, -4.0, 4.0));
        acc.record_result("addition", spherical_addition_residuals(aj, ak, k).map(|r| r.max()));
        // arguments kept off the poles of 1/sn; the residual is relative to
        // the size of the w products
        let big_k = complete_k(k).unwrap_or(f64::NAN);
        let a1 = uniform(&mut rng, 0.1, 0.9) * big_k;
        let a2 = uniform(&mut rng, 0.1, 0.9) * big_k;
        let rho = uniform(&mut rng, 0.5, 2.0);
        let sn_min = [a1, a2, a1 + a2].iter().map(|&a| jacobi(a, k).map(|t| t.sn.abs()).unwrap_or(0.0)).fold(1.0, f64::min);
        let scale = (rho / sn_min).powi(2).max(1.0);
        acc.record_result("yang_baxter", yang_baxter_residual(a1, a2, rho, k).map(|r| r / scale));
        acc
    });
    grid.merge(draws)
}
