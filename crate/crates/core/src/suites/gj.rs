use super::{run_trials, Acc, Tolerances};
use crate::elliptic::complete_k_m;
use crate::gjelliptic::{curve_residuals, gj_addition, gj_derivative_residuals, gj_eval, gj_invert_s, GJModuli, Sign};
use crate::sampling::{rng_from_seed, trial_seed, uniform};

pub const DEFAULT_TRIALS: usize = 1000;

pub const TOLERANCES: Tolerances = &[
    ("identities", 1e-11),
    ("reduction_vs_hyperelliptic", 1e-10),
    ("derivatives", 1e-6),
    ("addition", 1e-9),
    ("curve.genus2", 1e-10),
    ("curve.elliptic", 1e-10),
];

pub fn run(trials: usize, seed: u64) -> Acc {
    run_trials(trials, |t| {
        let mut acc = Acc::default();
        let mut rng = rng_from_seed(trial_seed(seed, t as u64));
        let k1 = uniform(&mut rng, 0.05, 0.95);
        let k2 = k1 * uniform(&mut rng, 0.0, 1.0);
        let Ok(md) = GJModuli::new(k1, k2) else {
            acc.record("identities", f64::INFINITY);
            return acc;
        };
        let (u, v) = (uniform(&mut rng, -6.0, 6.0), uniform(&mut rng, -6.0, 6.0));
        acc.record("identities", gj_eval(u, &md).max_identity_residual(&md));
        acc.record("derivatives", gj_derivative_residuals(u, &md).max());
        for sign in [Sign::Plus, Sign::Minus] {
            match gj_addition(u, v, sign, &md) {
                Ok(a) => {
                    let w = gj_eval(a.u, &md);
                    let e = [a.s - w.s, a.c - w.c, a.d1 - w.d1, a.d2 - w.d2];
                    acc.record("addition", e.iter().fold(0.0f64, |m, x| m.max(x.abs())));
                }
                Err(_) => acc.record("addition", f64::INFINITY),
            }
        }
        let c = curve_residuals(u, &md);
        acc.record("curve.genus2", c.genus2);
        acc.record("curve.elliptic", c.elliptic);
        // inside the first quarter period s is monotone, so the integral inverts it
        let quarter = complete_k_m(md.kappa2()) / md.k2p2().sqrt();
        let w = uniform(&mut rng, -0.95, 0.95) * quarter;
        acc.record_result("reduction_vs_hyperelliptic", gj_invert_s(gj_eval(w, &md).s, &md).map(|x| x - w));
        acc
    })
}
