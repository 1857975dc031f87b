use super::{run_trials, Acc, Tolerances};
use crate::multivec::{cross_nd, det, dot, five_vector_identity_residual, nested_identity_residual, plucker_residual, residual_scale};
use crate::sampling::{gaussian_vec, rng_from_seed, trial_seed};

pub const DEFAULT_TRIALS: usize = 1000;

pub const TOLERANCES: Tolerances = &[
    ("nested.n3", 1e-9),
    ("nested.n4", 1e-9),
    ("nested.n5", 1e-9),
    ("plucker.n3", 1e-9),
    ("plucker.n4", 1e-9),
    ("plucker.n5", 1e-9),
    ("five_vector", 1e-9),
    ("cross.gram_norm", 1e-9),
];

const NESTED: [&str; 3] = ["nested.n3", "nested.n4", "nested.n5"];
const PLUCKER: [&str; 3] = ["plucker.n3", "plucker.n4", "plucker.n5"];

/// Residuals are divided by the product of the vector norms.
pub fn run(trials: usize, seed: u64) -> Acc {
    run_trials(trials, |t| {
        let mut rng = rng_from_seed(trial_seed(seed, t as u64));
        let mut acc = Acc::default();
        for (slot, n) in (3..=5).enumerate() {
            let vs: Vec<Vec<f64>> = (0..2 * n - 1).map(|_| gaussian_vec(&mut rng, n + 1)).collect();
            acc.record_result(NESTED[slot], nested_identity_residual(&vs).map(|r| r / residual_scale(&vs)));
            let vs: Vec<Vec<f64>> = (0..2 * n - 2).map(|_| gaussian_vec(&mut rng, n - 1)).collect();
            acc.record_result(PLUCKER[slot], plucker_residual(&vs).map(|r| r / residual_scale(&vs)));
        }
        let v: Vec<Vec<f64>> = (0..5).map(|_| gaussian_vec(&mut rng, 4)).collect();
        acc.record_result(
            "five_vector",
            five_vector_identity_residual(&v[0], &v[1], &v[2], &v[3], &v[4]).map(|r| r / residual_scale(&v)),
        );
        // |a₁ × a₂ × a₃|² against the Gram determinant
        let g = nalgebra::DMatrix::from_fn(3, 3, |i, j| dot(&v[i], &v[j]));
        let scale = residual_scale(&v[..3]).powi(2);
        acc.record_result(
            "cross.gram_norm",
            cross_nd(&v[..3]).and_then(|c| Ok((dot(&c, &c) - det(&g)?).abs() / scale)),
        );
        acc
    })
}
