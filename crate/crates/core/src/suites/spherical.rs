
use super::oracle::{angle, triangle_area, vertex_angle};
use super::{run_trials, Acc, Tolerances};
use crate::multivec::det;
use crate::sampling::trial_seed;
use crate::simplex_trig::{
    five_parts_residual, four_parts_residual, sample_simplex, spherical_cosine_rule, spherical_excess,
    spherical_polar_cosine_rule, spherical_sine_constant, SphericalTriangle,
};

pub const DEFAULT_TRIALS: usize = 10_000;

pub const TOLERANCES: Tolerances = &[
    ("cosine_rule", 1e-9),
    ("sine_rule", 1e-9),
    ("polar_cosine_rule", 1e-9),
    ("sine_consistency", 1e-9),
    ("excess", 1e-9),
    ("four_parts", 1e-9),
    ("five_parts", 1e-9),
];

const LABELS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub fn run(trials: usize, seed: u64) -> Acc {
    run_trials(trials, |t| {
        let mut acc = Acc::default();
        let c = match sample_simplex(3, trial_seed(seed, t as u64)) {
            Ok(c) => c,
            Err(_) => {
                acc.record("cosine_rule", f64::INFINITY);
                return acc;
            }
        };
        let v = &c.vectors;
        let side = |a: usize, b: usize| angle(&v[a], &v[b]);
        // oracle angle at each vertex
        let oa = [vertex_angle(&v[0], &v[1], &v[2]), vertex_angle(&v[1], &v[0], &v[2]), vertex_angle(&v[2], &v[0], &v[1])];
        let Ok(tri) = SphericalTriangle::from_sides(side(0, 1), side(0, 2), side(1, 2)) else {
            acc.record("cosine_rule", f64::INFINITY);
            return acc;
        };
        for [i, j, k] in LABELS {
            acc.record_result("cosine_rule", spherical_cosine_rule(side(i, j), side(i, k), side(j, k)).map(|a| a - oa[j]));
            acc.record(
                "sine_rule",
                oa[i].sin() / side(j, k).sin() - oa[j].sin() / side(i, k).sin(),
            );
            acc.record_result(
                "polar_cosine_rule",
                spherical_polar_cosine_rule(oa[i], oa[j], oa[k]).map(|s| s - side(j, k)),
            );
        }
        let k_oracle = oa[0].sin() / side(1, 2).sin();
        acc.record_result(
            "sine_consistency",
            spherical_sine_constant(side(0, 1), side(0, 2), side(1, 2)).map(|k| k - k_oracle),
        );
        // the generalized sine is the volume spanned by the vertex vectors
        acc.record_result(
            "sine_consistency",
            det(&crate::multivec::rows_matrix(v)).map(|d| d.abs() - tri.gsin),
        );
        acc.record_result(
            "excess",
            spherical_excess(oa[0], oa[1], oa[2]).map(|e| e - triangle_area(&v[0], &v[1], &v[2])),
        );
        // parts formulas on the oracle angles
        let ot = SphericalTriangle { theta: [side(1, 2), side(0, 2), side(0, 1)], alpha: oa, ..tri };
        acc.record("four_parts", four_parts_residual(&ot));
        acc.record("five_parts", five_parts_residual(&ot));
        acc
    })
}
