use super::oracle::{angle, vertex_angle};
use super::{run_trials, Acc, Tolerances};
use crate::elliptic::complete_k_m;
use crate::quad;
use crate::sampling::{rng_from_seed, trial_seed, uniform, unit_vec};
use crate::simplex_trig::symmetric_tetrahedron;
use crate::uniformize::{gj_identification_report, symmetric_tet_residuals, triangle_from_b, verify_a_parameterization};

pub const DEFAULT_TRIALS: usize = 500;

pub const SPHERICAL: Tolerances = &[
    ("b_triangle.rules", 1e-9),
    ("b_triangle.vector_angles", 1e-9),
    ("b_triangle.k_is_inverse_mu", 1e-9),
    ("b_triangle.amplitude_integral", 1e-9),
    ("a_param", 1e-8),
];

/// The order check allows step-halving ratios in [2^1.6, 2^2.4].
pub const SYMMETRIC: Tolerances = &[("symmetric.redsin", 1e-8), ("symmetric.differential_order", 0.4)];

pub const GJ_ID: Tolerances = &[("gj_id.spread", 1e-8), ("gj_id.identification", 1e-8)];

pub const TOLERANCES: Tolerances = &[
    ("b_triangle.rules", 1e-9),
    ("b_triangle.vector_angles", 1e-9),
    ("b_triangle.k_is_inverse_mu", 1e-9),
    ("b_triangle.amplitude_integral", 1e-9),
    ("a_param", 1e-8),
    ("symmetric.redsin", 1e-8),
    ("symmetric.differential_order", 0.4),
    ("gj_id.spread", 1e-8),
    ("gj_id.identification", 1e-8),
];

fn legendre_f(phi: f64, m: f64) -> f64 {
    quad::integrate(|t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, phi, 1e-14)
}

pub fn run_spherical(trials: usize, seed: u64) -> Acc {
    run_trials(trials, |t| {
        let mut acc = Acc::default();
        let mut rng = rng_from_seed(trial_seed(seed, t as u64));
        let mu = uniform(&mut rng, 0.2, 0.95);
        let two_k = 2.0 * complete_k_m(mu * mu);
        let w = [uniform(&mut rng, 0.2, 1.0), uniform(&mut rng, 0.2, 1.0), uniform(&mut rng, 0.2, 1.0)];
        let s: f64 = w.iter().sum();
        let u = match triangle_from_b(two_k * w[0] / s, two_k * w[1] / s, mu) {
            Ok(u) => u,
            Err(_) => {
                acc.record("b_triangle.rules", f64::INFINITY);
                return acc;
            }
        };
        acc.record("b_triangle.rules", u.residuals().max());
        let tri = &u.triangle;
        // explicit vectors with the triangle's sides
        let g = nalgebra::DMatrix::from_fn(3, 3, |i, j| if i == j { 1.0 } else { tri.side(i, j).cos() });
        match g.cholesky() {
            Some(ch) => {
                let l = ch.l();
                let v: Vec<Vec<f64>> = (0..3).map(|r| l.row(r).iter().cloned().collect()).collect();
                let oa = [vertex_angle(&v[0], &v[1], &v[2]), vertex_angle(&v[1], &v[0], &v[2]), vertex_angle(&v[2], &v[0], &v[1])];
                for i in 0..3 {
                    acc.record("b_triangle.vector_angles", oa[i] - u.alpha_b[i]);
                    acc.record("b_triangle.amplitude_integral", legendre_f(u.alpha_b[i], mu * mu) - u.b[i]);
                }
                acc.record("b_triangle.k_is_inverse_mu", oa[0].sin() / angle(&v[1], &v[2]).sin() - 1.0 / mu);
            }
            None => acc.record("b_triangle.vector_angles", f64::INFINITY),
        }
        acc.record_result("a_param", verify_a_parameterization(tri).map(|r| r.max()));
        acc
    })
}

pub fn run_symmetric(trials: usize, seed: u64) -> Acc {
    run_trials(trials, |t| {
        let mut acc = Acc::default();
        let mut rng = rng_from_seed(trial_seed(seed, t as u64));
        // draw until the three central angles form a tetrahedron
        let tet = loop {
            let (a, b, c) = (uniform(&mut rng, 0.6, 2.5), uniform(&mut rng, 0.6, 2.5), uniform(&mut rng, 0.6, 2.5));
            if let Ok(tet) = symmetric_tetrahedron(a, b, c) {
                break tet;
            }
        };
        match symmetric_tet_residuals(&tet, [0.0; 3]) {
            Ok(r) => acc.record("symmetric.redsin", r.redsin_max()),
            Err(_) => acc.record("symmetric.redsin", f64::INFINITY),
        }
        let dir = unit_vec(&mut rng, 3);
        let step = |h: f64| symmetric_tet_residuals(&tet, [dir[0] * h, dir[1] * h, dir[2] * h]).map(|r| r.differential);
        match (step(1e-3), step(5e-4), step(2.5e-4)) {
            (Ok(a), Ok(b), Ok(c)) => {
                acc.record("symmetric.differential_order", (a / b).log2() - 2.0);
                acc.record("symmetric.differential_order", (b / c).log2() - 2.0);
            }
            _ => acc.record("symmetric.differential_order", f64::INFINITY),
        }
        let g = gj_identification_report(&tet);
        acc.record("gj_id.spread", g.k1_spread.max(g.k2_spread));
        acc
    })
}

/// Disphenoids (opposite edges equal) are the configurations on which the
/// face and vertex sine constants are uniform.
pub fn run_gj_id(trials: usize, seed: u64) -> Acc {
    run_trials(trials, |t| {
        let mut acc = Acc::default();
        let mut rng = rng_from_seed(trial_seed(seed, t as u64) ^ 0x61d);
        let tet = loop {
            let (a, b, c) = (uniform(&mut rng, 0.6, 2.5), uniform(&mut rng, 0.6, 2.5), uniform(&mut rng, 0.6, 2.5));
            if let Ok(tet) = symmetric_tetrahedron(a, b, c) {
                break tet;
            }
        };
        let g = gj_identification_report(&tet);
        acc.record("gj_id.spread", g.k1_spread.max(g.k2_spread));
        // defined only when both constants lie inside the generalized Jacobi range
        if let Some(x) = g.identification_max() {
            acc.record("gj_id.identification", x);
        }
        acc
    })
}

pub fn run(trials: usize, seed: u64) -> Acc {
    run_spherical(trials, seed).merge(run_symmetric(trials, seed)).merge(run_gj_id(trials, seed))
}
