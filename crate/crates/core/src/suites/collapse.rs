use std::f64::consts::PI;

use super::oracle::angle;
use super::{run_trials, Acc, Tolerances};
use crate::error::Error;
use crate::sampling::{rng_from_seed, trial_seed, uniform, unit_vec, TrialRng};
use crate::simplex_trig::{collapse_tetrahedron, collapse_triangle, sample_simplex, Branch, PAIRS};

pub const DEFAULT_TRIALS: usize = 1000;

pub const TOLERANCES: Tolerances = &[
    ("triangle.branch_errors", 0.0),
    ("triangle.branch_residual", 1e-9),
    ("triangle.false_alarms", 0.0),
    ("tetra.vanishing_misses", 0.0),
    ("tetra.vertex_sines", 1e-8),
    ("tetra.false_alarms", 0.0),
];

/// Orthonormal vectors spanning a random subspace of dimension `k` in R^n.
fn frame(rng: &mut TrialRng, n: usize, k: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![];
    while out.len() < k {
        let mut x = unit_vec(rng, n);
        for b in &out {
            let d = crate::multivec::dot(&x, b);
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= d * bi);
        }
        let nx = crate::multivec::norm(&x);
        if nx > 1e-3 {
            out.push(x.into_iter().map(|v| v / nx).collect());
        }
    }
    out
}

fn combine(f: &[Vec<f64>], coef: &[f64]) -> Vec<f64> {
    (0..f[0].len()).map(|i| f.iter().zip(coef).map(|(b, c)| b[i] * c).sum()).collect()
}

/// Three points on a great circle with known betweenness. Returns the
/// vertices and the branch for the labelling (0, 1, 2).
fn degenerate_triangle(rng: &mut TrialRng) -> (Vec<Vec<f64>>, Branch) {
    let f = frame(rng, 3, 2);
    let s = uniform(rng, 0.3, PI - 0.3);
    let r = uniform(rng, 0.2, 0.8);
    let case = (uniform(rng, 0.0, 4.0) as usize).min(3);
    let (psi, branch) = match case {
        // vertex 2 between 0 and 1: θ01 = θ02 + θ12
        0 => ([0.0, s, r * s], Branch::Minus),
        // vertex 0 between 2 and 1
        1 => ([r * s, s, 0.0], Branch::Plus),
        // vertex 1 between 0 and 2
        2 => ([0.0, r * s, s], Branch::Plus),
        // no semicircle holds all three: θ01 = 2π − θ02 − θ12
        _ => {
            let e = [uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3)];
            ([0.0, 2.0 * PI / 3.0 + e[0], 4.0 * PI / 3.0 + e[1]], Branch::Minus)
        }
    };
    let vs = psi.iter().map(|p| combine(&f, &[p.cos(), p.sin()])).collect();
    (vs, branch)
}

pub fn run(trials: usize, seed: u64) -> Acc {
    run_trials(trials, |t| {
        let mut acc = Acc::default();
        let ts = trial_seed(seed, t as u64);
        let mut rng = rng_from_seed(ts);

        let (vs, truth) = degenerate_triangle(&mut rng);
        let side = |a: usize, b: usize| angle(&vs[a], &vs[b]);
        match collapse_triangle(side(0, 1), side(0, 2), side(1, 2)) {
            Ok(r) => {
                acc.record("triangle.branch_errors", if r.branch == truth { 0.0 } else { 1.0 });
                acc.record("triangle.branch_residual", r.residual);
            }
            Err(_) => acc.record("triangle.branch_errors", 1.0),
        }
        if let Ok(c) = sample_simplex(3, ts) {
            let v = &c.vectors;
            let alarm = collapse_triangle(angle(&v[0], &v[1]), angle(&v[0], &v[2]), angle(&v[1], &v[2])).is_ok();
            acc.record("triangle.false_alarms", if alarm { 1.0 } else { 0.0 });
        }

        // four points in a random 3-dimensional subspace of R⁴
        let f = frame(&mut rng, 4, 3);
        let vs: Vec<Vec<f64>> = (0..4).map(|_| combine(&f, &unit_vec(&mut rng, 3))).collect();
        let mut th = [0.0; 6];
        for (n, &(a, b)) in PAIRS.iter().enumerate() {
            th[n] = angle(&vs[a], &vs[b]);
        }
        match collapse_tetrahedron(&th) {
            // rounding of the angles alone leaves gsin6 near 1e-8, so every
            // detected collapse is checked, not only those below 1e-8
            Ok(r) => {
                let missed = r.vanishes.iter().filter(|&&x| !x).count();
                acc.record("tetra.vanishing_misses", missed as f64);
                r.vertex_sines.iter().for_each(|&s| acc.record("tetra.vertex_sines", s));
            }
            // a face collapsed as well; the vertex sines are undefined
            Err(Error::Degenerate(_)) => {}
            Err(_) => acc.record("tetra.vanishing_misses", 1.0),
        }
        if let Ok(c) = sample_simplex(4, ts) {
            let v = &c.vectors;
            let mut th = [0.0; 6];
            for (n, &(a, b)) in PAIRS.iter().enumerate() {
                th[n] = angle(&v[a], &v[b]);
            }
            let alarm = !matches!(collapse_tetrahedron(&th), Err(Error::NotCollapsed(_)));
            acc.record("tetra.false_alarms", if alarm { 1.0 } else { 0.0 });
        }
        acc
    })
}
