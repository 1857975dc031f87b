use super::oracle::{angle, dihedral, span_volume, vertex_angle};
use super::{run_trials, Acc, Tolerances};
use crate::error::Error;
use crate::multivec::{det, rows_matrix};
use crate::sampling::trial_seed;
use crate::simplex_trig::{
    cosine_ratio_constant, desnanot_jacobi_residual, hyp_cosine_rule, hyp_four_parts_residual, hyp_five_parts_residual,
    hyp_polar_cosine_rule, hyp_sin_phi, pair_index, polar_gram, face_angle_dihedral_residual, sample_simplex, vertex_cosine_rule,
    vertex_polar_cosine_rule, vertex_sine_constant, vertex_sine_ratios, HypersphericalTetrahedron, PAIRS,
};

pub const DEFAULT_TRIALS: usize = 1000;

pub const TOLERANCES: Tolerances = &[
    ("cosine_rule", 1e-8),
    ("polar_cosine_rule", 1e-8),
    ("sine_rule", 1e-8),
    ("sin_phi", 1e-8),
    ("product_sine", 1e-8),
    ("cosine_ratio", 1e-8),
    ("vertex_cosine_rule", 1e-8),
    ("vertex_polar_cosine_rule", 1e-8),
    ("vertex_sine_rule", 1e-8),
    ("face_angle_dihedral", 1e-8),
    ("desnanot_jacobi", 1e-8),
    ("four_parts", 1e-8),
    ("five_parts", 1e-8),
];

fn perms4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                if i != j && j != k && i != k {
                    let l = 6 - i - j - k;
                    out.push([i, j, k, l]);
                }
            }
        }
    }
    out
}

fn others(a: usize, b: usize) -> (usize, usize) {
    let mut it = (0..4).filter(|&x| x != a && x != b);
    (it.next().unwrap(), it.next().unwrap())
}

/// Samples carry gsin6 > 1e-3 by construction of the sampler.
pub fn run(trials: usize, seed: u64) -> Acc {
    let perms = perms4();
    run_trials(trials, |t| {
        let mut acc = Acc::default();
        let Ok(c) = sample_simplex(4, trial_seed(seed, t as u64)) else {
            acc.record("cosine_rule", f64::INFINITY);
            return acc;
        };
        let v = &c.vectors;
        let mut th = [0.0; 6];
        let mut ph = [0.0; 6];
        for (n, &(a, b)) in PAIRS.iter().enumerate() {
            th[n] = angle(&v[a], &v[b]);
            let (p, q) = others(a, b);
            ph[n] = dihedral(v, p, a, b, q);
        }
        let Ok(lib) = HypersphericalTetrahedron::from_thetas(th) else {
            acc.record("cosine_rule", f64::INFINITY);
            return acc;
        };
        // oracle face angles: alpha[v][w] sits at v in the face without w
        let mut alpha = [[0.0; 4]; 4];
        for a in 0..4 {
            for w in 0..4 {
                if a != w {
                    let (p, q) = others(a, w);
                    alpha[a][w] = vertex_angle(&v[a], &v[p], &v[q]);
                }
            }
        }
        let g6 = det(&rows_matrix(v)).map(f64::abs).unwrap_or(f64::NAN);
        let faces: Vec<f64> = (0..4)
            .map(|w| {
                let rows: Vec<&[f64]> = (0..4).filter(|&x| x != w).map(|x| v[x].as_slice()).collect();
                span_volume(&rows)
            })
            .collect();
        let k_oracle = g6 * g6 / faces.iter().product::<f64>();
        let face_sine = [faces[0], faces[1], faces[2], faces[3]];
        let tet = HypersphericalTetrahedron { theta: th, phi: ph, alpha, face_sine, gsin6: g6, k_h: k_oracle };
        let phi = |a: usize, b: usize| ph[pair_index(a, b)];

        for &l in &perms {
            let [i, j, k, m] = l;
            acc.record_result("cosine_rule", hyp_cosine_rule(&th, l).map(|p| p - dihedral(v, i, j, k, m)));
            acc.record_result("polar_cosine_rule", hyp_polar_cosine_rule(&ph, l).map(|x| x - th[pair_index(k, m)].cos()));
            acc.record_result(
                "vertex_cosine_rule",
                vertex_cosine_rule(alpha[j][m], alpha[j][i], alpha[j][k]).map(|x| x - phi(j, k).cos()),
            );
            acc.record_result(
                "vertex_polar_cosine_rule",
                vertex_polar_cosine_rule(phi(j, k), phi(i, j), phi(j, m)).map(|x| x - alpha[j][k].cos()),
            );
            acc.record_result("face_angle_dihedral", face_angle_dihedral_residual(&tet, l));
        }
        match tet.sine_rule_ratios() {
            Ok(r) => r.iter().for_each(|x| acc.record("sine_rule", x - k_oracle)),
            Err(_) => acc.record("sine_rule", f64::INFINITY),
        }
        acc.record("sine_rule", lib.k_h - k_oracle);
        for &(a, b) in &PAIRS {
            acc.record_result("sin_phi", hyp_sin_phi(&th, (a, b)).map(|s| s - phi(a, b).sin()));
            let (p, q) = others(a, b);
            let prod = phi(a, b).sin() * phi(p, q).sin() / (th[pair_index(a, b)].sin() * th[pair_index(p, q)].sin());
            acc.record("product_sine", prod - k_oracle);
        }
        match cosine_ratio_constant(&tet) {
            Ok(k) => acc.record("cosine_ratio", k - k_oracle),
            Err(Error::Indeterminate(_)) => {}
            Err(_) => acc.record("cosine_ratio", f64::INFINITY),
        }
        for a in 0..4 {
            match vertex_sine_constant(&tet, a) {
                Ok(kv) => vertex_sine_ratios(&tet, a).iter().for_each(|r| acc.record("vertex_sine_rule", r - kv)),
                Err(_) => acc.record("vertex_sine_rule", f64::INFINITY),
            }
        }
        acc.record_result("desnanot_jacobi", desnanot_jacobi_residual(c.gram.matrix()));
        acc.record_result("desnanot_jacobi", polar_gram(&c.gram).and_then(|p| desnanot_jacobi_residual(&p)));
        acc.record("four_parts", hyp_four_parts_residual(&tet));
        acc.record("five_parts", hyp_five_parts_residual(&tet));
        acc
    })
}
