use rand::seq::SliceRandom;

use super::oracle::{facet_angle_cos, hinge_cos, polar_normals, span_volume};
use super::{run_trials, Acc, Tolerances};
use crate::multivec::dot;
use crate::sampling::{rng_from_seed, trial_seed};
use crate::simplex_trig::{
    facet_hierarchy_residual, mdim_cosine_rule, mdim_polar_cosine_residual, mdim_sine_constant, polar_gram, ridge_cosine,
    link_cosine,
    sample_simplex,
};

pub const DEFAULT_TRIALS: usize = 100;

pub const TOLERANCES: Tolerances = &[
    ("cosine_rule.m5", 1e-8),
    ("cosine_rule.m6", 1e-8),
    ("sine_constant.m5", 1e-8),
    ("polar_gram.m5", 1e-8),
    ("polar_cosine.m5", 1e-8),
    ("hierarchy.m5", 1e-8),
    ("hierarchy_oracle.m5", 1e-8),
];

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for (n, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[n + 1..], size - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

pub fn run(trials: usize, seed: u64) -> Acc {
    run_trials(trials, |t| {
        let mut acc = Acc::default();
        let ts = trial_seed(seed, t as u64);
        let mut rng = rng_from_seed(ts ^ 0x5eed);
        for (m, name) in [(5, "cosine_rule.m5"), (6, "cosine_rule.m6")] {
            let Ok(c) = sample_simplex(m, trial_seed(ts, m as u64)) else {
                acc.record(name, f64::INFINITY);
                continue;
            };
            let mut order: Vec<usize> = (0..m).collect();
            for _ in 0..6 {
                order.shuffle(&mut rng);
                let oracle = facet_angle_cos(&c.vectors, &order[1..m - 1], order[0], order[m - 1]);
                acc.record_result(name, mdim_cosine_rule(&c.gram, &order).map(|x| x - oracle));
            }
        }

        let Ok(c) = sample_simplex(5, trial_seed(ts, 5)) else {
            acc.record("sine_constant.m5", f64::INFINITY);
            return acc;
        };
        let m = 5;
        let vs = &c.vectors;
        let u = polar_normals(vs);
        match mdim_sine_constant(&c.gram) {
            Ok(k) => {
                for a in 0..m {
                    let pu: Vec<&[f64]> = (0..m).filter(|&x| x != a).map(|x| u[x].as_slice()).collect();
                    let pv: Vec<&[f64]> = (0..m).filter(|&x| x != a).map(|x| vs[x].as_slice()).collect();
                    acc.record("sine_constant.m5", span_volume(&pu) / span_volume(&pv) - k);
                }
            }
            Err(_) => acc.record("sine_constant.m5", f64::INFINITY),
        }
        match polar_gram(&c.gram) {
            Ok(p) => {
                for a in 0..m {
                    for b in 0..m {
                        acc.record("polar_gram.m5", p[(a, b)] - dot(&u[a], &u[b]));
                    }
                }
            }
            Err(_) => acc.record("polar_gram.m5", f64::INFINITY),
        }
        acc.record_result("polar_cosine.m5", mdim_polar_cosine_residual(&c));
        for j in 2..m {
            for k in 1..j {
                acc.record_result("hierarchy.m5", facet_hierarchy_residual(&c, j, k));
            }
        }
        // link cosines of every level against the projected vectors, and the
        // top-level facet cosines against the normals
        for v in 0..m {
            for w in v + 1..m {
                let rest: Vec<usize> = (0..m).filter(|&x| x != v && x != w).collect();
                for size in 0..=m - 2 {
                    for ridge in subsets(&rest, size) {
                        let link = link_cosine(&c.gram, &ridge, v, w);
                        acc.record_result("hierarchy_oracle.m5", link.map(|x| x - hinge_cos(vs, &ridge, v, w)));
                        if ridge.len() == m - 2 {
                            let normals = facet_angle_cos(vs, &ridge, v, w);
                            acc.record_result("hierarchy_oracle.m5", ridge_cosine(&c.gram, &ridge, v, w).map(|x| x - normals));
                        }
                    }
                }
            }
        }
        acc
    })
}
