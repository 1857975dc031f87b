use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gjtrig::dynamics::top3::{euler3_rhs, Inertia3, Top3Solution};
use gjtrig::dynamics::{integrate, linspace, OdeOptions};
use gjtrig::elliptic::{incomplete_f, jacobi};
use gjtrig::gjelliptic::{gj_eval, gj_invert_s, GJModuli};
use gjtrig::multivec::cross_nd;
use gjtrig::sampling::{gaussian_vec, rng_from_seed};
use gjtrig::simplex_trig::{sample_simplex, HypersphericalTetrahedron};
use gjtrig::suites::{run_suite, SuiteOptions};

fn functions(c: &mut Criterion) {
    let md = GJModuli::new(0.8, 0.3).unwrap();
    c.bench_function("jacobi", |b| b.iter(|| jacobi(black_box(1.3), black_box(0.7))));
    c.bench_function("incomplete_f", |b| b.iter(|| incomplete_f(black_box(1.1), black_box(0.7))));
    c.bench_function("gj_eval", |b| b.iter(|| gj_eval(black_box(1.3), &md)));
    c.bench_function("gj_invert_s", |b| b.iter(|| gj_invert_s(black_box(0.6), &md)));
}

fn geometry(c: &mut Criterion) {
    let mut rng = rng_from_seed(1);
    let vs: Vec<Vec<f64>> = (0..5).map(|_| gaussian_vec(&mut rng, 6)).collect();
    c.bench_function("cross_nd_6", |b| b.iter(|| cross_nd(black_box(&vs))));
    let cfg = sample_simplex(4, 3).unwrap();
    c.bench_function("tetrahedron_from_config", |b| b.iter(|| HypersphericalTetrahedron::from_config(black_box(&cfg))));
}

fn dynamics(c: &mut Criterion) {
    let inertia = Inertia3::new(1.0, 2.0, 3.0).unwrap();
    let m0 = [0.0, 1.0, 1.0];
    let sol = Top3Solution::new(inertia, m0).unwrap();
    c.bench_function("top3_closed_form", |b| b.iter(|| sol.state(black_box(7.5))));
    let ts = linspace(0.0, 10.0, 201);
    let rhs = |_t: f64, y: &[f64]| euler3_rhs(&[y[0], y[1], y[2]], &inertia).to_vec();
    c.bench_function("top3_integrate", |b| {
        b.iter(|| integrate(&rhs, &m0, (0.0, 10.0), &OdeOptions::new(1e-10), black_box(&ts)))
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for name in ["spherical", "hyperspherical", "gj"] {
        let opts = SuiteOptions { trials: Some(100), seed: 1, ..SuiteOptions::default() };
        g.bench_function(name, |b| b.iter(|| run_suite(name, &opts)));
    }
    g.finish();
}

criterion_group!(benches, functions, geometry, dynamics, suites);
criterion_main!(benches);
