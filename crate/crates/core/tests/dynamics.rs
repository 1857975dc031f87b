use num_complex::Complex64;

use gjtrig::dynamics::dell::*;
use gjtrig::dynamics::nambu::{fundamental_identity_residual, leibniz_residual, Field};
use gjtrig::dynamics::top3::*;
use gjtrig::dynamics::top4::*;
use gjtrig::dynamics::{integrate, linspace, Coord, OdeOptions, Quadratic};
use gjtrig::gjelliptic::GJModuli;
use gjtrig::sampling::{rng_from_seed, uniform};
use gjtrig::Error;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn euler3_example() {
    let inertia = Inertia3::new(1.0, 2.0, 3.0).unwrap();
    let m = [0.0, 1.0, 1.0];
    let r = euler3_rhs(&m, &inertia);
    assert!(close(r[0], -1.0 / 6.0, 1e-15) && r[1] == 0.0 && r[2] == 0.0, "{r:?}");
    let b = euler3_bracket_rhs(&m, &inertia);
    for i in 0..3 {
        assert!(close(r[i], b[i], 1e-15));
    }
}

#[test]
fn euler3_bracket_matches_equations() {
    let mut rng = rng_from_seed(11);
    for _ in 0..100 {
        let i1 = uniform(&mut rng, 0.5, 1.5);
        let inertia = Inertia3::new(i1, i1 + uniform(&mut rng, 0.1, 1.0), i1 + uniform(&mut rng, 1.2, 2.0)).unwrap();
        let m = [uniform(&mut rng, -2.0, 2.0), uniform(&mut rng, -2.0, 2.0), uniform(&mut rng, -2.0, 2.0)];
        let (a, b) = (euler3_rhs(&m, &inertia), euler3_bracket_rhs(&m, &inertia));
        for i in 0..3 {
            assert!(close(a[i], b[i], 1e-13));
        }
    }
}

fn top3_closed_vs_integrator(inertia: Inertia3, m0: TopState3, t1: f64) -> (f64, f64) {
    let sol = Top3Solution::new(inertia, m0).unwrap();
    let ts = linspace(0.0, t1, 201);
    let rhs = |_t: f64, y: &[f64]| euler3_rhs(&[y[0], y[1], y[2]], &inertia).to_vec();
    let mut traj = integrate(&rhs, &m0, (0.0, t1), &OdeOptions::new(1e-11), &ts).unwrap();
    let mut err = 0.0f64;
    for (t, y) in traj.times.iter().zip(&traj.states) {
        let c = sol.state(*t);
        for i in 0..3 {
            err = err.max((c[i] - y[i]).abs());
        }
    }
    traj.fill_ledger(&|y| {
        let m = [y[0], y[1], y[2]];
        vec![h1(&m, &inertia), h2(&m)]
    });
    (err, traj.max_relative_drift())
}

#[test]
fn euler3_closed_form_against_integrator() {
    let inertia = Inertia3::new(1.0, 2.0, 3.0).unwrap();
    let (err, drift) = top3_closed_vs_integrator(inertia, [0.0, 1.0, 1.0], 10.0);
    assert!(err < 1e-6 && drift < 1e-8, "{err:e} {drift:e}");

    let mut rng = rng_from_seed(5);
    for trial in 0..20 {
        let i1 = uniform(&mut rng, 0.5, 1.5);
        let inertia = Inertia3::new(i1, i1 + uniform(&mut rng, 0.2, 1.0), i1 + uniform(&mut rng, 1.3, 2.0)).unwrap();
        let m0 = [uniform(&mut rng, -1.0, 1.0), uniform(&mut rng, -1.0, 1.0), uniform(&mut rng, -1.0, 1.0)];
        let (err, drift) = top3_closed_vs_integrator(inertia, m0, 10.0);
        assert!(err < 1e-6 && drift < 1e-8, "trial {trial}: {err:e} {drift:e}");
    }
}

#[test]
fn euler3_closed_form_regimes() {
    let inertia = Inertia3::new(1.0, 2.0, 3.0).unwrap();
    // L² > 2E I₂ puts sn on axis 1, otherwise on axis 3
    let a = Top3Solution::new(inertia, [0.1, 1.0, 1.0]).unwrap();
    assert_eq!((a.sn_axis, a.dn_axis), (0, 2));
    let b = Top3Solution::new(inertia, [1.0, 1.0, 0.1]).unwrap();
    assert_eq!((b.sn_axis, b.dn_axis), (2, 0));
    assert!(a.m <= 0.0 && b.m <= 0.0);
    let eq = Top3Solution::new(inertia, [0.0, 0.0, 2.0]).unwrap();
    assert!(eq.constant && eq.state(3.0) == [0.0, 0.0, 2.0]);
}

#[test]
fn euler3_separatrix_is_reported() {
    let inertia = Inertia3::new(1.0, 2.0, 3.0).unwrap();
    // L² = 2E I₂ exactly: M₁²(1/I₁ − 1/I₂) = M₃²(1/I₂ − 1/I₃)
    let m0 = [1.0, 0.3, 3f64.sqrt()];
    assert!(matches!(Top3Solution::new(inertia, m0), Err(Error::Separatrix(_))));
}

#[test]
fn quoted_top3_modulus_does_not_solve_the_equations() {
    let inertia = Inertia3::new(1.0, 2.0, 3.0).unwrap();
    let m0 = [0.0, 1.0, 1.0];
    let fitted = fitted_form_residual(&inertia, &m0, 10.0).unwrap();
    assert!(fitted < 1e-12, "{fitted:e}");
    let check = check_quoted_modulus(&inertia, &m0, 10.0).unwrap();
    assert!(close(check.fitted_m, -0.75, 1e-12));
    assert!(close(check.quoted_k2, 9.0, 1e-12));
    assert!(close(check.doubled_k2, 3.0 / 7.0, 1e-12));
    // the doubled reading is the parameter of the imaginary-modulus transform
    let sol = Top3Solution::new(inertia, m0).unwrap();
    assert!(close(sol.mu, check.doubled_k2, 1e-12));
    assert!(check.best_residual() > 1e-3, "{check:?}");
}

#[test]
fn harmonic_oscillator_period() {
    let rhs = |_t: f64, y: &[f64]| vec![y[1], -y[0]];
    let two_pi = 2.0 * std::f64::consts::PI;
    let traj = integrate(&rhs, &[1.0, 0.0], (0.0, two_pi), &OdeOptions::new(1e-12), &[two_pi]).unwrap();
    let y = &traj.states[0];
    assert!(close(y[0], 1.0, 1e-8) && close(y[1], 0.0, 1e-8), "{y:?}");
}

#[test]
fn integrator_rejects_bad_input() {
    let rhs = |_t: f64, y: &[f64]| y.to_vec();
    assert!(integrate(&rhs, &[1.0], (0.0, 1.0), &OdeOptions::new(1e-14), &[0.5]).is_err());
    assert!(integrate(&rhs, &[1.0], (1.0, 0.0), &OdeOptions::new(1e-8), &[0.5]).is_err());
    assert!(integrate(&rhs, &[1.0], (0.0, 1.0), &OdeOptions::new(1e-8), &[0.6, 0.5]).is_err());
    let blowup = |_t: f64, y: &[f64]| vec![y[0] * y[0]];
    assert!(matches!(
        integrate(&blowup, &[1.0], (0.0, 2.0), &OdeOptions::new(1e-8), &[1.5]),
        Err(Error::StepUnderflow(_))
    ));
}

#[test]
fn euler4_coefficient_example() {
    let c = euler4_coefficients([1.0; 4], 1.0, 0.8, 0.3).unwrap();
    let want = [1.0, -1.0, -0.64, -0.09];
    for i in 0..4 {
        assert!(close(c[i], want[i], 1e-15), "{c:?}");
    }
}

fn balanced_setup(seed: u64) -> ([f64; 4], GJModuli, Nambu4Params, [f64; 4]) {
    let mut rng = rng_from_seed(seed);
    let md = GJModuli::new(uniform(&mut rng, 0.3, 0.9), uniform(&mut rng, 0.0, 0.25)).unwrap();
    let (a2, a3, a4) = (uniform(&mut rng, 0.5, 1.5), uniform(&mut rng, 0.5, 1.5), uniform(&mut rng, 0.5, 1.5));
    let a = [balanced_a1(a2, a3, a4, &md), a2, a3, a4];
    let c = euler4_coefficients(a, 1.0, md.k1(), md.k2()).unwrap();
    let p = params_for_coefficients(&c).unwrap();
    (a, md, p, c)
}

#[test]
fn euler4_reconstructed_parameters() {
    for seed in 0..30 {
        let (_, _, p, c) = balanced_setup(seed);
        let got = p.coefficients();
        for i in 0..4 {
            assert!(close(got[i], c[i], 1e-12), "seed {seed}: {got:?} vs {c:?}");
        }
    }
    assert!(matches!(params_for_coefficients(&[1.0, 1.0, 0.0, 0.0]), Err(Error::Constraint(_))));
}

#[test]
fn euler4_bracket_matches_coefficients() {
    let mut rng = rng_from_seed(8);
    for _ in 0..50 {
        let mut v = || std::array::from_fn(|_| uniform(&mut rng, -1.0, 1.0));
        let p = Nambu4Params::new(v(), v()).unwrap();
        let m: [f64; 4] = v();
        let (a, b) = (euler4_rhs(&m, &p), euler4_bracket_rhs(&m, &p));
        for i in 0..4 {
            assert!(close(a[i], b[i], 1e-13));
        }
        // coefficients always sum to zero
        assert!(p.coefficients().iter().sum::<f64>().abs() < 1e-13);
    }
}

#[test]
fn euler4_closed_form_against_integrator() {
    for seed in 0..10 {
        let (a, md, p, _) = balanced_setup(100 + seed);
        let m0 = euler4_closed_form(0.0, a, 1.0, &md, 0.0);
        let ts = linspace(0.0, 5.0, 101);
        let rhs = |_t: f64, y: &[f64]| euler4_rhs(&[y[0], y[1], y[2], y[3]], &p).to_vec();
        let mut traj = integrate(&rhs, &m0, (0.0, 5.0), &OdeOptions::new(1e-11), &ts).unwrap();
        let mut err = 0.0f64;
        for (t, y) in traj.times.iter().zip(&traj.states) {
            let c = euler4_closed_form(*t, a, 1.0, &md, 0.0);
            for i in 0..4 {
                err = err.max((c[i] - y[i]).abs());
            }
        }
        assert!(err < 1e-6, "seed {seed}: {err:e}");
        traj.fill_ledger(&|y| hamiltonian_values(&[y[0], y[1], y[2], y[3]], &p).to_vec());
        assert!(traj.max_relative_drift() < 1e-8);
    }
}

fn random_quadratic<const N: usize>(rng: &mut gjtrig::sampling::TrialRng) -> Quadratic<N> {
    let b = std::array::from_fn(|_| uniform(rng, -1.0, 1.0));
    let a = nalgebra::SMatrix::<f64, N, N>::from_fn(|_, _| uniform(rng, -1.0, 1.0));
    Quadratic::new(uniform(rng, -1.0, 1.0), b, a)
}

#[test]
fn fundamental_identity_and_leibniz() {
    let mut rng = rng_from_seed(21);
    for _ in 0..50 {
        let f3: Vec<Quadratic<3>> = (0..2).map(|_| random_quadratic(&mut rng)).collect();
        let g3: [Quadratic<3>; 3] = std::array::from_fn(|_| random_quadratic(&mut rng));
        let x3 = std::array::from_fn(|_| uniform(&mut rng, -1.0, 1.0));
        assert!(fundamental_identity_residual(&f3, &g3, &x3) < 1e-12);

        let f4: Vec<Quadratic<4>> = (0..3).map(|_| random_quadratic(&mut rng)).collect();
        let g4: [Quadratic<4>; 4] = std::array::from_fn(|_| random_quadratic(&mut rng));
        let x4 = std::array::from_fn(|_| uniform(&mut rng, -1.0, 1.0));
        assert!(fundamental_identity_residual(&f4, &g4, &x4) < 1e-12);

        let rest: [&dyn Field<4>; 3] = [&g4[0], &g4[1], &g4[2]];
        assert!(leibniz_residual(&f4[0], &f4[1], &rest, &x4) < 1e-12);
        assert!(leibniz_residual(&Coord(2), &g4[3], &rest, &x4) < 1e-12);
    }
}

fn ham_params(g: f64, k: f64, profile: AlphaProfile) -> DellHamParams {
    DellHamParams { g, k, profile }
}

#[test]
fn dell_hamiltonian_limits() {
    let p = ham_params(0.0, 0.6, AlphaProfile::Rational);
    for &pp in &[0.0, 0.4, 1.3, -2.0] {
        let h = dell_hamiltonian(pp, 2.0, &p).unwrap();
        let cn = gjtrig::elliptic::jacobi_m(pp, 0.36).cn;
        assert!(close(h.cn_form, cn, 1e-13) && close(h.gj_form, cn, 1e-13));
    }
    let p = ham_params(0.3, 0.6, AlphaProfile::Rational);
    let h = dell_hamiltonian(0.0, 1.5, &p).unwrap();
    let alpha = (1.0 - 2.0 * 0.09 / 2.25f64).sqrt();
    assert!(close(h.cn_form, alpha, 1e-15) && close(h.gj_form, alpha, 1e-15));
    assert!(matches!(dell_hamiltonian(0.0, 0.2, &p), Err(Error::Domain(_))));
}

#[test]
fn dell_dual_forms_agree() {
    let mut rng = rng_from_seed(31);
    for profile in [AlphaProfile::Rational, AlphaProfile::Elliptic { kt: 0.7 }] {
        for _ in 0..200 {
            let p = ham_params(uniform(&mut rng, 0.05, 0.4), uniform(&mut rng, 0.1, 0.9), profile);
            let (pp, q) = (uniform(&mut rng, -3.0, 3.0), uniform(&mut rng, 1.0, 3.0));
            let h = dell_hamiltonian(pp, q, &p).unwrap();
            assert!(h.disagreement() < 1e-10, "{p:?} {pp} {q}: {h:?}");
            assert!(dell_rhs_fd_residual(pp, q, &p).unwrap() < 1e-7);
        }
    }
}

#[test]
fn dell_hamilton_flow_conserves_energy() {
    let p = ham_params(0.3, 0.7, AlphaProfile::Elliptic { kt: 0.5 });
    let rhs = |_t: f64, y: &[f64]| {
        let (a, b) = dell_hamilton_rhs(y[0], y[1], &p).unwrap();
        vec![a, b]
    };
    let ts = linspace(0.0, 5.0, 51);
    let mut traj = integrate(&rhs, &[0.4, 1.1], (0.0, 5.0), &OdeOptions::new(1e-11), &ts).unwrap();
    traj.fill_ledger(&|y| vec![dell_hamiltonian(y[0], y[1], &p).unwrap().gj_form]);
    assert!(traj.max_relative_drift() < 1e-8, "{}", traj.max_relative_drift());
}

fn dell_setup() -> (DellParams, DellSolution) {
    let params = DellParams::new(0.4, 0.6).unwrap();
    let e = 0.3;
    let k = DellSolution::rate_for_energy(&params, e);
    (params, DellSolution::new(params, e, k, 0.2).unwrap())
}

#[test]
fn dell_closed_form_levels_and_coefficients() {
    let (params, sol) = dell_setup();
    for i in 0..30 {
        assert!(sol.quadric_residual(0.1 * i as f64) < 1e-12);
    }
    // Q₂/Q₁ = k̃², the second copy of the elliptic curve in the g → 0 limit
    assert!(close(sol.levels[1] / sol.levels[0], params.kt * params.kt, 1e-15));
    let md = sol.moduli;
    let c = euler4_coefficients_complex(sol.amplitude, Complex64::from(sol.k), md.m1, md.m2).unwrap();
    let g2 = params.g * params.g;
    let want = [sol.k, sol.k, sol.k, g2 * sol.k];
    for i in 0..4 {
        assert!((c[i] - want[i]).norm() < 1e-12, "{c:?}");
    }
    assert!(matches!(DellSolution::new(params, 0.3, 0.5, 0.0), Err(Error::Constraint(_))));
    assert!(close(params.quoted_k2().im, 0.6 * 0.4 * 2f64.sqrt(), 1e-15));
}

#[test]
fn dell_bracket_normalization() {
    let (params, sol) = dell_setup();
    let x = sol.state(0.7);
    let b = dell_bracket_with_x5(&x, &params);
    let f = dell_quadric_rhs(&x, &params).unwrap();
    let s = bracket_normalization(&params);
    for i in 0..6 {
        assert!((b[i] * s - f[i]).norm() < 1e-12, "{i}: {b:?} {f:?}");
    }
}

#[test]
fn dell_closed_form_against_quadric_flow() {
    let (params, sol) = dell_setup();
    let x0 = sol.state(0.0);
    // Runge-Kutta stages leave the surface slightly, so integrate the unchecked flow
    let rhs = |_t: f64, y: &[f64]| pack(&dell_quadric_flow(&unpack(y), &params));
    let ts = linspace(0.0, 3.0, 61);
    let mut traj = integrate(&rhs, &pack(&x0), (0.0, 3.0), &OdeOptions::new(1e-11), &ts).unwrap();
    let mut err = 0.0f64;
    for (t, y) in traj.times.iter().zip(&traj.states) {
        let c = sol.state(*t);
        let z = unpack(y);
        for i in 0..6 {
            err = err.max((c[i] - z[i]).norm());
        }
    }
    assert!(err < 1e-6, "{err:e}");
    traj.fill_ledger(&|y| quadrics(&unpack(y), &params).iter().flat_map(|q| [q.re, q.im]).collect());
    assert!(traj.max_relative_drift() < 1e-8);
}

#[test]
fn dell_rhs_requires_surface() {
    let params = DellParams::new(0.4, 0.6).unwrap();
    let x = [Complex64::from(0.1); 6];
    assert!(matches!(dell_quadric_rhs(&x, &params), Err(Error::OffSurface(_))));
}
