use std::f64::consts::FRAC_PI_2;

use proptest::prelude::*;

use gjtrig::elliptic::*;
use gjtrig::quad;

/// F(φ; m) straight from the Legendre integrand.
fn legendre_f(phi: f64, m: f64) -> f64 {
    quad::integrate(|t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, phi, 1e-14)
}

/// Inverts F by Newton on the quadrature, giving am(u).
fn quadrature_amplitude(u: f64, m: f64) -> f64 {
    let mut phi = u;
    for _ in 0..60 {
        let step = (legendre_f(phi, m) - u) * (1.0 - m * phi.sin().powi(2)).sqrt();
        phi -= step;
        if step.abs() < 1e-16 {
            break;
        }
    }
    phi
}

#[test]
fn landen_against_quadrature_inversion() {
    for i in 1..=9 {
        let k = 0.1 * i as f64;
        let m = k * k;
        let big_k = legendre_f(FRAC_PI_2, m);
        assert!((complete_k(k).unwrap() - big_k).abs() < 1e-13);
        for p in 0..100 {
            let u = -2.0 * big_k + 4.0 * big_k * p as f64 / 99.0;
            let phi = quadrature_amplitude(u, m);
            let t = jacobi(u, k).unwrap();
            let dn = (1.0 - m * phi.sin().powi(2)).sqrt();
            let err = (t.sn - phi.sin()).abs().max((t.cn - phi.cos()).abs()).max((t.dn - dn).abs());
            assert!(err < 1e-11, "k {k} u {u}: {err:e}");
            assert!((amplitude_m(u, m) - phi).abs() < 1e-11);
        }
    }
}

#[test]
fn parameter_ranges_beyond_the_unit_interval() {
    // m < 0 and m > 1 through the reciprocal and imaginary-modulus transforms,
    // checked against the differential equations by central differences
    for &m in &[-3.0, -0.4, 1.0, 1.7, 6.0] {
        for i in 0..40 {
            let u = -2.0 + 0.1 * i as f64;
            let t = jacobi_m(u, m);
            assert!(t.pythagorean_residual() < 1e-13, "m {m} u {u}");
            let h = 1e-5;
            let (p, q) = (jacobi_m(u + h, m), jacobi_m(u - h, m));
            let ds = (p.sn - q.sn) / (2.0 * h);
            assert!((ds - t.cn * t.dn).abs() < 1e-8, "m {m} u {u}");
            let dd = (p.dn - q.dn) / (2.0 * h);
            assert!((dd + m * t.sn * t.cn).abs() < 1e-8, "m {m} u {u}");
        }
    }
}

#[test]
fn circular_and_hyperbolic_limits() {
    for i in 0..50 {
        let u = -3.0 + 0.13 * i as f64;
        let t = jacobi_m(u, 0.0);
        assert!((t.sn - u.sin()).abs() < 1e-15 && (t.cn - u.cos()).abs() < 1e-15 && t.dn == 1.0);
        let h = jacobi_m(u, 1.0);
        assert!((h.sn - u.tanh()).abs() < 1e-15);
    }
    assert!(complete_k(1.0).is_err() && complete_k(-0.1).is_err());
}

#[test]
fn derivative_in_m_matches_differences() {
    for &m in &[-0.5, 0.1, 0.5, 0.9] {
        for &phi in &[0.3, 1.2, 2.5, -4.0] {
            let h = 1e-6;
            let fd = (incomplete_f_m(phi, m + h) - incomplete_f_m(phi, m - h)) / (2.0 * h);
            assert!((fd - incomplete_f_dm(phi, m)).abs() < 1e-7, "m {m} phi {phi}");
        }
    }
}

#[test]
fn second_kind_against_quadrature() {
    for &m in &[-0.5, 0.3, 0.81] {
        let q = quad::integrate(|t| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, 1.1, 1e-14);
        assert!((incomplete_e_m(1.1, m) - q).abs() < 1e-13);
    }
}

#[test]
fn yang_baxter_pole_is_reported() {
    assert!(yang_baxter_residual(0.0, 0.5, 1.0, 0.5).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn addition_formulas(aj in -3.0f64..3.0, ak in -3.0f64..3.0, k in 0.05f64..0.95) {
        let r = spherical_addition_residuals(aj, ak, k).unwrap();
        prop_assert!(r.max() < 1e-11, "{r:?}");
    }

    #[test]
    fn yang_baxter(a1 in 0.1f64..1.4, a2 in 0.1f64..1.4, rho in 0.2f64..2.0, k in 0.05f64..0.95) {
        let r = yang_baxter_residual(a1, a2, rho, k).unwrap();
        let t = |a: f64| jacobi(a, k).unwrap().sn.abs();
        let scale = rho * rho / (t(a1) * t(a2)).min(t(a1) * t(a1 + a2)).min(t(a2) * t(a1 + a2));
        prop_assert!(r < 1e-10 * scale.max(1.0), "{r:e}");
    }

    #[test]
    fn quarter_period_values(k in 0.05f64..0.95) {
        let big_k = complete_k(k).unwrap();
        let t = jacobi(big_k, k).unwrap();
        let kp = (1.0 - k * k).sqrt();
        prop_assert!((t.sn - 1.0).abs() < 1e-12 && t.cn.abs() < 1e-12 && (t.dn - kp).abs() < 1e-12);
    }

    #[test]
    fn inversion_round_trip(phi in -1.5f64..1.5, m in -2.0f64..0.99) {
        let u = incomplete_f_m(phi, m);
        prop_assert!((amplitude_m(u, m) - phi).abs() < 1e-11);
        prop_assert!((jacobi_m(u, m).sn - phi.sin()).abs() < 1e-11);
    }
}
