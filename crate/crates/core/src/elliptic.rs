//! Real Jacobi elliptic functions and Legendre integrals.
//!
//! Functions taking `k` follow the modulus convention and are restricted to
//! `0 <= k < 1`. The `_m` variants take the parameter `m = k^2` and accept any
//! real value through the imaginary-modulus and reciprocal-modulus transforms.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};

const RF_TOL: f64 = 1e-14;
const LANDEN_TOL: f64 = 1e-15;
const LANDEN_MAX: usize = 32;

/// Carlson's symmetric integral R_F(x, y, z) by duplication.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let mut a = a0;
    let q = (3.0 * RF_TOL).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut scale = 1.0;
    while scale * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        scale *= 0.25;
    }
    let xx = (a0 - x0) * scale / a;
    let yy = (a0 - y0) * scale / a;
    let zz = -(xx + yy);
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt()
}

/// Carlson's R_D(x, y, z), symmetric in x and y.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + 3.0 * z) / 5.0;
    let mut a = a0;
    let q = (0.25 * RF_TOL).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut scale = 1.0;
    let mut sum = 0.0;
    while scale * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        sum += scale / (sz * (z + lam));
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        scale *= 0.25;
    }
    let xx = (a0 - x0) * scale / a;
    let yy = (a0 - y0) * scale / a;
    let zz = -(xx + yy) / 3.0;
    let xy = xx * yy;
    let z2 = zz * zz;
    let e2 = xy - 6.0 * z2;
    let e3 = (3.0 * xy - 8.0 * z2) * zz;
    let e4 = 3.0 * (xy - z2) * z2;
    let e5 = xy * z2 * zz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    scale * series / (a * a.sqrt()) + 3.0 * sum
}

/// Arithmetic-geometric mean.
pub fn agm(a: f64, b: f64) -> f64 {
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a.abs() {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    0.5 * (a + b)
}

fn check_modulus(k: f64) -> Result<()> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!("modulus k = {k} outside [0, 1)")));
    }
    Ok(())
}

fn complementary(k: f64) -> f64 {
    ((1.0 - k) * (1.0 + k)).sqrt()
}

/// Complete integral of the first kind K(k) via the AGM.
pub fn complete_k(k: f64) -> Result<f64> {
    check_modulus(k)?;
    Ok(FRAC_PI_2 / agm(1.0, complementary(k)))
}

/// K as a function of the parameter m < 1 (negative m allowed).
pub fn complete_k_m(m: f64) -> f64 {
    assert!(m < 1.0, "complete_k_m needs m < 1");
    FRAC_PI_2 / agm(1.0, (1.0 - m).sqrt())
}

/// Split phi = n*pi + r with r in [-pi/2, pi/2].
fn reduce_pi(phi: f64) -> (f64, f64) {
    let n = (phi / PI).round();
    (n, phi - n * PI)
}

/// Incomplete integral F(phi | m) for m < 1, any real phi.
pub fn incomplete_f_m(phi: f64, m: f64) -> f64 {
    let (n, r) = reduce_pi(phi);
    let (s, c) = r.sin_cos();
    let base = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
    if n == 0.0 {
        base
    } else {
        base + 2.0 * n * complete_k_m(m)
    }
}

/// Incomplete integral of the first kind F(phi, k) in Carlson form.
pub fn incomplete_f(phi: f64, k: f64) -> Result<f64> {
    check_modulus(k)?;
    Ok(incomplete_f_m(phi, k * k))
}

/// Incomplete integral of the second kind E(phi | m) for m < 1, |phi| <= pi/2.
pub fn incomplete_e_m(phi: f64, m: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let d2 = 1.0 - m * s * s;
    s * carlson_rf(c * c, d2, 1.0) - m * s * s * s * carlson_rd(c * c, d2, 1.0) / 3.0
}

/// Partial derivative of F(phi | m) with respect to m at fixed phi (m < 1).
pub fn incomplete_f_dm(phi: f64, m: f64) -> f64 {
    let (n, r) = reduce_pi(phi);
    let (s, c) = r.sin_cos();
    let base = s * s * s * carlson_rd(c * c, 1.0, 1.0 - m * s * s) / 6.0;
    if n == 0.0 {
        base
    } else {
        base + 2.0 * n * carlson_rd(0.0, 1.0, 1.0 - m) / 6.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticModulus {
    pub k: f64,
    pub kp: f64,
    pub big_k: f64,
    pub big_kp: f64,
}

impl EllipticModulus {
    pub fn new(k: f64) -> Result<Self> {
        check_modulus(k)?;
        let kp = complementary(k);
        let big_kp = if k == 0.0 { f64::INFINITY } else { FRAC_PI_2 / agm(1.0, k) };
        Ok(Self { k, kp, big_k: FRAC_PI_2 / agm(1.0, kp), big_kp })
    }
}

/// sn, cn, dn at a real argument; `m` is the parameter k^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiTriple {
    pub u: f64,
    pub m: f64,
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

impl JacobiTriple {
    /// max(|sn^2 + cn^2 - 1|, |dn^2 + m sn^2 - 1|)
    pub fn pythagorean_residual(&self) -> f64 {
        let a = (self.sn * self.sn + self.cn * self.cn - 1.0).abs();
        let b = (self.dn * self.dn + self.m * self.sn * self.sn - 1.0).abs();
        a.max(b)
    }
}

/// Descending Landen (Gauss) recursion for 0 <= m < 1 on a reduced argument.
/// Returns (am, sn, cn, dn).
fn landen(u: f64, m: f64) -> (f64, f64, f64, f64) {
    let mut a = [0.0; LANDEN_MAX + 1];
    let mut c = [0.0; LANDEN_MAX + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = (1.0 - m).sqrt();
    let mut n = 0;
    while c[n] > LANDEN_TOL * a[n] && n < LANDEN_MAX {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    let mut prev = phi;
    for i in (1..=n).rev() {
        prev = phi;
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    // The ratio form loses accuracy where cos(phi_1 - phi_0) vanishes (near u = K).
    let ratio_den = (prev - phi).cos();
    let dn = if n == 0 {
        1.0
    } else if ratio_den.abs() > 0.25 {
        cn / ratio_den
    } else {
        (1.0 - m * sn * sn).sqrt()
    };
    (phi, sn, cn, dn)
}

/// Landen evaluation after reduction modulo 2K, so am carries the right quadrant.
fn jacobi_unit(u: f64, m: f64) -> (f64, f64, f64, f64) {
    let two_k = 2.0 * complete_k_m(m);
    let n = (u / two_k).round();
    let (am, sn, cn, dn) = landen(u - n * two_k, m);
    let sign = if n.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
    (am + n * PI, sign * sn, sign * cn, dn)
}

/// Jacobi functions for any real parameter m.
pub fn jacobi_m(u: f64, m: f64) -> JacobiTriple {
    let (sn, cn, dn) = if (0.0..1.0).contains(&m) {
        let (_, s, c, d) = jacobi_unit(u, m);
        (s, c, d)
    } else if m < 0.0 {
        let mp = 1.0 - m;
        let (_, s, c, d) = jacobi_unit(u * mp.sqrt(), -m / mp);
        (s / (d * mp.sqrt()), c / d, 1.0 / d)
    } else if m == 1.0 {
        let sech = 1.0 / u.cosh();
        (u.tanh(), sech, sech)
    } else {
        let k = m.sqrt();
        let (_, s, c, d) = jacobi_unit(u * k, 1.0 / m);
        (s / k, d, c)
    };
    JacobiTriple { u, m, sn, cn, dn }
}

/// sn, cn, dn for modulus 0 <= k < 1.
pub fn jacobi(u: f64, k: f64) -> Result<JacobiTriple> {
    check_modulus(k)?;
    Ok(jacobi_m(u, k * k))
}

/// Jacobi amplitude am(u | m) for m < 1, continuous in u.
pub fn amplitude_m(u: f64, m: f64) -> f64 {
    assert!(m < 1.0, "amplitude_m needs m < 1");
    if m >= 0.0 {
        return jacobi_unit(u, m).0;
    }
    let two_k = 2.0 * complete_k_m(m);
    let n = (u / two_k).round();
    let t = jacobi_m(u - n * two_k, m);
    t.sn.atan2(t.cn) + n * PI
}

/// Residuals of the addition formulas and the three intertwined relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdditionReport {
    pub cn_addition: f64,
    pub dn_addition: f64,
    pub intertwined_1: f64,
    pub intertwined_2: f64,
    pub intertwined_3: f64,
}

impl AdditionReport {
    pub fn max(&self) -> f64 {
        [self.cn_addition, self.dn_addition, self.intertwined_1, self.intertwined_2, self.intertwined_3]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Checks the rational cn and dn expressions for the third uniformizing
/// variable a_i (with cn(a_i) = -cn(a_j + a_k), dn(a_i) = dn(a_j + a_k)) and
/// the intertwined relations at the pair (a_j, a_k).
pub fn spherical_addition_residuals(a_j: f64, a_k: f64, k: f64) -> Result<AdditionReport> {
    check_modulus(k)?;
    let m = k * k;
    let j = jacobi_m(a_j, m);
    let kk = jacobi_m(a_k, m);
    let s = jacobi_m(a_j + a_k, m);
    let den = 1.0 - m * j.sn * j.sn * kk.sn * kk.sn;
    let cn_i = (j.dn * kk.dn * j.sn * kk.sn - j.cn * kk.cn) / den;
    let dn_i = (j.dn * kk.dn - m * j.cn * kk.cn * j.sn * kk.sn) / den;
    let (x, y) = (j, kk);
    Ok(AdditionReport {
        cn_addition: (cn_i + s.cn).abs(),
        dn_addition: (dn_i - s.dn).abs(),
        intertwined_1: (y.cn * s.sn - x.sn * y.dn - x.dn * y.sn * s.cn).abs(),
        intertwined_2: (x.dn * s.sn - x.cn * y.sn - x.sn * y.cn * s.dn).abs(),
        intertwined_3: (x.sn * s.cn + y.sn * s.dn - x.cn * y.dn * s.sn).abs(),
    })
}

/// Residual of the w-relation w_1(a_2)w_2(a_1) + w_2(a_3)w_3(a_2) + w_3(a_1)w_1(a_3)
/// with w_1 = rho/sn, w_2 = rho cn/sn, w_3 = rho dn/sn and a_3 = -(a_1 + a_2).
pub fn yang_baxter_residual(a1: f64, a2: f64, rho: f64, k: f64) -> Result<f64> {
    check_modulus(k)?;
    let m = k * k;
    let a3 = -(a1 + a2);
    let w = |a: f64| -> Result<[f64; 3]> {
        let t = jacobi_m(a, m);
        if t.sn.abs() < 1e-12 {
            return Err(Error::Pole(format!("sn({a}) vanishes")));
        }
        Ok([rho / t.sn, rho * t.cn / t.sn, rho * t.dn / t.sn])
    };
    let (w1, w2, w3) = (w(a1)?, w(a2)?, w(a3)?);
    Ok((w2[0] * w1[1] + w3[1] * w2[2] + w1[2] * w3[0]).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn complete_integral_values() {
        assert_abs_diff_eq!(complete_k(0.0).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        assert!(complete_k(1.0).is_err());
        let big = complete_k(1.0 - 1e-12).unwrap();
        assert!(big.is_finite() && big > 10.0);
        // K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt(pi))
        assert_abs_diff_eq!(complete_k(0.5f64.sqrt()).unwrap(), 1.854_074_677_301_372, epsilon = 1e-14);
    }

    #[test]
    fn f_at_quarter_period() {
        for k in [0.0, 0.3, 0.9, 0.999] {
            let kk = complete_k(k).unwrap();
            assert_abs_diff_eq!(incomplete_f(FRAC_PI_2, k).unwrap() / kk, 1.0, epsilon = 1e-13);
        }
        assert_eq!(incomplete_f(0.0, 0.4).unwrap(), 0.0);
    }

    #[test]
    fn trigonometric_limit() {
        let t = jacobi(0.8, 0.0).unwrap();
        assert_abs_diff_eq!(t.sn, 0.8f64.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(t.cn, 0.8f64.cos(), epsilon = 1e-15);
        assert_eq!(t.dn, 1.0);
    }

    #[test]
    fn quarter_period_values() {
        for k in [0.2, 0.6, 0.95] {
            let kk = complete_k(k).unwrap();
            let t = jacobi(kk, k).unwrap();
            assert_abs_diff_eq!(t.sn, 1.0, epsilon = 1e-13);
            assert_abs_diff_eq!(t.cn, 0.0, epsilon = 1e-7);
            assert_abs_diff_eq!(t.dn, complementary(k), epsilon = 1e-13);
        }
    }

    #[test]
    fn parameter_transforms_keep_identities() {
        for m in [-3.0, -0.4, 0.0, 0.5, 1.0, 1.7, 6.0] {
            for u in [-2.3, 0.1, 0.9, 4.2] {
                let t = jacobi_m(u, m);
                assert!(t.pythagorean_residual() < 1e-12, "m={m} u={u}");
            }
        }
    }

    #[test]
    fn amplitude_matches_sn_cn() {
        for m in [-2.0, 0.0, 0.7] {
            for u in [-5.0, 0.3, 2.9, 7.5] {
                let am = amplitude_m(u, m);
                let t = jacobi_m(u, m);
                assert_abs_diff_eq!(am.sin(), t.sn, epsilon = 1e-12);
                assert_abs_diff_eq!(am.cos(), t.cn, epsilon = 1e-12);
                assert_abs_diff_eq!(incomplete_f_m(am, m), u, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn yang_baxter_scaling() {
        assert_eq!(yang_baxter_residual(0.4, 0.7, 0.0, 0.5).unwrap(), 0.0);
        assert!(matches!(yang_baxter_residual(0.0, 0.7, 1.0, 0.5), Err(Error::Pole(_))));
    }
}
