//! Generalized Jacobi functions s, c, d1, d2 with two moduli.
//!
//! They invert u = int_0^s dt / sqrt((1 - t^2)(1 - k1^2 t^2)(1 - k2^2 t^2)) and
//! reduce to ordinary Jacobi functions of argument k2' u with parameter
//! kappa^2 = (k1^2 - k2^2) / (1 - k2^2).

use serde::Serialize;

use crate::elliptic::jacobi_m;
use crate::error::{Error, Result};
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GJModuli {
    /// k1^2; may exceed 1 when built with [`GJModuli::from_params`].
    pub m1: f64,
    /// k2^2; may be negative when built with [`GJModuli::from_params`].
    pub m2: f64,
}

impl GJModuli {
    /// Moduli with 1 > k1 >= k2 >= 0.
    pub fn new(k1: f64, k2: f64) -> Result<Self> {
        if !(k1 < 1.0 && k1 >= k2 && k2 >= 0.0) {
            return Err(Error::Domain(format!("moduli need 1 > k1 >= k2 >= 0, got ({k1}, {k2})")));
        }
        Ok(Self { m1: k1 * k1, m2: k2 * k2 })
    }

    /// Real parameters m1 = k1^2 >= m2 = k2^2 with m2 < 1, covering the
    /// imaginary-k2 and k1 > 1 regimes.
    pub fn from_params(m1: f64, m2: f64) -> Result<Self> {
        if !(m2 < 1.0 && m1 >= m2 && m1.is_finite()) {
            return Err(Error::Domain(format!("parameters need m1 >= m2 and m2 < 1, got ({m1}, {m2})")));
        }
        Ok(Self { m1, m2 })
    }

    pub fn k1(&self) -> f64 {
        self.m1.sqrt()
    }

    pub fn k2(&self) -> f64 {
        self.m2.sqrt()
    }

    /// k2'^2 = 1 - k2^2
    pub fn k2p2(&self) -> f64 {
        1.0 - self.m2
    }

    pub fn kappa2(&self) -> f64 {
        (self.m1 - self.m2) / (1.0 - self.m2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GJQuad {
    pub u: f64,
    pub s: f64,
    pub c: f64,
    pub d1: f64,
    pub d2: f64,
}

impl GJQuad {
    /// The five quadratic identities linking s, c, d1, d2.
    pub fn identity_residuals(&self, md: &GJModuli) -> [f64; 5] {
        let (s, c, d1, d2) = (self.s, self.c, self.d1, self.d2);
        let (m1, m2) = (md.m1, md.m2);
        [
            (c * c - 1.0 + s * s).abs(),
            (d1 * d1 - 1.0 + m1 * s * s).abs(),
            (d2 * d2 - 1.0 + m2 * s * s).abs(),
            (d1 * d1 - m1 * c * c - (1.0 - m1)).abs().max((d2 * d2 - m2 * c * c - (1.0 - m2)).abs()),
            (m1 * d2 * d2 - m2 * d1 * d1 - (m1 - m2)).abs(),
        ]
    }

    pub fn max_identity_residual(&self, md: &GJModuli) -> f64 {
        self.identity_residuals(md).into_iter().fold(0.0, f64::max)
    }
}

const EQUAL_MODULI: f64 = 1e-8;

pub fn gj_eval(u: f64, md: &GJModuli) -> GJQuad {
    let (m1, m2) = (md.m1, md.m2);
    let k2p2 = md.k2p2();
    let k2p = k2p2.sqrt();
    let t = jacobi_m(k2p * u, md.kappa2());
    let den_sc = (1.0 - m2 * t.cn * t.cn).sqrt();
    let s = t.sn / (k2p2 + m2 * t.sn * t.sn).sqrt();
    let c = k2p * t.cn / den_sc;
    let diff = m1 - m2;
    let (d1, d2) = if diff > EQUAL_MODULI * m1.abs().max(1.0) {
        let den_d = (m1 - m2 * t.dn * t.dn).sqrt();
        (diff.sqrt() * t.dn / den_d, diff.sqrt() / den_d)
    } else {
        // k1 = k2: the common factor sqrt(k1^2 - k2^2) cancels.
        let d2 = k2p / den_sc;
        (t.dn * d2, d2)
    };
    GJQuad { u, s, c, d1, d2 }
}

/// u with s(u) = x, by quadrature of the defining integral after t = x sin(psi).
pub fn gj_invert_s(x: f64, md: &GJModuli) -> Result<f64> {
    if !(x.abs() < 1.0) || md.m1 * x * x >= 1.0 {
        return Err(Error::Domain(format!("s = {x} outside the real inversion range")));
    }
    let (m1, m2) = (md.m1, md.m2);
    let xx = x * x;
    let f = |psi: f64| {
        let (sp, cp) = psi.sin_cos();
        let t2 = xx * sp * sp;
        x * cp / ((1.0 - t2) * (1.0 - m1 * t2) * (1.0 - m2 * t2)).sqrt()
    };
    Ok(quad::integrate(f, 0.0, std::f64::consts::FRAC_PI_2, 1e-13))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeReport {
    pub s: f64,
    pub c: f64,
    pub d1: f64,
    pub d2: f64,
}

impl DerivativeReport {
    pub fn max(&self) -> f64 {
        self.s.max(self.c).max(self.d1).max(self.d2)
    }
}

/// Central differences (h = 1e-5) against s' = c d1 d2, c' = -s d1 d2,
/// d1' = -k1^2 s c d2, d2' = -k2^2 s c d1.
pub fn gj_derivative_residuals(u: f64, md: &GJModuli) -> DerivativeReport {
    let h = 1e-5;
    let p = gj_eval(u + h, md);
    let q = gj_eval(u - h, md);
    let g = gj_eval(u, md);
    let fd = |a: f64, b: f64| (a - b) / (2.0 * h);
    DerivativeReport {
        s: (fd(p.s, q.s) - g.c * g.d1 * g.d2).abs(),
        c: (fd(p.c, q.c) + g.s * g.d1 * g.d2).abs(),
        d1: (fd(p.d1, q.d1) + md.m1 * g.s * g.c * g.d2).abs(),
        d2: (fd(p.d2, q.d2) + md.m2 * g.s * g.c * g.d1).abs(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Addition formulas for u + v (or u - v). The shared denominator is
/// D = sqrt(N_d2^2 + k2^2 N_s^2).
pub fn gj_addition(u: f64, v: f64, sign: Sign, md: &GJModuli) -> Result<GJQuad> {
    let a = gj_eval(u, md);
    let b = gj_eval(v, md);
    let e = sign.value();
    let k2p2 = md.k2p2();
    let kap2 = md.kappa2();
    let ns = a.s * a.d2 * b.c * b.d1 + e * b.s * b.d2 * a.c * a.d1;
    let nc = a.c * a.d2 * b.c * b.d2 - e * k2p2 * a.s * a.d1 * b.s * b.d1;
    let nd1 = a.d1 * a.d2 * b.d1 * b.d2 - e * kap2 * k2p2 * a.s * a.c * b.s * b.c;
    let nd2 = a.d2 * a.d2 * b.d2 * b.d2 - kap2 * k2p2 * k2p2 * a.s * a.s * b.s * b.s;
    let d2 = nd2 * nd2 + md.m2 * ns * ns;
    if !(d2 > 1e-28) {
        return Err(Error::DegenerateDenominator(d2.max(0.0).sqrt()));
    }
    let d = d2.sqrt();
    Ok(GJQuad { u: u + e * v, s: ns / d, c: nc / d, d1: nd1 / d, d2: nd2 / d })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveReport {
    pub x: f64,
    pub y: f64,
    /// y^2 - (1 - x^2)(1 - k1^2 x^2)(1 - k2^2 x^2)
    pub genus2: f64,
    /// w^2 - z(1 - z)(1 - k1^2 z)(1 - k2^2 z) with (w, z) = (x y, x^2)
    pub elliptic: f64,
}

pub fn curve_residuals(u: f64, md: &GJModuli) -> CurveReport {
    let g = gj_eval(u, md);
    let x = g.s;
    let y = g.c * g.d1 * g.d2;
    let quartic = |z: f64| (1.0 - z) * (1.0 - md.m1 * z) * (1.0 - md.m2 * z);
    let (w, z) = (x * y, x * x);
    CurveReport { x, y, genus2: (y * y - quartic(x * x)).abs(), elliptic: (w * w - z * quartic(z)).abs() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::jacobi;
    use approx::assert_abs_diff_eq;

    #[test]
    fn origin() {
        let md = GJModuli::new(0.8, 0.3).unwrap();
        let g = gj_eval(0.0, &md);
        assert_eq!((g.s, g.c, g.d1, g.d2), (0.0, 1.0, 1.0, 1.0));
        let r = curve_residuals(0.0, &md);
        assert_eq!((r.genus2, r.elliptic), (0.0, 0.0));
    }

    #[test]
    fn k2_zero_is_jacobi() {
        let md = GJModuli::new(0.7, 0.0).unwrap();
        for u in [-1.3, 0.4, 2.2] {
            let g = gj_eval(u, &md);
            let t = jacobi(u, 0.7).unwrap();
            assert_abs_diff_eq!(g.s, t.sn, epsilon = 1e-14);
            assert_abs_diff_eq!(g.c, t.cn, epsilon = 1e-14);
            assert_abs_diff_eq!(g.d1, t.dn, epsilon = 1e-14);
            assert_abs_diff_eq!(g.d2, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn equal_moduli_branch_is_continuous() {
        let u = 0.83;
        let eq = gj_eval(u, &GJModuli::new(0.6, 0.6).unwrap());
        let near = gj_eval(u, &GJModuli::new(0.6, 0.6 - 1e-6).unwrap());
        assert_abs_diff_eq!(eq.d1, near.d1, epsilon = 1e-6);
        assert_abs_diff_eq!(eq.d2, (1.0 - 0.36 * eq.s * eq.s).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(eq.d1, eq.d2, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(GJModuli::new(0.3, 0.5).is_err());
        assert!(GJModuli::new(1.0, 0.5).is_err());
        let md = GJModuli::new(0.8, 0.3).unwrap();
        assert!(gj_invert_s(1.0, &md).is_err());
        assert_eq!(gj_invert_s(0.0, &md).unwrap(), 0.0);
    }

    #[test]
    fn addition_identities() {
        let md = GJModuli::new(0.8, 0.3).unwrap();
        let g = gj_eval(0.7, &md);
        let a = gj_addition(0.7, 0.0, Sign::Plus, &md).unwrap();
        assert_abs_diff_eq!(a.s, g.s, epsilon = 1e-12);
        assert_abs_diff_eq!(a.d2, g.d2, epsilon = 1e-12);
        let z = gj_addition(0.7, 0.7, Sign::Minus, &md).unwrap();
        assert_abs_diff_eq!(z.s, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z.c, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z.d1, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z.d2, 1.0, epsilon = 1e-15);
    }
}
