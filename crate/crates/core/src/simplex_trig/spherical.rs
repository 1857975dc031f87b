use std::f64::consts::PI;

use serde::Serialize;

use super::{gsin3, GramMatrix, SimplexConfig, ACOS_SLACK};
use crate::error::{Error, Result};

pub(crate) fn check_angle(t: f64) -> Result<()> {
    if t > 0.0 && t < PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("angle {t} outside (0, pi)")))
    }
}

/// Spherical triangle on vertices 0, 1, 2. `theta[v]` is the side opposite
/// vertex `v`, `alpha[v]` the angle at `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalTriangle {
    pub theta: [f64; 3],
    pub alpha: [f64; 3],
    pub k: f64,
    pub gsin: f64,
}

impl SphericalTriangle {
    /// Sides θ_01, θ_02, θ_12.
    pub fn from_sides(t01: f64, t02: f64, t12: f64) -> Result<Self> {
        for t in [t01, t02, t12] {
            check_angle(t)?;
        }
        let g = gsin3(t01, t02, t12)?;
        if g == 0.0 {
            return Err(Error::Degenerate("collapsed triangle".into()));
        }
        let theta = [t12, t02, t01];
        let mut alpha = [0.0; 3];
        for (v, a) in alpha.iter_mut().enumerate() {
            let (p, q) = others(v);
            // sides adjacent to v are the ones opposite p and q
            let (tp, tq) = (theta[q], theta[p]);
            *a = g.atan2(theta[v].cos() - tp.cos() * tq.cos());
        }
        let k = g / (t01.sin() * t02.sin() * t12.sin());
        Ok(Self { theta, alpha, k, gsin: g })
    }

    pub fn from_gram(g: &GramMatrix) -> Result<Self> {
        if g.dim() != 3 {
            return Err(Error::Dimension(format!("triangle needs m = 3, got {}", g.dim())));
        }
        Self::from_sides(g.cos(0, 1).acos(), g.cos(0, 2).acos(), g.cos(1, 2).acos())
    }

    pub fn from_config(c: &SimplexConfig) -> Result<Self> {
        Self::from_gram(&c.gram)
    }

    /// Side between vertices a and b.
    pub fn side(&self, a: usize, b: usize) -> f64 {
        self.theta[3 - a - b]
    }
}

fn others(v: usize) -> (usize, usize) {
    match v {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Angle α_j at the vertex shared by sides θ_ij and θ_jk.
pub fn spherical_cosine_rule(t_ij: f64, t_ik: f64, t_jk: f64) -> Result<f64> {
    for t in [t_ij, t_ik, t_jk] {
        check_angle(t)?;
    }
    let g = gsin3(t_ij, t_ik, t_jk)?;
    let num = t_ik.cos() - t_ij.cos() * t_jk.cos();
    let arg = num / (t_ij.sin() * t_jk.sin());
    if g == 0.0 && arg.abs() > 1.0 + ACOS_SLACK {
        return Err(Error::Degenerate(format!("cosine rule argument {arg}")));
    }
    Ok(g.atan2(num))
}

pub fn spherical_sine_constant(t_ij: f64, t_ik: f64, t_jk: f64) -> Result<f64> {
    Ok(SphericalTriangle::from_sides(t_ij, t_ik, t_jk)?.k)
}

fn check_spherical(a: [f64; 3]) -> Result<()> {
    for t in a {
        check_angle(t)?;
    }
    let s = a.iter().sum::<f64>();
    if s <= PI {
        return Err(Error::NotSpherical(s));
    }
    Ok(())
}

/// Side θ_jk opposite vertex i, from the three vertex angles.
pub fn spherical_polar_cosine_rule(a_i: f64, a_j: f64, a_k: f64) -> Result<f64> {
    check_spherical([a_i, a_j, a_k])?;
    let arg = (a_j.cos() * a_k.cos() + a_i.cos()) / (a_j.sin() * a_k.sin());
    super::acos_checked(arg)
}

pub fn spherical_excess(a_i: f64, a_j: f64, a_k: f64) -> Result<f64> {
    check_spherical([a_i, a_j, a_k])?;
    Ok(a_i + a_j + a_k - PI)
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

const LABELS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn max_over_labels(f: impl Fn(usize, usize, usize) -> f64) -> f64 {
    LABELS3.iter().map(|l| f(l[0], l[1], l[2])).fold(0.0, f64::max)
}

/// |cotθ_ij sinθ_jk − cotα_k sinα_j − cosθ_jk cosα_j|, worst labeling.
pub fn four_parts_residual(t: &SphericalTriangle) -> f64 {
    max_over_labels(|i, j, k| {
        let (a, th) = (&t.alpha, |a, b| t.side(a, b));
        (cot(th(i, j)) * th(j, k).sin() - cot(a[k]) * a[j].sin() - th(j, k).cos() * a[j].cos()).abs()
    })
}

/// |cosθ_jk sinα_j − cosα_i sinα_k − cosθ_ik sinα_i cosα_k|, worst labeling.
pub fn five_parts_residual(t: &SphericalTriangle) -> f64 {
    max_over_labels(|i, j, k| {
        let (a, th) = (&t.alpha, |a, b| t.side(a, b));
        (th(j, k).cos() * a[j].sin() - a[i].cos() * a[k].sin() - th(i, k).cos() * a[i].sin() * a[k].cos()).abs()
    })
}

/// The five-parts relation with cotθ_jk in the first term. Not an identity;
/// kept as a diagnostic.
pub fn five_parts_cot_variant_residual(t: &SphericalTriangle) -> f64 {
    max_over_labels(|i, j, k| {
        let (a, th) = (&t.alpha, |a, b| t.side(a, b));
        (cot(th(j, k)) * a[j].sin() - a[i].cos() * a[k].sin() - th(i, k).cos() * a[i].sin() * a[k].cos()).abs()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn orthogonal_and_equilateral() {
        let t = SphericalTriangle::from_sides(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!(t.alpha.iter().all(|a| (a - FRAC_PI_2).abs() < 1e-15));
        assert!((t.k - 1.0).abs() < 1e-15);
        let a = spherical_cosine_rule(PI / 3.0, PI / 3.0, PI / 3.0).unwrap();
        assert!((a - (1.0f64 / 3.0).acos()).abs() < 1e-14);
        let th = spherical_polar_cosine_rule(2.0 * PI / 3.0, 2.0 * PI / 3.0, 2.0 * PI / 3.0).unwrap();
        assert!((th - (-1.0f64 / 3.0).acos()).abs() < 1e-14);
        assert!((spherical_excess(2.0 * PI / 3.0, 2.0 * PI / 3.0, 2.0 * PI / 3.0).unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(spherical_excess(1.0, 1.0, 1.0), Err(Error::NotSpherical(_))));
        assert!(matches!(spherical_cosine_rule(0.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(SphericalTriangle::from_sides(1.0, 0.3, 0.5), Err(Error::NonRealizable(_))));
    }
}
