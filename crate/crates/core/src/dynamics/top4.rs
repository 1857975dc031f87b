//! The four-dimensional top with Hamiltonians H₁ = ½ΣM², H₂ = ½ΣαM², H₃ = ½ΣβM².

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::nambu::{nambu4_bracket, Coord, Quadratic};
use crate::error::{Error, Result};
use crate::gjelliptic::{gj_eval, GJModuli};
use crate::multivec::{det, dot, rows_matrix};

pub type TopState4 = [f64; 4];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nambu4Params {
    pub alpha: [f64; 4],
    pub beta: [f64; 4],
}

impl Nambu4Params {
    pub fn new(alpha: [f64; 4], beta: [f64; 4]) -> Result<Self> {
        let p = Self { alpha, beta };
        if p.coefficients().iter().all(|&c| c == 0.0) {
            return Err(Error::Degenerate("all four coefficients vanish".into()));
        }
        Ok(p)
    }

    /// c_i with Ṁ_i = c_i Π_{j≠i} M_j, that is c_i = det(e_i, 𝟙, α, β).
    pub fn coefficients(&self) -> [f64; 4] {
        std::array::from_fn(|i| {
            let mut e = [0.0; 4];
            e[i] = 1.0;
            det(&rows_matrix(&[e, [1.0; 4], self.alpha, self.beta])).expect("4x4")
        })
    }

    pub fn hamiltonians(&self) -> [Quadratic<4>; 3] {
        [Quadratic::diagonal([1.0; 4]), Quadratic::diagonal(self.alpha), Quadratic::diagonal(self.beta)]
    }
}

pub fn hamiltonian_values(m: &TopState4, p: &Nambu4Params) -> [f64; 3] {
    let q = |w: &[f64; 4]| 0.5 * (0..4).map(|i| w[i] * m[i] * m[i]).sum::<f64>();
    [q(&[1.0; 4]), q(&p.alpha), q(&p.beta)]
}

fn others(i: usize) -> [usize; 3] {
    let mut o = [0; 3];
    let mut n = 0;
    for j in 0..4 {
        if j != i {
            o[n] = j;
            n += 1;
        }
    }
    o
}

/// Ṁ_i = c_i Π_{j≠i} M_j for given coefficients.
pub fn euler4_rhs_coeffs(m: &TopState4, c: &[f64; 4]) -> TopState4 {
    std::array::from_fn(|i| c[i] * others(i).iter().map(|&j| m[j]).product::<f64>())
}

pub fn euler4_rhs(m: &TopState4, p: &Nambu4Params) -> TopState4 {
    euler4_rhs_coeffs(m, &p.coefficients())
}

/// Ṁ_i = {M_i, H₁, H₂, H₃}.
pub fn euler4_bracket_rhs(m: &TopState4, p: &Nambu4Params) -> TopState4 {
    let [a, b, c] = p.hamiltonians();
    std::array::from_fn(|i| nambu4_bracket(&Coord(i), &a, &b, &c, m))
}

/// Coefficients for which (A₁s, A₂c, A₃d₁, A₄d₂)(K(t − t₀)) solves the flow,
/// with general complex amplitudes and parameters m₁ = k₁², m₂ = k₂².
pub fn euler4_coefficients_complex(a: [Complex64; 4], k: Complex64, m1: f64, m2: f64) -> Result<[Complex64; 4]> {
    if a.iter().any(|x| x.norm() == 0.0) || k.norm() == 0.0 {
        return Err(Error::Domain("zero amplitude or rate".into()));
    }
    Ok([
        a[0] * k / (a[1] * a[2] * a[3]),
        -a[1] * k / (a[0] * a[2] * a[3]),
        -m1 * a[2] * k / (a[0] * a[1] * a[3]),
        -m2 * a[3] * k / (a[0] * a[1] * a[2]),
    ])
}

pub fn euler4_coefficients(a: [f64; 4], k: f64, k1: f64, k2: f64) -> Result<[f64; 4]> {
    let c = euler4_coefficients_complex(a.map(Complex64::from), k.into(), k1 * k1, k2 * k2)?;
    Ok(c.map(|z| z.re))
}

pub fn euler4_closed_form(t: f64, a: [f64; 4], k: f64, md: &GJModuli, t0: f64) -> TopState4 {
    let g = gj_eval(k * (t - t0), md);
    [a[0] * g.s, a[1] * g.c, a[2] * g.d1, a[3] * g.d2]
}

/// The amplitude A₁ for which the coefficients sum to zero, as H₁
/// conservation requires: A₁² = A₂² + k₁²A₃² + k₂²A₄².
pub fn balanced_a1(a2: f64, a3: f64, a4: f64, md: &GJModuli) -> f64 {
    (a2 * a2 + md.m1 * a3 * a3 + md.m2 * a4 * a4).sqrt()
}

/// α and β reproducing the coefficients c (which must sum to zero): they span
/// the orthogonal complement of {𝟙, c}, scaled so that det(e_i, 𝟙, α, β) = c_i.
pub fn params_for_coefficients(c: &[f64; 4]) -> Result<Nambu4Params> {
    let size = c.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if size == 0.0 {
        return Err(Error::Degenerate("zero coefficients".into()));
    }
    let sum: f64 = c.iter().sum();
    if sum.abs() > 1e-12 * size {
        return Err(Error::Constraint(format!("coefficients sum to {sum:e}, not zero")));
    }
    // Gram–Schmidt of the standard basis against {𝟙, c}.
    let one = [0.5; 4];
    let cn: Vec<f64> = {
        let n = dot(c, c).sqrt();
        c.iter().map(|x| x / n).collect()
    };
    let mut basis: Vec<Vec<f64>> = vec![one.to_vec(), cn];
    while basis.len() < 4 {
        let best = (0..4)
            .map(|i| {
                let mut v = vec![0.0; 4];
                v[i] = 1.0;
                for b in &basis {
                    let d = dot(&v, b);
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= d * y;
                    }
                }
                v
            })
            .max_by(|a, b| dot(a, a).total_cmp(&dot(b, b)))
            .expect("nonempty");
        let n = dot(&best, &best).sqrt();
        basis.push(best.iter().map(|x| x / n).collect());
    }
    let alpha: [f64; 4] = basis[2].clone().try_into().expect("length 4");
    let beta0: [f64; 4] = basis[3].clone().try_into().expect("length 4");
    let probe = Nambu4Params { alpha, beta: beta0 }.coefficients();
    let j = (0..4).max_by(|&a, &b| c[a].abs().total_cmp(&c[b].abs())).expect("nonempty");
    let scale = c[j] / probe[j];
    Ok(Nambu4Params { alpha, beta: beta0.map(|x| x * scale) })
}
