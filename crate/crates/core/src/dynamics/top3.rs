//! The free Euler top in R³.

use serde::{Deserialize, Serialize};

use super::nambu::{nambu3_bracket, Coord, Quadratic};
use crate::elliptic::{incomplete_f_m, jacobi_m};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inertia3 {
    pub i: [f64; 3],
}

impl Inertia3 {
    pub fn new(i1: f64, i2: f64, i3: f64) -> Result<Self> {
        if !(i1 > 0.0 && i1 < i2 && i2 < i3 && i3.is_finite()) {
            return Err(Error::Domain(format!("need 0 < I1 < I2 < I3, got ({i1}, {i2}, {i3})")));
        }
        Ok(Self { i: [i1, i2, i3] })
    }

    /// Coefficients p with Ṁ_1 = p_1 M_2 M_3 and cyclically.
    pub fn coefficients(&self) -> [f64; 3] {
        let [a, b, c] = self.i;
        [1.0 / c - 1.0 / b, 1.0 / a - 1.0 / c, 1.0 / b - 1.0 / a]
    }
}

pub type TopState3 = [f64; 3];

/// Energy ½ Σ M_i²/I_i.
pub fn h1(m: &TopState3, inertia: &Inertia3) -> f64 {
    0.5 * (0..3).map(|i| m[i] * m[i] / inertia.i[i]).sum::<f64>()
}

/// ½ Σ M_i².
pub fn h2(m: &TopState3) -> f64 {
    0.5 * m.iter().map(|x| x * x).sum::<f64>()
}

pub fn h1_field(inertia: &Inertia3) -> Quadratic<3> {
    Quadratic::diagonal(inertia.i.map(|x| 1.0 / x))
}

pub fn h2_field() -> Quadratic<3> {
    Quadratic::diagonal([1.0; 3])
}

pub fn euler3_rhs(m: &TopState3, inertia: &Inertia3) -> TopState3 {
    let p = inertia.coefficients();
    [p[0] * m[1] * m[2], p[1] * m[0] * m[2], p[2] * m[0] * m[1]]
}

/// The same vector field through the bracket: Ṁ_i = {H₂, H₁, M_i}.
pub fn euler3_bracket_rhs(m: &TopState3, inertia: &Inertia3) -> TopState3 {
    let (e, l) = (h1_field(inertia), h2_field());
    std::array::from_fn(|i| nambu3_bracket(&l, &e, &Coord(i), m))
}

/// Closed form M_x = A_x sn(ωt + τ), M_2 = A_2 cn(ωt + τ), M_z = A_z dn(ωt + τ)
/// with (x, z) = (1, 3) when L² > 2E I₂ and (3, 1) otherwise. The parameter m
/// of sn, cn, dn is never positive here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Top3Solution {
    pub inertia: Inertia3,
    pub m0: TopState3,
    /// Axis carrying sn and axis carrying dn (0-based).
    pub sn_axis: usize,
    pub dn_axis: usize,
    pub amplitude: [f64; 3],
    pub omega: f64,
    pub tau0: f64,
    pub m: f64,
    /// Parameter after the imaginary-modulus transform, −m/(1−m).
    pub mu: f64,
    /// True on a principal-axis equilibrium.
    pub constant: bool,
}

pub const SEPARATRIX_TOL: f64 = 1e-10;

impl Top3Solution {
    pub fn new(inertia: Inertia3, m0: TopState3) -> Result<Self> {
        let e2 = 2.0 * h1(&m0, &inertia);
        let l2 = 2.0 * h2(&m0);
        let p = inertia.coefficients();
        let iv = inertia.i;
        let (x, z) = if l2 > e2 * iv[1] { (0, 2) } else { (2, 0) };
        let y = 1;
        let den = 1.0 / iv[y] - 1.0 / iv[z];
        let ay2 = ((e2 - l2 / iv[z]) / den).max(0.0);
        let az2 = (l2 / iv[y] - e2) / den;
        let mut sol = Self {
            inertia,
            m0,
            sn_axis: x,
            dn_axis: z,
            amplitude: [0.0; 3],
            omega: 0.0,
            tau0: 0.0,
            m: 0.0,
            mu: 0.0,
            constant: false,
        };
        let scale = l2.max(f64::MIN_POSITIVE);
        if ay2 <= 1e-14 * scale || az2 <= 1e-14 * scale {
            let on_axis = m0[x] == 0.0 && m0[z] == 0.0;
            if az2.abs() <= 1e-14 * scale && ay2 > 1e-14 * scale && !on_axis {
                return Err(Error::Separatrix(0.0));
            }
            sol.constant = true;
            sol.amplitude = m0;
            return Ok(sol);
        }
        let ay = ay2.sqrt();
        let az = az2.sqrt().copysign(m0[z]);
        let ax = (-(p[x] / p[y]) * ay2).sqrt();
        let omega = p[x] * ay * az / ax;
        let m = -p[z] * ax * ay / (az * omega);
        let mu = if m < 0.0 { -m / (1.0 - m) } else { m };
        if (1.0 - mu).abs() < SEPARATRIX_TOL {
            return Err(Error::Separatrix((1.0 - mu).abs()));
        }
        sol.amplitude[x] = ax;
        sol.amplitude[y] = ay;
        sol.amplitude[z] = az;
        sol.omega = omega;
        sol.m = m;
        sol.mu = mu;
        sol.tau0 = incomplete_f_m((m0[x] / ax).atan2(m0[y] / ay), m);
        Ok(sol)
    }

    pub fn state(&self, t: f64) -> TopState3 {
        if self.constant {
            return self.m0;
        }
        let j = jacobi_m(self.omega * t + self.tau0, self.m);
        let mut out = [0.0; 3];
        out[self.sn_axis] = self.amplitude[self.sn_axis] * j.sn;
        out[1] = self.amplitude[1] * j.cn;
        out[self.dn_axis] = self.amplitude[self.dn_axis] * j.dn;
        out
    }
}

/// Closed form at time t (from M(0) = m0).
pub fn euler3_closed_form(t: f64, inertia: &Inertia3, m0: &TopState3) -> Result<TopState3> {
    Ok(Top3Solution::new(*inertia, *m0)?.state(t))
}

/// The modulus expression quoted alongside the sn, cn, dn solution, read as a
/// parameter k², with H₂ either as defined (½ΣM²) or doubled (ΣM²).
pub fn quoted_modulus_sq(inertia: &Inertia3, m0: &TopState3, doubled_h2: bool) -> f64 {
    let [i1, i2, i3] = inertia.i;
    let e = h1(m0, inertia);
    let l = if doubled_h2 { 2.0 * h2(m0) } else { h2(m0) };
    (i2 - i1) / (i3 - i2) * (2.0 * e * i3 - l) / (l - 2.0 * i1 * e)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusCheck {
    /// Parameter forced by the equations of motion.
    pub fitted_m: f64,
    pub quoted_k2: f64,
    pub quoted_residual: f64,
    pub doubled_k2: f64,
    pub doubled_residual: f64,
}

impl ModulusCheck {
    pub fn best_residual(&self) -> f64 {
        self.quoted_residual.min(self.doubled_residual)
    }
}

/// Sup over t ∈ [0, t_max] of |d/dt M − euler3_rhs(M)| for the sn, cn, dn form
/// with the amplitudes, rate and phase of [`Top3Solution`] and parameter m.
fn form_ode_residual(sol: &Top3Solution, m: f64, t_max: f64) -> f64 {
    let n = 200;
    let mut worst = 0.0f64;
    for s in 0..=n {
        let t = t_max * s as f64 / n as f64;
        let j = jacobi_m(sol.omega * t + sol.tau0, m);
        let a = sol.amplitude;
        let (x, z) = (sol.sn_axis, sol.dn_axis);
        let mut state = [0.0; 3];
        state[x] = a[x] * j.sn;
        state[1] = a[1] * j.cn;
        state[z] = a[z] * j.dn;
        let mut deriv = [0.0; 3];
        deriv[x] = a[x] * sol.omega * j.cn * j.dn;
        deriv[1] = -a[1] * sol.omega * j.sn * j.dn;
        deriv[z] = -m * a[z] * sol.omega * j.sn * j.cn;
        let rhs = euler3_rhs(&state, &sol.inertia);
        for i in 0..3 {
            worst = worst.max((deriv[i] - rhs[i]).abs());
        }
    }
    worst
}

/// Tests whether the quoted modulus, read as k², turns the sn, cn, dn form
/// into a solution. Both readings of H₂ are tried.
pub fn check_quoted_modulus(inertia: &Inertia3, m0: &TopState3, t_max: f64) -> Result<ModulusCheck> {
    let sol = Top3Solution::new(*inertia, *m0)?;
    let quoted_k2 = quoted_modulus_sq(inertia, m0, false);
    let doubled_k2 = quoted_modulus_sq(inertia, m0, true);
    Ok(ModulusCheck {
        fitted_m: sol.m,
        quoted_k2,
        quoted_residual: form_ode_residual(&sol, quoted_k2, t_max),
        doubled_k2,
        doubled_residual: form_ode_residual(&sol, doubled_k2, t_max),
    })
}

/// The fitted form itself, as a baseline for [`check_quoted_modulus`].
pub fn fitted_form_residual(inertia: &Inertia3, m0: &TopState3, t_max: f64) -> Result<f64> {
    let sol = Top3Solution::new(*inertia, *m0)?;
    Ok(if sol.constant { 0.0 } else { form_ode_residual(&sol, sol.m, t_max) })
}
