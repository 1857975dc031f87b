//! The two-particle double-elliptic model: Hamiltonian in (P, Q) and the
//! equivalent flow on four quadrics in C⁶.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::elliptic::{amplitude_m, incomplete_f_dm, jacobi_m};
use crate::error::{Error, Result};
use crate::gjelliptic::{gj_eval, GJModuli};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlphaProfile {
    /// α² = 1 − 2g²/Q²
    Rational,
    /// α = 1 − 2g² cn²(Q; k̃), whose derivative is 4g² sn cn dn.
    Elliptic { kt: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DellHamParams {
    pub g: f64,
    /// Modulus of the momentum dependence, in (0, 1).
    pub k: f64,
    pub profile: AlphaProfile,
}

/// α(Q) and α′(Q).
pub fn alpha_profile(q: f64, p: &DellHamParams) -> Result<(f64, f64)> {
    let g2 = p.g * p.g;
    let (a, da) = match p.profile {
        AlphaProfile::Rational => {
            let a2 = 1.0 - 2.0 * g2 / (q * q);
            if !(a2 > 0.0) {
                return Err(Error::Domain(format!("alpha^2 = {a2} at Q = {q}")));
            }
            let a = a2.sqrt();
            (a, 2.0 * g2 / (q * q * q * a))
        }
        AlphaProfile::Elliptic { kt } => {
            let j = jacobi_m(q, kt * kt);
            (1.0 - 2.0 * g2 * j.cn * j.cn, 4.0 * g2 * j.sn * j.cn * j.dn)
        }
    };
    if !(a * a <= 1.0) {
        return Err(Error::Domain(format!("alpha^2 = {} exceeds 1 at Q = {q}", a * a)));
    }
    Ok((a, da))
}

/// Generalized Jacobi moduli (k, k√(1 − α²)).
pub fn dell_moduli(alpha: f64, k: f64) -> Result<GJModuli> {
    GJModuli::new(k, k * (1.0 - alpha * alpha).max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DellHamiltonian {
    /// α cn(P√(k′² + k²α²); kα/√(k′² + k²α²))
    pub cn_form: f64,
    /// α c(P)/d₂(P)
    pub gj_form: f64,
}

impl DellHamiltonian {
    pub fn disagreement(&self) -> f64 {
        (self.cn_form - self.gj_form).abs()
    }
}

fn cn_argument(alpha: f64, k: f64) -> (f64, f64) {
    let w2 = 1.0 - k * k + k * k * alpha * alpha;
    (w2.sqrt(), k * k * alpha * alpha / w2)
}

pub fn dell_hamiltonian(p: f64, q: f64, params: &DellHamParams) -> Result<DellHamiltonian> {
    let (a, _) = alpha_profile(q, params)?;
    let (w, m) = cn_argument(a, params.k);
    let cn_form = a * jacobi_m(p * w, m).cn;
    let g = gj_eval(p, &dell_moduli(a, params.k)?);
    Ok(DellHamiltonian { cn_form, gj_form: a * g.c / g.d2 })
}

/// (Ṗ, Q̇) = (−∂H/∂Q, ∂H/∂P). ∂H/∂P = −α k₂′² s d₁/d₂²; ∂H/∂Q goes through
/// α in both the argument and the parameter of cn.
pub fn dell_hamilton_rhs(p: f64, q: f64, params: &DellHamParams) -> Result<(f64, f64)> {
    let (a, da) = alpha_profile(q, params)?;
    let k = params.k;
    let md = dell_moduli(a, k)?;
    let g = gj_eval(p, &md);
    let dh_dp = -a * md.k2p2() * g.s * g.d1 / (g.d2 * g.d2);

    let (w, m) = cn_argument(a, k);
    let u = p * w;
    let j = jacobi_m(u, m);
    let du = p * k * k * a / w;
    let dm = 2.0 * k * k * a * (1.0 - k * k) / (w * w * w * w);
    let dcn_dm = j.sn * j.dn * incomplete_f_dm(amplitude_m(u, m), m);
    let dcn = -j.sn * j.dn * du + dcn_dm * dm;
    let dh_dq = da * (j.cn + a * dcn);
    Ok((-dh_dq, dh_dp))
}

/// Largest gap between [`dell_hamilton_rhs`] and central differences of H.
pub fn dell_rhs_fd_residual(p: f64, q: f64, params: &DellHamParams) -> Result<f64> {
    let h = 1e-6;
    let hh = |p: f64, q: f64| dell_hamiltonian(p, q, params).map(|x| x.gj_form);
    let (pd, qd) = dell_hamilton_rhs(p, q, params)?;
    let dq = (hh(p, q + h)? - hh(p, q - h)?) / (2.0 * h);
    let dp = (hh(p + h, q)? - hh(p - h, q)?) / (2.0 * h);
    Ok((pd + dq).abs().max((qd - dp).abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DellParams {
    pub g: f64,
    /// k̃ in (0, 1).
    pub kt: f64,
}

impl DellParams {
    pub fn new(g: f64, kt: f64) -> Result<Self> {
        if !(kt > 0.0 && kt < 1.0) || !g.is_finite() {
            return Err(Error::Domain(format!("need 0 < kt < 1 and finite g, got ({g}, {kt})")));
        }
        Ok(Self { g, kt })
    }

    /// The first modulus as quoted, 1/k̃.
    pub fn k1(&self) -> f64 {
        1.0 / self.kt
    }

    /// The second modulus as quoted, k̃√(−2g²), which is imaginary for real g.
    pub fn quoted_k2(&self) -> Complex64 {
        self.kt * Complex64::new(-2.0 * self.g * self.g, 0.0).sqrt()
    }
}

pub type DellQuadricState = [Complex64; 6];

/// The four quadric polynomials, without their levels:
/// x₁² − x₂², x₁² − x₃², −g²x₁² + x₄² + x₅², −g²x₁² + x₄² + x₆²/k̃².
pub fn quadrics(x: &DellQuadricState, p: &DellParams) -> [Complex64; 4] {
    let g2 = p.g * p.g;
    let x1s = x[0] * x[0];
    [
        x1s - x[1] * x[1],
        x1s - x[2] * x[2],
        -g2 * x1s + x[3] * x[3] + x[4] * x[4],
        -g2 * x1s + x[3] * x[3] + x[5] * x[5] / (p.kt * p.kt),
    ]
}

/// Distance of x from the two quadrics with fixed levels, Q₃ = 1 and Q₄ = k̃⁻².
pub fn surface_residual(x: &DellQuadricState, p: &DellParams) -> f64 {
    let q = quadrics(x, p);
    (q[2] - 1.0).norm().max((q[3] - 1.0 / (p.kt * p.kt)).norm() * p.kt * p.kt)
}

pub const SURFACE_TOL: f64 = 1e-6;

/// ẋ = (x₂x₃x₄x₆, x₁x₃x₄x₆, x₁x₂x₄x₆, g²x₁x₂x₃x₆, 0, 0).
pub fn dell_quadric_rhs(x: &DellQuadricState, p: &DellParams) -> Result<DellQuadricState> {
    let r = surface_residual(x, p);
    if !(r <= SURFACE_TOL) {
        return Err(Error::OffSurface(r));
    }
    Ok(dell_quadric_flow(x, p))
}

/// The flow without the surface check.
pub fn dell_quadric_flow(x: &DellQuadricState, p: &DellParams) -> DellQuadricState {
    let z = Complex64::new(0.0, 0.0);
    [
        x[1] * x[2] * x[3] * x[5],
        x[0] * x[2] * x[3] * x[5],
        x[0] * x[1] * x[3] * x[5],
        p.g * p.g * x[0] * x[1] * x[2] * x[5],
        z,
        z,
    ]
}

/// {x_i, x₅} from the Levi-Civita contraction of the quadric gradients, that is
/// det(e_i, e₅, ∇Q₁, ∇Q₂, ∇Q₃, ∇Q₄).
pub fn dell_bracket_with_x5(x: &DellQuadricState, p: &DellParams) -> DellQuadricState {
    let z = Complex64::new(0.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let g2 = p.g * p.g;
    let grads = [
        [two * x[0], -two * x[1], z, z, z, z],
        [two * x[0], z, -two * x[2], z, z, z],
        [-two * g2 * x[0], z, z, two * x[3], two * x[4], z],
        [-two * g2 * x[0], z, z, two * x[3], z, two * x[5] / (p.kt * p.kt)],
    ];
    std::array::from_fn(|i| {
        let m = DMatrix::from_fn(6, 6, |r, c| match r {
            0 => Complex64::from(if c == i { 1.0 } else { 0.0 }),
            1 => Complex64::from(if c == 4 { 1.0 } else { 0.0 }),
            _ => grads[r - 2][c],
        });
        m.determinant()
    })
}

/// Factor between the bracket {x_i, x₅} and the flow: ẋ = −(k̃²/16) {x, x₅}.
pub fn bracket_normalization(p: &DellParams) -> f64 {
    -p.kt * p.kt / 16.0
}

/// Closed-form solution x = (A₁s, A₂c, A₃d₁, A₄d₂)(K(t − t₀)), x₅ = E, x₆ = K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DellSolution {
    pub params: DellParams,
    pub energy: f64,
    pub k: f64,
    pub t0: f64,
    pub moduli: GJModuli,
    pub amplitude: [Complex64; 4],
    /// Values of Q₁..Q₄ on the solution.
    pub levels: [f64; 4],
}

pub const ENERGY_RELATION_TOL: f64 = 1e-10;

impl DellSolution {
    /// Requires k̃²(1 − E²) = 1 − K² and |E| < 1.
    pub fn new(params: DellParams, energy: f64, k: f64, t0: f64) -> Result<Self> {
        if !(energy.abs() < 1.0) {
            return Err(Error::Domain(format!("energy {energy} outside (-1, 1)")));
        }
        let kt2 = params.kt * params.kt;
        let e1 = 1.0 - energy * energy;
        let gap = (kt2 * e1 - (1.0 - k * k)).abs();
        if gap > ENERGY_RELATION_TOL {
            return Err(Error::Constraint(format!("kt^2 (1 - E^2) differs from 1 - K^2 by {gap:e}")));
        }
        let pp = 1.0 / (kt2 * e1);
        let g2 = params.g * params.g;
        let moduli = GJModuli::from_params(1.0 / kt2, -g2 / (kt2 * e1 * e1))?;
        let sp = pp.sqrt();
        let i = Complex64::i();
        let amplitude = [Complex64::from(sp), i * sp, i * sp * params.kt, Complex64::from(-e1.sqrt())];
        Ok(Self { params, energy, k, t0, moduli, amplitude, levels: [pp, pp * kt2, 1.0, 1.0 / kt2] })
    }

    /// K for a given energy, from the last two quadrics.
    pub fn rate_for_energy(params: &DellParams, energy: f64) -> f64 {
        (1.0 - params.kt * params.kt * (1.0 - energy * energy)).sqrt()
    }

    pub fn state(&self, t: f64) -> DellQuadricState {
        let g = gj_eval(self.k * (t - self.t0), &self.moduli);
        let a = self.amplitude;
        [a[0] * g.s, a[1] * g.c, a[2] * g.d1, a[3] * g.d2, self.energy.into(), self.k.into()]
    }

    /// max |Q_i(x) − level_i| at time t.
    pub fn quadric_residual(&self, t: f64) -> f64 {
        let q = quadrics(&self.state(t), &self.params);
        (0..4).map(|i| (q[i] - self.levels[i]).norm()).fold(0.0, f64::max)
    }
}

pub fn dell_closed_form(t: f64, params: &DellParams, energy: f64, k: f64, t0: f64) -> Result<DellQuadricState> {
    Ok(DellSolution::new(*params, energy, k, t0)?.state(t))
}

/// Packs a complex state as (re, im) pairs for the real integrator.
pub fn pack(x: &DellQuadricState) -> Vec<f64> {
    x.iter().flat_map(|z| [z.re, z.im]).collect()
}

pub fn unpack(v: &[f64]) -> DellQuadricState {
    std::array::from_fn(|i| Complex64::new(v[2 * i], v[2 * i + 1]))
}
