//! Dictionaries between simplex trigonometry and elliptic functions.
//!
//! A spherical triangle with sine constant k > 1 and acute sides is uniformized
//! by b_i = F(α_i; 1/k), with b_i + b_j + b_k = 2K(1/k). Dividing by k gives the
//! variables a_i with sn(a_i; k) = sinθ_jk, cn(a_i; k) = cosθ_jk and
//! dn(a_i; k) = cosα_i.

use serde::Serialize;

use crate::elliptic::{amplitude_m, complete_k_m, incomplete_f_m, jacobi_m};
use crate::error::{Error, Result};
use crate::gjelliptic::{gj_eval, gj_invert_s, GJModuli, GJQuad};
use crate::simplex_trig::{
    gsin3, gsin6, pair_index, spherical_sine_constant, symmetric_tetrahedron, vertex_sine_constant,
    HypersphericalTetrahedron, SphericalTriangle, PAIRS,
};

/// Smallest sine constant accepted by the a-parameterization.
pub const A_PARAM_MIN_K: f64 = 1.0 + 1e-9;
/// Spread below which a tetrahedron is treated as having one k₁ and one k₂.
pub const GJ_SPREAD_TOL: f64 = 1e-6;

fn others(v: usize) -> (usize, usize) {
    match v {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformizedTriangle {
    pub mu: f64,
    pub b: [f64; 3],
    /// am(b_v; μ²), the vertex angles as given by the elliptic data.
    pub alpha_b: [f64; 3],
    pub triangle: SphericalTriangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BTriangleReport {
    /// Vertex angles from the sides vs am(b).
    pub cosine_rule: f64,
    /// |k − 1/μ|
    pub sine_constant: f64,
    /// |sinα − sn(b)| and |cosθ − dn(b)|
    pub dictionary: f64,
    /// |cn(b_i) + cn(b_j + b_k)| and |dn(b_i) − dn(b_j + b_k)|
    pub b_relations: f64,
}

impl BTriangleReport {
    pub fn max(&self) -> f64 {
        self.cosine_rule.max(self.sine_constant).max(self.dictionary).max(self.b_relations)
    }
}

/// Triangle with vertex angles am(b_v; μ²) and sides cosθ = dn(b_v; μ²)
/// opposite v, where b_k = 2K(μ) − b_i − b_j.
pub fn triangle_from_b(b_i: f64, b_j: f64, mu: f64) -> Result<UniformizedTriangle> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::Domain(format!("modulus {mu} outside (0, 1)")));
    }
    let m = mu * mu;
    let b_k = 2.0 * complete_k_m(m) - b_i - b_j;
    if !(b_i > 0.0 && b_j > 0.0 && b_k > 0.0) {
        return Err(Error::Constraint(format!("need positive b, got ({b_i}, {b_j}, {b_k})")));
    }
    let b = [b_i, b_j, b_k];
    let alpha_b = b.map(|x| amplitude_m(x, m));
    let theta = b.map(|x| {
        let t = jacobi_m(x, m);
        (mu * t.sn).atan2(t.dn)
    });
    let triangle = SphericalTriangle::from_sides(theta[2], theta[1], theta[0])?;
    Ok(UniformizedTriangle { mu, b, alpha_b, triangle })
}

impl UniformizedTriangle {
    pub fn residuals(&self) -> BTriangleReport {
        let m = self.mu * self.mu;
        let t = &self.triangle;
        let mut r = BTriangleReport {
            cosine_rule: 0.0,
            sine_constant: (t.k - 1.0 / self.mu).abs(),
            dictionary: 0.0,
            b_relations: 0.0,
        };
        for v in 0..3 {
            let (p, q) = others(v);
            let jb = jacobi_m(self.b[v], m);
            let pair = jacobi_m(self.b[p] + self.b[q], m);
            r.cosine_rule = r.cosine_rule.max((t.alpha[v] - self.alpha_b[v]).abs());
            r.dictionary = r.dictionary.max((t.alpha[v].sin() - jb.sn).abs()).max((t.theta[v].cos() - jb.dn).abs());
            r.b_relations = r.b_relations.max((jb.cn + pair.cn).abs()).max((jb.dn - pair.dn).abs());
        }
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AParamReport {
    pub k: f64,
    pub b: [f64; 3],
    /// |Σb − 2K(1/k)|
    pub sum: f64,
    /// |cn(b_i) + cn(b_j + b_k)|, worst label.
    pub cn_relation: f64,
    /// |dn(b_i) − dn(b_j + b_k)|, worst label.
    pub dn_relation: f64,
    /// sn, cn, dn of a_i = b_i/k with parameter k² against sinθ_jk, cosθ_jk, cosα_i.
    pub dictionary: f64,
    /// cn a_i = cn a_j cn a_k + sn a_j sn a_k dn a_i
    pub cosine_form: f64,
    /// dn a_i = −dn a_j dn a_k + k² sn a_j sn a_k cn a_i
    pub polar_form: f64,
}

impl AParamReport {
    pub fn max(&self) -> f64 {
        [self.sum, self.cn_relation, self.dn_relation, self.dictionary, self.cosine_form, self.polar_form]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Checks the a-parameterization of a triangle through its real consequences.
/// The modulus k > 1 is handled by flipping to 1/k.
pub fn verify_a_parameterization(tri: &SphericalTriangle) -> Result<AParamReport> {
    let k = tri.k;
    if !(k >= A_PARAM_MIN_K) {
        return Err(Error::Inadmissible(format!("sine constant {k} is not above 1")));
    }
    if tri.theta.iter().any(|&t| t >= std::f64::consts::FRAC_PI_2) {
        return Err(Error::Inadmissible("obtuse side".into()));
    }
    let mu2 = 1.0 / (k * k);
    let b = tri.alpha.map(|a| incomplete_f_m(a, mu2));
    let mut r = AParamReport {
        k,
        b,
        sum: (b.iter().sum::<f64>() - 2.0 * complete_k_m(mu2)).abs(),
        cn_relation: 0.0,
        dn_relation: 0.0,
        dictionary: 0.0,
        cosine_form: 0.0,
        polar_form: 0.0,
    };
    let m = k * k;
    let a = b.map(|x| jacobi_m(x / k, m));
    for v in 0..3 {
        let (p, q) = others(v);
        let jb = jacobi_m(b[v], mu2);
        let pair = jacobi_m(b[p] + b[q], mu2);
        r.cn_relation = r.cn_relation.max((jb.cn + pair.cn).abs());
        r.dn_relation = r.dn_relation.max((jb.dn - pair.dn).abs());
        let (th, al) = (tri.theta[v], tri.alpha[v]);
        r.dictionary = r
            .dictionary
            .max((a[v].sn - th.sin()).abs())
            .max((a[v].cn - th.cos()).abs())
            .max((a[v].dn - al.cos()).abs());
        let (x, y, z) = (a[v], a[p], a[q]);
        r.cosine_form = r.cosine_form.max((x.cn - y.cn * z.cn - y.sn * z.sn * x.dn).abs());
        r.polar_form = r.polar_form.max((x.dn + y.dn * z.dn - m * y.sn * z.sn * x.cn).abs());
    }
    Ok(r)
}

fn complement(a: usize, b: usize) -> (usize, usize) {
    let mut it = (0..4).filter(|&x| x != a && x != b);
    (it.next().unwrap(), it.next().unwrap())
}

const FD_STEP: f64 = 1e-6;
const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX: usize = 50;

fn gradient(f: &dyn Fn(&[f64]) -> Result<f64>, x: &[f64]) -> Result<Vec<f64>> {
    let mut g = vec![0.0; x.len()];
    for i in 0..x.len() {
        let mut p = x.to_vec();
        let mut q = x.to_vec();
        p[i] += FD_STEP;
        q[i] -= FD_STEP;
        g[i] = (f(&p)? - f(&q)?) / (2.0 * FD_STEP);
    }
    Ok(g)
}

/// Moves from x along δ projected onto the tangent of the level set of f
/// through x, then returns to the level set by Newton steps along ∇f.
fn level_set_step(f: &dyn Fn(&[f64]) -> Result<f64>, x: &[f64], delta: &[f64]) -> Result<Vec<f64>> {
    let target = f(x)?;
    let g = gradient(f, x)?;
    let gg: f64 = g.iter().map(|v| v * v).sum();
    if !(gg > 1e-20) {
        return Err(Error::Tangent(format!("constraint gradient vanishes ({gg:e})")));
    }
    let proj: f64 = delta.iter().zip(&g).map(|(d, v)| d * v).sum::<f64>() / gg;
    let mut y: Vec<f64> = delta.iter().zip(x).zip(&g).map(|((d, xi), v)| xi + d - proj * v).collect();
    for _ in 0..NEWTON_MAX {
        let r = f(&y)? - target;
        if r.abs() <= NEWTON_TOL * target.abs().max(1.0) {
            return Ok(y);
        }
        let gy = gradient(f, &y)?;
        let ggy: f64 = gy.iter().map(|v| v * v).sum();
        for (yi, v) in y.iter_mut().zip(&gy) {
            *yi -= r * v / ggy;
        }
    }
    let r = f(&y)? - target;
    if r.abs() <= 1e3 * NEWTON_TOL * target.abs().max(1.0) {
        Ok(y)
    } else {
        Err(Error::Tangent(format!("Newton correction stalled at {r:e}")))
    }
}

/// |Σ dθ_jk / cosα_i| for a neighbour triangle at the same sine constant.
/// The sides move by δ (indexed like `tri.theta`) projected onto the level set.
pub fn spherical_differential_residual(tri: &SphericalTriangle, delta: [f64; 3]) -> Result<f64> {
    if delta.iter().all(|&d| d == 0.0) {
        return Ok(0.0);
    }
    let k = |x: &[f64]| spherical_sine_constant(x[2], x[1], x[0]);
    let y = level_set_step(&k, &tri.theta, &delta)?;
    Ok((0..3).map(|v| (y[v] - tri.theta[v]) / tri.alpha[v].cos()).sum::<f64>().abs())
}

fn face_product(theta: &[f64; 6]) -> Result<f64> {
    let mut p = 1.0;
    for v in 0..4 {
        let f: Vec<usize> = (0..4).filter(|&x| x != v).collect();
        p *= gsin3(theta[pair_index(f[0], f[1])], theta[pair_index(f[0], f[2])], theta[pair_index(f[1], f[2])])?;
    }
    Ok(p)
}

/// W = gsin6⁴ − k² (product of face sines)², which vanishes at k = k_H.
pub fn w_function(theta: &[f64; 6], k: f64) -> Result<f64> {
    let g = gsin6(theta)?;
    let p = face_product(theta)?;
    Ok(g.powi(4) - k * k * p * p)
}

/// ∂W/∂θ_ij at fixed k = k_H:
/// −2 g6 g(ikl) g(jkl) g(ijl) g(ijk) sinφ_ij (cosφ_il cosφ_jl + cosφ_ik cosφ_jk).
pub fn w_gradient(tet: &HypersphericalTetrahedron) -> [f64; 6] {
    let cp = |a: usize, b: usize| tet.ph(a, b).cos();
    let mut out = [0.0; 6];
    for (idx, &(i, j)) in PAIRS.iter().enumerate() {
        let (k, l) = complement(i, j);
        let faces = tet.face(i, k, l) * tet.face(j, k, l) * tet.face(i, j, l) * tet.face(i, j, k);
        out[idx] = -2.0 * tet.gsin6 * faces * tet.phi[idx].sin() * (cp(i, l) * cp(j, l) + cp(i, k) * cp(j, k));
    }
    out
}

/// Largest gap between [`w_gradient`] and a central difference of W.
pub fn w_derivative_residual(tet: &HypersphericalTetrahedron) -> Result<f64> {
    let h = 1e-6;
    let grad = w_gradient(tet);
    let mut worst = 0.0f64;
    for (idx, g) in grad.iter().enumerate() {
        let mut p = tet.theta;
        let mut q = tet.theta;
        p[idx] += h;
        q[idx] -= h;
        let fd = (w_function(&p, tet.k_h)? - w_function(&q, tet.k_h)?) / (2.0 * h);
        worst = worst.max((fd - g).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricTetReport {
    /// |sin²φ − k_H sin²θ| for the pairs (01, 23), (02, 13), (03, 12).
    pub redsin: [f64; 3],
    /// |Σ tanφ_p dθ_p| after a k_H-preserving step of the three parameters.
    pub differential: f64,
}

impl SymmetricTetReport {
    pub fn redsin_max(&self) -> f64 {
        self.redsin.into_iter().fold(0.0, f64::max)
    }
}

pub fn symmetric_tet_residuals(tet: &HypersphericalTetrahedron, delta: [f64; 3]) -> Result<SymmetricTetReport> {
    let asym = tet.dihedral_asymmetry();
    if asym > 1e-8 {
        return Err(Error::NotSymmetric(asym));
    }
    let params = [tet.theta[0], tet.theta[1], tet.theta[2]];
    let mut redsin = [0.0; 3];
    for (p, r) in redsin.iter_mut().enumerate() {
        let (sp, st) = (tet.phi[p].sin(), tet.theta[p].sin());
        *r = (sp * sp - tet.k_h * st * st).abs();
    }
    let differential = if delta.iter().all(|&d| d == 0.0) {
        0.0
    } else {
        let k = |x: &[f64]| Ok(symmetric_tetrahedron(x[0], x[1], x[2])?.k_h);
        let y = level_set_step(&k, &params, &delta)?;
        (0..3).map(|p| tet.phi[p].tan() * (y[p] - params[p])).sum::<f64>().abs()
    };
    Ok(SymmetricTetReport { redsin, differential })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GJTetrahedronReport {
    /// Sine constant of the face omitting each vertex.
    pub face_constants: [f64; 4],
    /// Vertex sine constant at each vertex.
    pub vertex_constants: [f64; 4],
    pub k1_spread: f64,
    pub k2_spread: f64,
    /// a_jk with s(a_jk) = sinθ_jk, indexed by [`PAIRS`]; present only when
    /// both spreads are below [`GJ_SPREAD_TOL`].
    pub a: Option<[f64; 6]>,
    /// max |s(a_ij) − sinθ_ij|
    pub s_residual: Option<f64>,
    /// max |k₁ s(a_ij) − sinα_k^{(ijk)}| over both k
    pub alpha_residual: Option<f64>,
    /// max |k₁k₂ s(a_ij) − sinφ_kl|
    pub phi_residual: Option<f64>,
}

impl GJTetrahedronReport {
    pub fn identification_max(&self) -> Option<f64> {
        Some(self.s_residual?.max(self.alpha_residual?).max(self.phi_residual?))
    }
}

fn spread(x: &[f64]) -> f64 {
    let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

pub fn gj_identification_report(tet: &HypersphericalTetrahedron) -> GJTetrahedronReport {
    let mut face_constants = [f64::NAN; 4];
    let mut vertex_constants = [f64::NAN; 4];
    for v in 0..4 {
        let f: Vec<usize> = (0..4).filter(|&x| x != v).collect();
        let (a, b, c) = (f[0], f[1], f[2]);
        face_constants[v] = tet.face_sine[v] / (tet.th(a, b).sin() * tet.th(a, c).sin() * tet.th(b, c).sin());
        vertex_constants[v] = vertex_sine_constant(tet, v).unwrap_or(f64::NAN);
    }
    let mut rep = GJTetrahedronReport {
        face_constants,
        vertex_constants,
        k1_spread: spread(&face_constants),
        k2_spread: spread(&vertex_constants),
        a: None,
        s_residual: None,
        alpha_residual: None,
        phi_residual: None,
    };
    if !(rep.k1_spread < GJ_SPREAD_TOL && rep.k2_spread < GJ_SPREAD_TOL) {
        return rep;
    }
    let k1 = face_constants.iter().sum::<f64>() / 4.0;
    let k2 = vertex_constants.iter().sum::<f64>() / 4.0;
    let Ok(md) = GJModuli::new(k1, k1 * k2) else {
        return rep;
    };
    let mut a = [0.0; 6];
    for (idx, &t) in tet.theta.iter().enumerate() {
        match gj_invert_s(t.sin(), &md) {
            Ok(x) => a[idx] = x,
            Err(_) => return rep,
        }
    }
    let (mut rs, mut ra, mut rp) = (0.0f64, 0.0f64, 0.0f64);
    for (idx, &(i, j)) in PAIRS.iter().enumerate() {
        let s = gj_eval(a[idx], &md).s;
        rs = rs.max((s - tet.theta[idx].sin()).abs());
        let (k, l) = complement(i, j);
        for (p, q) in [(k, l), (l, k)] {
            ra = ra.max((k1 * s - tet.alpha[p][q].sin()).abs());
            rp = rp.max((k1 * k2 * s - tet.ph(p, q).sin()).abs());
        }
    }
    rep.a = Some(a);
    rep.s_residual = Some(rs);
    rep.alpha_residual = Some(ra);
    rep.phi_residual = Some(rp);
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GJAngles {
    pub theta: f64,
    pub alpha: f64,
    pub phi: f64,
    pub quad: GJQuad,
    /// max |(cosθ, cosα, cosφ) − (c, d₁, d₂)|
    pub cos_residual: f64,
    /// Quadratic identities of (sinθ, cosθ, cosα, cosφ).
    pub identity_residual: f64,
}

/// Angles with sinθ = s(u), sinα = k₁s(u), sinφ = k₁k₂s(u) under moduli
/// (k₁, k₁k₂), quadrants fixed by c, d₁, d₂.
pub fn gj_angles_from_u(u: f64, k1: f64, k2: f64) -> Result<GJAngles> {
    if !(k2 >= 0.0 && k2 < 1.0) {
        return Err(Error::Domain(format!("k2 = {k2} outside [0, 1)")));
    }
    let md = GJModuli::new(k1, k1 * k2)?;
    let q = gj_eval(u, &md);
    if (k1 * q.s).abs() > 1.0 {
        return Err(Error::Inadmissible(format!("k1 s = {} exceeds 1", k1 * q.s)));
    }
    let theta = q.s.atan2(q.c);
    let alpha = (k1 * q.s).atan2(q.d1);
    let phi = (k1 * k2 * q.s).atan2(q.d2);
    let cos_residual = (theta.cos() - q.c).abs().max((alpha.cos() - q.d1).abs()).max((phi.cos() - q.d2).abs());
    let sub = GJQuad { u, s: theta.sin(), c: theta.cos(), d1: alpha.cos(), d2: phi.cos() };
    Ok(GJAngles { theta, alpha, phi, quad: q, cos_residual, identity_residual: sub.max_identity_residual(&md) })
}
