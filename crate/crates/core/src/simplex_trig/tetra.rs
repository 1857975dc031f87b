use nalgebra::DMatrix;
use serde::Serialize;

use super::dd::{cos_dd, det3, Dd};
use super::spherical::check_angle;
use super::{gram4, gsin3, gsin3_cos, gsin6, pair_index, GramMatrix, SimplexConfig, ACOS_SLACK, PAIRS};
use crate::error::{Error, Result};
use crate::multivec::{det, MatN};

/// The three vertices other than `v`, ascending.
pub(crate) fn face_without(v: usize) -> [usize; 3] {
    let mut f = [0; 3];
    let mut n = 0;
    for x in 0..4 {
        if x != v {
            f[n] = x;
            n += 1;
        }
    }
    f
}

/// The two vertices not in edge (a, b).
pub(crate) fn complement(a: usize, b: usize) -> (usize, usize) {
    let mut it = (0..4).filter(|&x| x != a && x != b);
    (it.next().unwrap(), it.next().unwrap())
}

fn check_labels(l: [usize; 4]) -> Result<()> {
    let mut seen = [false; 4];
    for &x in &l {
        if x > 3 || seen[x] {
            return Err(Error::Dimension(format!("labels {l:?} are not a permutation of 0..4")));
        }
        seen[x] = true;
    }
    Ok(())
}

fn face_sine(theta: &[f64; 6], a: usize, b: usize, c: usize) -> Result<f64> {
    gsin3(theta[pair_index(a, b)], theta[pair_index(a, c)], theta[pair_index(b, c)])
}

fn nonzero(g: f64, what: &str) -> Result<f64> {
    if g > 0.0 {
        Ok(g)
    } else {
        Err(Error::Degenerate(format!("{what} has zero generalized sine")))
    }
}

/// Spherical tetrahedron on vertices 0..4. `theta` and `phi` are indexed by
/// [`PAIRS`]; `alpha[v][w]` is the face angle at `v` in the face omitting `w`;
/// `alpha[v][v]` is unused and zero. `face_sine[v]` is the generalized sine of
/// the face omitting `v`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypersphericalTetrahedron {
    pub theta: [f64; 6],
    pub phi: [f64; 6],
    pub alpha: [[f64; 4]; 4],
    pub face_sine: [f64; 4],
    pub gsin6: f64,
    pub k_h: f64,
}

impl HypersphericalTetrahedron {
    pub fn from_thetas(theta: [f64; 6]) -> Result<Self> {
        for t in theta {
            check_angle(t)?;
        }
        let g6 = gsin6(&theta)?;
        let mut fsin = [0.0; 4];
        for (v, fs) in fsin.iter_mut().enumerate() {
            let [a, b, c] = face_without(v);
            *fs = nonzero(face_sine(&theta, a, b, c)?, "face")?;
        }
        let k_h = g6 * g6 / fsin.iter().product::<f64>();
        let cos = |a: usize, b: usize| theta[pair_index(a, b)].cos();

        let mut phi = [0.0; 6];
        for (idx, &(a, b)) in PAIRS.iter().enumerate() {
            let (c, d) = complement(a, b);
            let num = -det(&cos_block(&theta, [c, a, b, d]))?;
            let sin_phi = g6 * theta[idx].sin();
            // both sides divided by g(cab) g(abd)
            phi[idx] = sin_phi.atan2(num);
        }

        let mut alpha = [[0.0; 4]; 4];
        for v in 0..4 {
            for w in 0..4 {
                if v == w {
                    continue;
                }
                let (p, q) = complement(v, w);
                let g = fsin[w];
                let num = cos(p, q) - cos(v, p) * cos(v, q);
                alpha[v][w] = g.atan2(num);
            }
        }
        Ok(Self { theta, phi, alpha, face_sine: fsin, gsin6: g6, k_h })
    }

    pub fn from_gram(g: &GramMatrix) -> Result<Self> {
        if g.dim() != 4 {
            return Err(Error::Dimension(format!("tetrahedron needs m = 4, got {}", g.dim())));
        }
        let mut theta = [0.0; 6];
        for (idx, &(a, b)) in PAIRS.iter().enumerate() {
            theta[idx] = g.cos(a, b).acos();
        }
        Self::from_thetas(theta)
    }

    pub fn from_config(c: &SimplexConfig) -> Result<Self> {
        Self::from_gram(&c.gram)
    }

    pub fn th(&self, a: usize, b: usize) -> f64 {
        self.theta[pair_index(a, b)]
    }

    pub fn ph(&self, a: usize, b: usize) -> f64 {
        self.phi[pair_index(a, b)]
    }

    /// Generalized sine of the face {a, b, c}.
    pub fn face(&self, a: usize, b: usize, c: usize) -> f64 {
        self.face_sine[6 - a - b - c]
    }

    /// The four ratios gsin3(dihedrals at v) / gsin3(face opposite v).
    pub fn sine_rule_ratios(&self) -> Result<[f64; 4]> {
        let mut r = [0.0; 4];
        for (v, x) in r.iter_mut().enumerate() {
            let [a, b, c] = face_without(v);
            *x = gsin3(self.ph(v, a), self.ph(v, b), self.ph(v, c))? / self.face_sine[v];
        }
        Ok(r)
    }

    /// Largest difference between opposite dihedral angles.
    pub fn dihedral_asymmetry(&self) -> f64 {
        [(0, 5), (1, 4), (2, 3)].iter().map(|&(p, q)| (self.phi[p] - self.phi[q]).abs()).fold(0.0, f64::max)
    }
}

/// Rows (i, j, k), columns (j, k, l) of the cosine Gram.
pub(crate) fn cos_block(theta: &[f64; 6], [i, j, k, l]: [usize; 4]) -> MatN {
    let g = gram4(theta);
    DMatrix::from_fn(3, 3, |r, c| g[([i, j, k][r], [j, k, l][c])])
}

/// Dihedral angle φ_jk of the edge jk, with faces ijk and jkl.
pub fn hyp_cosine_rule(theta: &[f64; 6], labels: [usize; 4]) -> Result<f64> {
    check_labels(labels)?;
    let [i, j, k, l] = labels;
    let den = nonzero(face_sine(theta, i, j, k)?, "face ijk")? * nonzero(face_sine(theta, j, k, l)?, "face jkl")?;
    let arg = -det(&cos_block(theta, labels))? / den;
    super::acos_checked(arg)
}

pub fn hyp_sine_constant(theta: &[f64; 6]) -> Result<f64> {
    let mut prod = 1.0;
    for v in 0..4 {
        let [a, b, c] = face_without(v);
        prod *= nonzero(face_sine(theta, a, b, c)?, "face")?;
    }
    let g = gsin6(theta)?;
    Ok(g * g / prod)
}

/// sinφ_kl from the central angles.
pub fn hyp_sin_phi(theta: &[f64; 6], (k, l): (usize, usize)) -> Result<f64> {
    if k == l || k > 3 || l > 3 {
        return Err(Error::Dimension(format!("edge ({k}, {l})")));
    }
    let (i, j) = complement(k, l);
    let den = nonzero(face_sine(theta, i, k, l)?, "face ikl")? * nonzero(face_sine(theta, j, k, l)?, "face jkl")?;
    Ok(gsin6(theta)? * theta[pair_index(k, l)].sin() / den)
}

fn drop_rc(m: &MatN, row: usize, col: usize) -> MatN {
    m.clone().remove_row(row).remove_column(col)
}

pub fn desnanot_jacobi_residual(m: &MatN) -> Result<f64> {
    let n = m.nrows();
    if n < 3 || m.ncols() != n {
        return Err(Error::Dimension(format!("need a square matrix with n >= 3, got {}x{}", n, m.ncols())));
    }
    let last = n - 1;
    let inner = m.clone().remove_row(last).remove_row(0).remove_column(last).remove_column(0);
    let r = det(m)? * det(&inner)? - det(&drop_rc(m, 0, 0))? * det(&drop_rc(m, last, last))?
        + det(&drop_rc(m, 0, last))? * det(&drop_rc(m, last, 0))?;
    Ok(r.abs())
}

/// cosθ_kl from the six dihedral angles (indexed by [`PAIRS`]).
pub fn hyp_polar_cosine_rule(phi: &[f64; 6], labels: [usize; 4]) -> Result<f64> {
    check_labels(labels)?;
    let [i, j, k, l] = labels;
    let c = |a: usize, b: usize| cos_dd(phi[pair_index(a, b)]);
    let p = |a: usize, b: usize| phi[pair_index(a, b)];
    let one = Dd::from(1.0);
    // near-flat polar faces cancel the entries almost completely
    let x = [[-c(j, k), c(i, k), -c(i, j)], [one, -c(k, l), c(j, l)], [-c(k, l), one, -c(i, l)]];
    let s1 = nonzero(gsin3(p(i, k), p(j, k), p(k, l))?, "polar face at k")?;
    let s2 = nonzero(gsin3(p(i, l), p(j, l), p(k, l))?, "polar face at l")?;
    Ok(det3(x) / (s1 * s2))
}

const DENOM_FLOOR: f64 = 1e-6;
const RATIO_SPREAD: f64 = 1e-8;

/// Common value of the three ratios
/// (cφ_ab cφ_cd − cφ_ac cφ_bd) / (cθ_ab cθ_cd − cθ_ac cθ_bd).
pub fn cosine_ratio_constant(tet: &HypersphericalTetrahedron) -> Result<f64> {
    let ratios = cosine_ratios(tet)?;
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > RATIO_SPREAD {
        return Err(Error::Indeterminate(format!("ratio spread {:e}", hi - lo)));
    }
    Ok(ratios.iter().sum::<f64>() / 3.0)
}

pub fn cosine_ratios(tet: &HypersphericalTetrahedron) -> Result<[f64; 3]> {
    let cp = |a, b| tet.ph(a, b).cos();
    let ct = |a, b| tet.th(a, b).cos();
    let mut out = [0.0; 3];
    for (n, [a, b, c, d]) in [[0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]].into_iter().enumerate() {
        let den = ct(a, b) * ct(c, d) - ct(a, c) * ct(b, d);
        if den.abs() < DENOM_FLOOR {
            return Err(Error::Indeterminate(format!("denominator {den:e}")));
        }
        out[n] = (cp(a, b) * cp(c, d) - cp(a, c) * cp(b, d)) / den;
    }
    Ok(out)
}

/// cosφ_jk from the three face angles at vertex j.
pub fn vertex_cosine_rule(a_ijk: f64, a_jkl: f64, a_ijl: f64) -> Result<f64> {
    for a in [a_ijk, a_jkl, a_ijl] {
        check_angle(a)?;
    }
    let c = (a_ijk.cos() * a_jkl.cos() - a_ijl.cos()) / (a_ijk.sin() * a_jkl.sin());
    if c.abs() > 1.0 + ACOS_SLACK || c.is_nan() {
        return Err(Error::NonRealizableVertex(c));
    }
    Ok(c.clamp(-1.0, 1.0))
}

/// cosα_j^{(ijl)} from the dihedral angles at j.
pub fn vertex_polar_cosine_rule(phi_jk: f64, phi_ij: f64, phi_jl: f64) -> Result<f64> {
    for a in [phi_jk, phi_ij, phi_jl] {
        check_angle(a)?;
    }
    let c = (-phi_jk.cos() + phi_ij.cos() * phi_jl.cos()) / (phi_ij.sin() * phi_jl.sin());
    if c.abs() > 1.0 + ACOS_SLACK || c.is_nan() {
        return Err(Error::NonRealizableVertex(c));
    }
    Ok(c.clamp(-1.0, 1.0))
}

/// gsin3 of the face angles at `v` over the product of their sines. Equals
/// sinφ_vw / sinα_v^{(face omitting w)} for each neighbour w.
pub fn vertex_sine_constant(tet: &HypersphericalTetrahedron, v: usize) -> Result<f64> {
    let [a, b, c] = face_without(v);
    let (x, y, z) = (tet.alpha[v][a], tet.alpha[v][b], tet.alpha[v][c]);
    Ok(gsin3_cos(x.cos(), y.cos(), z.cos())? / (x.sin() * y.sin() * z.sin()))
}

pub fn vertex_sine_ratios(tet: &HypersphericalTetrahedron, v: usize) -> [f64; 3] {
    let others = face_without(v);
    others.map(|w| tet.ph(v, w).sin() / tet.alpha[v][w].sin())
}

/// g6² cos α_l^{(jkl)} sinθ_jl sinθ_kl / g(jkl)² against
/// g(ijl) g(ikl) (cosφ_jl cosφ_kl − cosφ_il).
pub fn face_angle_dihedral_residual(tet: &HypersphericalTetrahedron, labels: [usize; 4]) -> Result<f64> {
    check_labels(labels)?;
    let [i, j, k, l] = labels;
    let g6 = tet.gsin6;
    let gjkl = tet.face(j, k, l);
    let lhs = g6 * g6 * tet.alpha[l][i].cos() * tet.th(j, l).sin() * tet.th(k, l).sin() / (gjkl * gjkl);
    let cp = |a, b| tet.ph(a, b).cos();
    let rhs = tet.face(i, j, l) * tet.face(i, k, l) * (cp(j, l) * cp(k, l) - cp(i, l));
    Ok((lhs - rhs).abs())
}

/// Tetrahedron whose opposite central angles agree: θ_01 = θ_23 = a,
/// θ_02 = θ_13 = b, θ_03 = θ_12 = c. Opposite dihedral angles then agree too.
pub fn symmetric_tetrahedron(a: f64, b: f64, c: f64) -> Result<HypersphericalTetrahedron> {
    let t = HypersphericalTetrahedron::from_thetas([a, b, c, c, b, a])?;
    let asym = t.dihedral_asymmetry();
    if asym > 1e-8 {
        return Err(Error::NotSymmetric(asym));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn orthocentric() {
        let t = HypersphericalTetrahedron::from_thetas([FRAC_PI_2; 6]).unwrap();
        assert!(t.phi.iter().all(|p| (p - FRAC_PI_2).abs() < 1e-15));
        assert!((t.k_h - 1.0).abs() < 1e-15);
        assert!((hyp_cosine_rule(&[FRAC_PI_2; 6], [0, 1, 2, 3]).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!(matches!(cosine_ratio_constant(&t), Err(Error::Indeterminate(_))));
        assert!(hyp_polar_cosine_rule(&[FRAC_PI_2; 6], [0, 1, 2, 3]).unwrap().abs() < 1e-15);
    }

    #[test]
    fn regular() {
        let th = (-0.3f64).acos();
        let t = HypersphericalTetrahedron::from_thetas([th; 6]).unwrap();
        let c = hyp_polar_cosine_rule(&t.phi, [0, 1, 2, 3]).unwrap();
        assert!((c + 0.3).abs() < 1e-12);
        for p in t.phi {
            assert!((p - t.phi[0]).abs() < 1e-14);
        }
    }

    #[test]
    fn desnanot_identity() {
        assert_eq!(desnanot_jacobi_residual(&MatN::identity(5, 5)).unwrap(), 0.0);
        assert!(desnanot_jacobi_residual(&MatN::identity(2, 2)).is_err());
    }
}
