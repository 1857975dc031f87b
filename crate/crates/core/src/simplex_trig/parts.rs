use serde::Serialize;

use super::HypersphericalTetrahedron;

pub(crate) fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    if i != j && i != k && i != l && j != k && j != l && k != l {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

fn worst(f: impl Fn([usize; 4]) -> f64) -> f64 {
    permutations4().into_iter().map(f).fold(0.0, f64::max)
}

/// The two four-parts analogues with denominators cleared, for one labeling.
/// Dihedral cosines enter with the interior sign, −cosφ.
pub fn hyp_four_parts_pair(t: &HypersphericalTetrahedron, [i, j, k, l]: [usize; 4]) -> [f64; 2] {
    let c = |a, b| t.th(a, b).cos();
    let s = |a, b| t.th(a, b).sin();
    let cp = |a, b| t.ph(a, b).cos();
    let g = |a, b, cc| t.face(a, b, cc);
    let (sa, ca) = t.alpha[i][k].sin_cos();
    let (sb, cb) = t.alpha[i][l].sin_cos();
    let mixed = ca * sb + sa * cb * cp(i, j);
    let e1 = -g(j, k, l) * cp(j, k) * s(i, k) * s(i, j) * sb - g(i, j, k) * c(i, l) * s(i, k) * s(i, j) * sb
        - g(i, j, k) * s(i, l) * c(i, k) * s(i, j) * cp(i, j) * sa
        + g(i, j, k) * s(i, l) * c(i, j) * s(i, k) * mixed;
    let e2 = -g(i, k, l) * cp(i, k) * s(i, j) * sb - g(i, j, k) * s(i, l) * mixed;
    [e1.abs(), e2.abs()]
}

pub fn hyp_four_parts_residual(t: &HypersphericalTetrahedron) -> f64 {
    worst(|l| {
        let [a, b] = hyp_four_parts_pair(t, l);
        a.max(b)
    })
}

/// The two five-parts analogue relations for one labeling:
///   cosφ_ij g(ijk) + g(ijl) cosθ_kl + g(jkl) cosθ_il cosφ_jl + g(ikl) cosθ_jl cosφ_il = 0
///   (cosφ_jk − cosφ_ij cosφ_jl) g(ijk) + g(jkl) cosθ_il sin²φ_jl
///       − g(ikl) cosθ_jl (cosφ_jl cosφ_il − cosφ_kl) = 0
pub fn hyp_five_parts_pair(t: &HypersphericalTetrahedron, [i, j, k, l]: [usize; 4]) -> [f64; 2] {
    let c = |a, b| t.th(a, b).cos();
    let cp = |a, b| t.ph(a, b).cos();
    let sp = |a, b| t.ph(a, b).sin();
    let g = |a, b, cc| t.face(a, b, cc);
    let r1 = cp(i, j) * g(i, j, k) + g(i, j, l) * c(k, l) + g(j, k, l) * c(i, l) * cp(j, l)
        + g(i, k, l) * c(j, l) * cp(i, l);
    let r2 = (cp(j, k) - cp(i, j) * cp(j, l)) * g(i, j, k) + g(j, k, l) * c(i, l) * sp(j, l).powi(2)
        - g(i, k, l) * c(j, l) * (cp(j, l) * cp(i, l) - cp(k, l));
    [r1.abs(), r2.abs()]
}

pub fn hyp_five_parts_residual(t: &HypersphericalTetrahedron) -> f64 {
    worst(|l| {
        let [a, b] = hyp_five_parts_pair(t, l);
        a.max(b)
    })
}

/// Residual of the single-equation form
///   cosφ_jk cosφ_jl g(ijk) = cosφ_ij sinφ_jl g(ijk) + cosθ_kl sinφ_jl g(ijl)
///       + cos²φ_jl cosφ_ij g(ijk) + cosθ_jl cosφ_il sin²φ_jl g(ikl)
/// at labels (0, 1, 2, 3). It does not vanish in general; reported only.
pub fn hyp_five_parts_single_form_residual(t: &HypersphericalTetrahedron) -> f64 {
    let [i, j, k, l] = [0, 1, 2, 3];
    let c = |a, b| t.th(a, b).cos();
    let cp = |a, b| t.ph(a, b).cos();
    let sp = |a, b| t.ph(a, b).sin();
    let g = |a, b, cc| t.face(a, b, cc);
    let lhs = cp(j, k) * cp(j, l) * g(i, j, k);
    let rhs = cp(i, j) * sp(j, l) * g(i, j, k)
        + c(k, l) * sp(j, l) * g(i, j, l)
        + cp(j, l).powi(2) * cp(i, j) * g(i, j, k)
        + c(j, l) * cp(i, l) * sp(j, l).powi(2) * g(i, k, l);
    (lhs - rhs).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartsReport {
    pub four_parts: f64,
    pub five_parts: f64,
    pub five_parts_single_form: f64,
}

pub fn hyp_parts_report(t: &HypersphericalTetrahedron) -> PartsReport {
    PartsReport {
        four_parts: hyp_four_parts_residual(t),
        five_parts: hyp_five_parts_residual(t),
        five_parts_single_form: hyp_five_parts_single_form_residual(t),
    }
}
