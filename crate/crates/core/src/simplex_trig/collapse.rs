use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::tetra::{complement, cos_block, face_without};
use super::{gsin3, gsin6, pair_index, PAIRS};
use crate::error::{Error, Result};
use crate::multivec::det;

pub const COLLAPSE_THRESHOLD: f64 = 1e-6;
/// Vanishing tolerance for the vertex triple sines computed via the sine rule.
pub const VERTEX_SINE_TOL: f64 = 1e-8;
/// Looser tolerance for the same sines from the dihedral cosine Gram, which
/// only resolves sqrt(machine epsilon).
pub const VERTEX_SINE_DIRECT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// θ_ij = θ_ik + θ_jk: cosθ_ij = cosθ_ik cosθ_jk − sinθ_ik sinθ_jk.
    Minus,
    /// θ_ij = |θ_ik − θ_jk|: cosθ_ij = cosθ_ik cosθ_jk + sinθ_ik sinθ_jk.
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleCollapse {
    pub branch: Branch,
    pub residual: f64,
    pub gsin: f64,
}

pub fn collapse_triangle(t_ij: f64, t_ik: f64, t_jk: f64) -> Result<TriangleCollapse> {
    let g = gsin3(t_ij, t_ik, t_jk)?;
    if g >= COLLAPSE_THRESHOLD {
        return Err(Error::NotCollapsed(g));
    }
    let cc = t_ik.cos() * t_jk.cos();
    let ss = t_ik.sin() * t_jk.sin();
    let minus = (t_ij.cos() - (cc - ss)).abs();
    let plus = (t_ij.cos() - (cc + ss)).abs();
    Ok(if minus <= plus {
        TriangleCollapse { branch: Branch::Minus, residual: minus, gsin: g }
    } else {
        TriangleCollapse { branch: Branch::Plus, residual: plus, gsin: g }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TetraCollapse {
    pub gsin6: f64,
    /// gsin3 of the three dihedral angles at each vertex, via k_H g(opposite face).
    pub vertex_sines: [f64; 4],
    /// The same quantity from the dihedral cosine Gram.
    pub vertex_sines_direct: [f64; 4],
    pub vanishes: [bool; 4],
    /// min over signs of |φ_a ± φ_b ± φ_c| reduced to [-π, π], per vertex.
    /// Reported, not asserted.
    pub dihedral_sum_defect: [f64; 4],
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

pub fn collapse_tetrahedron(theta: &[f64; 6]) -> Result<TetraCollapse> {
    let g6 = gsin6(theta)?;
    if g6 >= COLLAPSE_THRESHOLD {
        return Err(Error::NotCollapsed(g6));
    }
    let face = |v: usize| {
        let [a, b, c] = face_without(v);
        gsin3(theta[pair_index(a, b)], theta[pair_index(a, c)], theta[pair_index(b, c)])
    };
    let mut faces = [0.0; 4];
    for (v, f) in faces.iter_mut().enumerate() {
        *f = face(v)?;
        if *f == 0.0 {
            return Err(Error::Degenerate(format!("face opposite vertex {v} is collapsed too")));
        }
    }
    let k_h = g6 * g6 / faces.iter().product::<f64>();

    let mut cos_phi = [0.0; 6];
    for (idx, &(a, b)) in PAIRS.iter().enumerate() {
        let (c, d) = complement(a, b);
        cos_phi[idx] = (-det(&cos_block(theta, [c, a, b, d]))? / (faces[d] * faces[c])).clamp(-1.0, 1.0);
    }

    let mut out = TetraCollapse {
        gsin6: g6,
        vertex_sines: [0.0; 4],
        vertex_sines_direct: [0.0; 4],
        vanishes: [false; 4],
        dihedral_sum_defect: [0.0; 4],
    };
    for v in 0..4 {
        let [a, b, c] = face_without(v);
        let (x, y, z) = (cos_phi[pair_index(v, a)], cos_phi[pair_index(v, b)], cos_phi[pair_index(v, c)]);
        out.vertex_sines[v] = k_h * faces[v];
        let d = 1.0 - x * x - y * y - z * z + 2.0 * x * y * z;
        out.vertex_sines_direct[v] = d.max(0.0).sqrt();
        out.vanishes[v] = out.vertex_sines[v] < VERTEX_SINE_TOL && out.vertex_sines_direct[v] < VERTEX_SINE_DIRECT_TOL;
        let (pa, pb, pc) = (x.acos(), y.acos(), z.acos());
        out.dihedral_sum_defect[v] = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .iter()
            .map(|&(s1, s2)| wrap(pa + s1 * pb + s2 * pc).abs())
            .fold(f64::INFINITY, f64::min);
    }
    Ok(out)
}
