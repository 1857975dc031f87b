#![allow(dead_code)]

use gjtrig::multivec::{cross_nd, dot, normalize};

pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b).clamp(-1.0, 1.0).acos()
}

/// Unit normal to the span of the listed vectors, oriented by their order.
pub fn normal(vs: &[Vec<f64>], idx: &[usize]) -> Vec<f64> {
    let rows: Vec<&[f64]> = idx.iter().map(|&i| vs[i].as_slice()).collect();
    normalize(&cross_nd(&rows).unwrap())
}

/// Angle between the facets {p} ∪ ridge and ridge ∪ {q}, from explicit normals.
pub fn facet_angle_cos(vs: &[Vec<f64>], ridge: &[usize], p: usize, q: usize) -> f64 {
    let mut a = vec![p];
    a.extend_from_slice(ridge);
    let mut b = ridge.to_vec();
    b.push(q);
    -dot(&normal(vs, &a), &normal(vs, &b))
}

/// Spherical angle at j between n_i and n_k.
pub fn vertex_angle(vs: &[Vec<f64>], i: usize, j: usize, k: usize) -> f64 {
    facet_angle_cos(vs, &[j], i, k).clamp(-1.0, 1.0).acos()
}

/// Dihedral angle along edge jk between faces ijk and jkl.
pub fn dihedral(vs: &[Vec<f64>], i: usize, j: usize, k: usize, l: usize) -> f64 {
    facet_angle_cos(vs, &[j, k], i, l).clamp(-1.0, 1.0).acos()
}

pub fn thetas6(vs: &[Vec<f64>]) -> [f64; 6] {
    let mut t = [0.0; 6];
    for (n, &(a, b)) in gjtrig::simplex_trig::PAIRS.iter().enumerate() {
        t[n] = angle(&vs[a], &vs[b]);
    }
    t
}

/// Central-angle cosine regular tetrahedron.
pub fn regular_thetas(c: f64) -> [f64; 6] {
    [c.acos(); 6]
}

/// Unit vectors realizing a Gram matrix of cosines, via Cholesky.
pub fn vectors_from_gram(g: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    let l = g.clone().cholesky().expect("Gram matrix must be positive definite").l();
    (0..g.nrows()).map(|r| l.row(r).iter().cloned().collect()).collect()
}

pub fn tet_vectors(theta: &[f64; 6]) -> Vec<Vec<f64>> {
    let mut g = nalgebra::DMatrix::identity(4, 4);
    for (n, &(a, b)) in gjtrig::simplex_trig::PAIRS.iter().enumerate() {
        g[(a, b)] = theta[n].cos();
        g[(b, a)] = theta[n].cos();
    }
    vectors_from_gram(&g)
}

pub fn triangle_vectors(t01: f64, t02: f64, t12: f64) -> Vec<Vec<f64>> {
    let g = nalgebra::DMatrix::from_row_slice(
        3,
        3,
        &[1.0, t01.cos(), t02.cos(), t01.cos(), 1.0, t12.cos(), t02.cos(), t12.cos(), 1.0],
    );
    vectors_from_gram(&g)
}
