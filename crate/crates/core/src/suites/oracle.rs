//! Angles computed directly from explicit unit vectors, independent of the
//! Gram-determinant formulas they are compared with.

use crate::multivec::{cross_nd, dot, norm, normalize};

pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    let c = dot(a, b);
    let s = {
        let d: Vec<f64> = b.iter().zip(a).map(|(y, x)| y - c * x).collect();
        norm(&d)
    };
    s.atan2(c)
}

/// Unit tangent at `v` of the great arc towards `w`.
fn tangent(v: &[f64], w: &[f64]) -> Vec<f64> {
    let c = dot(v, w);
    normalize(&w.iter().zip(v).map(|(y, x)| y - c * x).collect::<Vec<_>>())
}

/// Angle at `v` between the arcs to `p` and `q`, in any dimension.
pub fn vertex_angle(v: &[f64], p: &[f64], q: &[f64]) -> f64 {
    let (tp, tq) = (tangent(v, p), tangent(v, q));
    let c = dot(&tp, &tq);
    let d: Vec<f64> = tq.iter().zip(&tp).map(|(y, x)| y - c * x).collect();
    norm(&d).atan2(c)
}

/// Unit normal of the hyperplane through the listed vectors, by the vector product.
pub fn normal(vs: &[Vec<f64>], idx: &[usize]) -> Vec<f64> {
    let rows: Vec<&[f64]> = idx.iter().map(|&i| vs[i].as_slice()).collect();
    normalize(&cross_nd(&rows).expect("one fewer vector than the dimension"))
}

/// Cosine of the angle between the facets {p} ∪ ridge and ridge ∪ {q}, measured
/// inside the simplex.
pub fn facet_angle_cos(vs: &[Vec<f64>], ridge: &[usize], p: usize, q: usize) -> f64 {
    let mut a = vec![p];
    a.extend_from_slice(ridge);
    let mut b = ridge.to_vec();
    b.push(q);
    -dot(&normal(vs, &a), &normal(vs, &b))
}

/// Dihedral angle along the edge jk between the faces ijk and jkl of a
/// tetrahedron in R⁴.
pub fn dihedral(vs: &[Vec<f64>], i: usize, j: usize, k: usize, l: usize) -> f64 {
    facet_angle_cos(vs, &[j, k], i, l).clamp(-1.0, 1.0).acos()
}

/// Unit normals of the facets, indexed by the omitted vertex, each the
/// normalized product of the remaining vectors in ascending order.
pub fn polar_normals(vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = vs.len();
    (0..m).map(|a| normal(vs, &(0..m).filter(|&x| x != a).collect::<Vec<_>>())).collect()
}

/// Cosine of the angle at the hinge span(ridge) between the faces ridge ∪ {v}
/// and ridge ∪ {w}: project v and w off the ridge and compare directions.
pub fn hinge_cos(vs: &[Vec<f64>], ridge: &[usize], v: usize, w: usize) -> f64 {
    let mut basis: Vec<Vec<f64>> = vec![];
    for &r in ridge {
        let mut x = vs[r].clone();
        for b in &basis {
            let d = dot(&x, b);
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= d * bi);
        }
        basis.push(normalize(&x));
    }
    let off = |x: &[f64]| {
        let mut y = x.to_vec();
        for b in &basis {
            let d = dot(&y, b);
            y.iter_mut().zip(b).for_each(|(yi, bi)| *yi -= d * bi);
        }
        normalize(&y)
    };
    dot(&off(&vs[v]), &off(&vs[w]))
}

/// Volume spanned by m−1 vectors in R^m, as the norm of their product.
pub fn span_volume(vs: &[&[f64]]) -> f64 {
    norm(&cross_nd(vs).expect("one fewer vector than the dimension"))
}

/// am(u | m) by Newton iteration on the quadrature of the Legendre integrand.
pub fn amplitude_by_quadrature(u: f64, m: f64) -> f64 {
    let f = |phi: f64| crate::quad::integrate(|t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, phi, 1e-14);
    let mut phi = u;
    for _ in 0..50 {
        let step = (f(phi) - u) * (1.0 - m * phi.sin().powi(2)).sqrt();
        phi -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    phi
}

/// Area of a spherical triangle from its vertices (Van Oosterom and Strackee).
pub fn triangle_area(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let vol = dot(a, &cross_nd(&[b, c]).expect("vectors in R³")).abs();
    2.0 * vol.atan2(1.0 + dot(a, b) + dot(b, c) + dot(c, a))
}
