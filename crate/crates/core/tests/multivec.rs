use proptest::prelude::*;

use gjtrig::multivec::*;
use gjtrig::sampling::{gaussian_vec, rng_from_seed};

fn cross3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn vecs(seed: u64, count: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| gaussian_vec(&mut rng, dim)).collect()
}

fn arb_vecs(count: usize, dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-3.0f64..3.0, dim), count)
}

#[test]
fn cross_matches_three_dimensional_product() {
    for seed in 0..100 {
        let v = vecs(seed, 2, 3);
        let c = cross_nd(&v).unwrap();
        let o = cross3(&v[0], &v[1]);
        for i in 0..3 {
            assert!((c[i] - o[i]).abs() < 1e-14);
        }
    }
}

#[test]
fn nested_n2_is_the_triple_product_expansion() {
    // (a × b) × c = b(a·c) − a(b·c)
    for seed in 0..100 {
        let v = vecs(seed, 3, 3);
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let lhs = cross3(&cross3(a, b), c);
        let rhs: Vec<f64> = (0..3).map(|i| b[i] * dot(a, c) - a[i] * dot(b, c)).collect();
        for i in 0..3 {
            assert!((lhs[i] - rhs[i]).abs() < 1e-12);
        }
        assert!(nested_identity_residual(&v).unwrap() < 1e-12 * residual_scale(&v));
    }
}

#[test]
fn five_vector_identity_in_explicit_coordinates() {
    let e = |i: usize| {
        let mut v = vec![0.0; 4];
        v[i] = 1.0;
        v
    };
    // e₁ e₂ e₃ e₄ = 1 so cross(e₁, e₂, e₃) is ±e₄
    let c = cross_nd(&[e(0), e(1), e(2)]).unwrap();
    let d = det(&rows_matrix(&[e(0), e(1), e(2), c.clone()])).unwrap();
    assert!((d - 1.0).abs() < 1e-15, "{c:?}");
    let r = five_vector_identity_residual(&e(0), &e(1), &e(2), &e(3), &[1.0, 1.0, 0.0, 1.0]).unwrap();
    assert!(r < 1e-15);
}

#[test]
fn dimension_errors() {
    assert!(cross_nd(&vecs(0, 2, 4)).is_err());
    assert!(nested_identity_residual(&vecs(0, 4, 3)).is_err());
    assert!(plucker_residual(&vecs(0, 4, 3)).is_err());
    assert!(det(&rows_matrix(&vecs(0, 9, 9))).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cross_is_orthogonal_with_norm_from_gram(v in arb_vecs(3, 4)) {
        let c = cross_nd(&v).unwrap();
        let scale = residual_scale(&v).max(1e-300);
        for x in &v {
            prop_assert!(dot(&c, x).abs() <= 1e-12 * scale * norm(x).max(1.0));
        }
        // |cross|² equals the Gram determinant
        let gram = nalgebra::DMatrix::from_fn(3, 3, |i, j| dot(&v[i], &v[j]));
        let g = det(&gram).unwrap();
        prop_assert!((dot(&c, &c) - g).abs() <= 1e-10 * scale * scale);
        // det(v₁, v₂, v₃, cross) = |cross|²
        let mut rows = v.clone();
        rows.push(c.clone());
        prop_assert!((det(&rows_matrix(&rows)).unwrap() - g).abs() <= 1e-10 * scale * scale);
    }

    #[test]
    fn cross_is_alternating(v in arb_vecs(3, 4)) {
        let a = cross_nd(&v).unwrap();
        let b = cross_nd(&[&v[1][..], &v[0], &v[2]]).unwrap();
        let scale = residual_scale(&v).max(1.0);
        for i in 0..4 {
            prop_assert!((a[i] + b[i]).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn nested_identity_holds(n in 2usize..=5, seed in any::<u64>()) {
        let v = vecs(seed, 2 * n - 1, n + 1);
        prop_assert!(nested_identity_residual(&v).unwrap() <= 1e-9 * residual_scale(&v));
    }

    #[test]
    fn plucker_relation_holds(n in 3usize..=6, seed in any::<u64>()) {
        let v = vecs(seed, 2 * n - 2, n - 1);
        prop_assert!(plucker_residual(&v).unwrap() <= 1e-9 * residual_scale(&v));
    }

    #[test]
    fn five_vector_identity_holds(v in arb_vecs(5, 4)) {
        let r = five_vector_identity_residual(&v[0], &v[1], &v[2], &v[3], &v[4]).unwrap();
        prop_assert!(r <= 1e-9 * residual_scale(&v).max(1e-300) + 1e-300);
    }

    #[test]
    fn det_is_multiplicative(a in arb_vecs(4, 4), b in arb_vecs(4, 4)) {
        let (ma, mb) = (rows_matrix(&a), rows_matrix(&b));
        let lhs = det(&(&ma * &mb)).unwrap();
        let rhs = det(&ma).unwrap() * det(&mb).unwrap();
        let scale = residual_scale(&a) * residual_scale(&b);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * scale.max(1.0));
    }
}
