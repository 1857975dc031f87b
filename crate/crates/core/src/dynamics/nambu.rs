//! Nambu brackets of order N on R^N: the Jacobian determinant of N fields.

use nalgebra::{DMatrix, SMatrix, SVector};

use crate::multivec::det;

/// A scalar field on R^N with an analytic gradient.
pub trait Field<const N: usize> {
    fn value(&self, x: &[f64; N]) -> f64;
    fn grad(&self, x: &[f64; N]) -> [f64; N];
}

/// The coordinate function x_i.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coord(pub usize);

impl<const N: usize> Field<N> for Coord {
    fn value(&self, x: &[f64; N]) -> f64 {
        x[self.0]
    }

    fn grad(&self, _x: &[f64; N]) -> [f64; N] {
        let mut g = [0.0; N];
        g[self.0] = 1.0;
        g
    }
}

/// c + b·x + ½ xᵀ A x with A symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic<const N: usize> {
    pub c: f64,
    pub b: SVector<f64, N>,
    pub a: SMatrix<f64, N, N>,
}

impl<const N: usize> Quadratic<N> {
    /// Symmetrizes `a`.
    pub fn new(c: f64, b: [f64; N], a: SMatrix<f64, N, N>) -> Self {
        Self { c, b: SVector::from(b), a: (a + a.transpose()) * 0.5 }
    }

    /// ½ Σ w_i x_i²
    pub fn diagonal(w: [f64; N]) -> Self {
        Self::new(0.0, [0.0; N], SMatrix::from_diagonal(&SVector::from(w)))
    }

    pub fn hessian(&self) -> &SMatrix<f64, N, N> {
        &self.a
    }
}

impl<const N: usize> Field<N> for Quadratic<N> {
    fn value(&self, x: &[f64; N]) -> f64 {
        let v = SVector::from(*x);
        self.c + self.b.dot(&v) + 0.5 * v.dot(&(self.a * v))
    }

    fn grad(&self, x: &[f64; N]) -> [f64; N] {
        let g = self.b + self.a * SVector::from(*x);
        g.into()
    }
}

/// Pointwise product of two fields.
pub struct Product<'a, const N: usize>(pub &'a dyn Field<N>, pub &'a dyn Field<N>);

impl<const N: usize> Field<N> for Product<'_, N> {
    fn value(&self, x: &[f64; N]) -> f64 {
        self.0.value(x) * self.1.value(x)
    }

    fn grad(&self, x: &[f64; N]) -> [f64; N] {
        let (f, g) = (self.0.value(x), self.1.value(x));
        let (df, dg) = (self.0.grad(x), self.1.grad(x));
        std::array::from_fn(|i| f * dg[i] + g * df[i])
    }
}

fn jacobian<const N: usize>(fields: &[&dyn Field<N>; N], x: &[f64; N]) -> DMatrix<f64> {
    let rows: Vec<[f64; N]> = fields.iter().map(|f| f.grad(x)).collect();
    DMatrix::from_fn(N, N, |r, c| rows[r][c])
}

/// {F_1, ..., F_N} at x.
pub fn nambu_bracket<const N: usize>(fields: [&dyn Field<N>; N], x: &[f64; N]) -> f64 {
    det(&jacobian(&fields, x)).expect("bracket order is at most 8")
}

pub fn nambu3_bracket(f: &dyn Field<3>, g: &dyn Field<3>, h: &dyn Field<3>, x: &[f64; 3]) -> f64 {
    nambu_bracket([f, g, h], x)
}

pub fn nambu4_bracket(f: &dyn Field<4>, g: &dyn Field<4>, h: &dyn Field<4>, i: &dyn Field<4>, x: &[f64; 4]) -> f64 {
    nambu_bracket([f, g, h, i], x)
}

/// The bracket of N quadratic fields as a field in its own right. Its gradient
/// follows from Jacobi's formula: ∂_m det J = Σ_i det(J with row i replaced by
/// column m of the Hessian of field i).
pub struct BracketField<const N: usize> {
    pub parts: [Quadratic<N>; N],
}

impl<const N: usize> Field<N> for BracketField<N> {
    fn value(&self, x: &[f64; N]) -> f64 {
        nambu_bracket(std::array::from_fn(|i| &self.parts[i] as &dyn Field<N>), x)
    }

    fn grad(&self, x: &[f64; N]) -> [f64; N] {
        let fields: [&dyn Field<N>; N] = std::array::from_fn(|i| &self.parts[i] as &dyn Field<N>);
        let j = jacobian(&fields, x);
        std::array::from_fn(|m| {
            (0..N)
                .map(|i| {
                    let mut ji = j.clone();
                    for c in 0..N {
                        ji[(i, c)] = self.parts[i].hessian()[(c, m)];
                    }
                    det(&ji).expect("bracket order is at most 8")
                })
                .sum()
        })
    }
}

/// Residual of the fundamental identity
/// {f_1..f_{N-1}, {g_1..g_N}} = Σ_i {g_1.., {f_1..f_{N-1}, g_i}, ..g_N}
/// relative to max(1, Σ |terms|).
pub fn fundamental_identity_residual<const N: usize>(f: &[Quadratic<N>], g: &[Quadratic<N>; N], x: &[f64; N]) -> f64 {
    assert_eq!(f.len(), N - 1, "need N-1 outer fields");
    let inner = BracketField { parts: g.clone() };
    let lhs_fields: [&dyn Field<N>; N] =
        std::array::from_fn(|i| if i < N - 1 { &f[i] as &dyn Field<N> } else { &inner as &dyn Field<N> });
    let lhs = nambu_bracket(lhs_fields, x);
    let mut rhs = 0.0;
    let mut size = lhs.abs();
    for i in 0..N {
        let parts: [Quadratic<N>; N] = std::array::from_fn(|p| if p < N - 1 { f[p].clone() } else { g[i].clone() });
        let nested = BracketField { parts };
        let fields: [&dyn Field<N>; N] =
            std::array::from_fn(|p| if p == i { &nested as &dyn Field<N> } else { &g[p] as &dyn Field<N> });
        let term = nambu_bracket(fields, x);
        size += term.abs();
        rhs += term;
    }
    (lhs - rhs).abs() / size.max(1.0)
}

/// Residual of {F G, H_2, ..} = F {G, H_2, ..} + G {F, H_2, ..}, relative.
pub fn leibniz_residual<const N: usize>(f: &dyn Field<N>, g: &dyn Field<N>, rest: &[&dyn Field<N>], x: &[f64; N]) -> f64 {
    assert_eq!(rest.len(), N - 1, "need N-1 further fields");
    let fg = Product(f, g);
    let with = |first: &dyn Field<N>| -> f64 {
        let fields: [&dyn Field<N>; N] = std::array::from_fn(|i| if i == 0 { first } else { rest[i - 1] });
        nambu_bracket(fields, x)
    };
    let lhs = with(&fg);
    let a = f.value(x) * with(g);
    let b = g.value(x) * with(f);
    (lhs - a - b).abs() / (lhs.abs() + a.abs() + b.abs()).max(1.0)
}
