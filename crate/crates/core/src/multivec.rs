//! Small dense linear algebra: determinants, the (n-1)-ary vector product and
//! residual evaluators for the determinant identities built on it.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub type MatN = DMatrix<f64>;

pub const MAX_DIM: usize = 8;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalize(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

/// Product of the Euclidean norms, used to make residual tolerances relative.
pub fn residual_scale<V: AsRef<[f64]>>(vs: &[V]) -> f64 {
    vs.iter().map(|v| norm(v.as_ref())).product()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Determinant by LU with partial pivoting (closed forms below 4x4).
pub fn det(m: &MatN) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() > MAX_DIM {
        return Err(Error::Dimension(format!("{}x{} exceeds the 8x8 cap", m.nrows(), m.ncols())));
    }
    if m.nrows() == 0 {
        return Ok(1.0);
    }
    Ok(m.determinant())
}

/// Matrix whose rows are the given vectors.
pub fn rows_matrix<V: AsRef<[f64]>>(rows: &[V]) -> MatN {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.as_ref().len());
    DMatrix::from_fn(nr, nc, |i, j| rows[i].as_ref()[j])
}

fn check_dims<V: AsRef<[f64]>>(vs: &[V], count: usize, dim: usize, what: &str) -> Result<()> {
    if vs.len() != count {
        return Err(Error::Dimension(format!("{what}: expected {count} vectors, got {}", vs.len())));
    }
    if let Some(bad) = vs.iter().find(|v| v.as_ref().len() != dim) {
        return Err(Error::Dimension(format!(
            "{what}: expected dimension {dim}, got {}",
            bad.as_ref().len()
        )));
    }
    Ok(())
}

/// The (n-1)-ary vector product in R^n: component i is det(v_1, ..., v_{n-1}, e_i).
pub fn cross_nd<V: AsRef<[f64]>>(vs: &[V]) -> Result<Vec<f64>> {
    let n = vs.len() + 1;
    if !(3..=MAX_DIM).contains(&n) {
        return Err(Error::Dimension(format!("cross product needs 2..=7 vectors, got {}", vs.len())));
    }
    check_dims(vs, n - 1, n, "cross_nd")?;
    let mut m = DMatrix::zeros(n, n);
    for (r, v) in vs.iter().enumerate() {
        for (c, x) in v.as_ref().iter().enumerate() {
            m[(r, c)] = *x;
        }
    }
    let mut out = vec![0.0; n];
    for (i, o) in out.iter_mut().enumerate() {
        for c in 0..n {
            m[(n - 1, c)] = if c == i { 1.0 } else { 0.0 };
        }
        *o = det(&m)?;
    }
    Ok(out)
}

/// Residual of the nested product identity for 2n-1 vectors in R^{n+1}:
/// (a_1 x ... x a_n) x a_{n+1} x ... x a_{2n-1} against minus the bordered
/// determinant whose first row holds a_1..a_n and whose remaining rows are
/// (a_c . a_{n+r}).
pub fn nested_identity_residual<V: AsRef<[f64]>>(vs: &[V]) -> Result<f64> {
    if vs.is_empty() || vs.len() % 2 == 0 {
        return Err(Error::Dimension(format!("nested identity needs 2n-1 vectors, got {}", vs.len())));
    }
    let n = vs.len().div_ceil(2);
    if !(2..=5).contains(&n) {
        return Err(Error::Dimension(format!("nested identity supports 2 <= n <= 5, got {n}")));
    }
    check_dims(vs, 2 * n - 1, n + 1, "nested identity")?;
    let inner = cross_nd(&vs[..n])?;
    let mut outer: Vec<&[f64]> = vec![&inner];
    outer.extend(vs[n..].iter().map(|v| v.as_ref()));
    let lhs = cross_nd(&outer)?;

    // Laplace expansion of the bordered determinant along its vector row.
    let mut rhs = vec![0.0; n + 1];
    for c in 0..n {
        let minor = DMatrix::from_fn(n - 1, n - 1, |r, cc| {
            let col = if cc < c { cc } else { cc + 1 };
            dot(vs[col].as_ref(), vs[n + r].as_ref())
        });
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        let cof = sign * det(&minor)?;
        for (x, a) in rhs.iter_mut().zip(vs[c].as_ref()) {
            *x -= cof * a;
        }
    }
    let diff: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    Ok(max_abs(&diff))
}

/// Alternating sum of minor products for 2n-2 vectors in R^{n-1}:
/// sum_i (-1)^{i-1} det(a_i, a_{n+1}, ..., a_{2n-2}) det(a_1, ..., ^a_i, ..., a_n).
pub fn plucker_residual<V: AsRef<[f64]>>(vs: &[V]) -> Result<f64> {
    if vs.len() % 2 != 0 || vs.len() < 4 {
        return Err(Error::Dimension(format!("Plucker relation needs 2n-2 vectors, got {}", vs.len())));
    }
    let n = vs.len() / 2 + 1;
    if !(3..=7).contains(&n) {
        return Err(Error::Dimension(format!("Plucker relation supports 3 <= n <= 7, got {n}")));
    }
    check_dims(vs, 2 * n - 2, n - 1, "Plucker relation")?;
    let mut sum = 0.0;
    for i in 0..n {
        let mut first: Vec<&[f64]> = vec![vs[i].as_ref()];
        first.extend(vs[n..].iter().map(|v| v.as_ref()));
        let rest: Vec<&[f64]> = (0..n).filter(|&c| c != i).map(|c| vs[c].as_ref()).collect();
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * det(&rows_matrix(&first))? * det(&rows_matrix(&rest))?;
    }
    Ok(sum.abs())
}

/// Max-norm of (a x b x c) x d x e + (a x b x d) x e x c + (a x b x e) x c x d - a x b x (c x d x e).
pub fn five_vector_identity_residual(a: &[f64], b: &[f64], c: &[f64], d: &[f64], e: &[f64]) -> Result<f64> {
    check_dims(&[a, b, c, d, e], 5, 4, "five-vector identity")?;
    let t1 = cross_nd(&[&cross_nd(&[a, b, c])?[..], d, e])?;
    let t2 = cross_nd(&[&cross_nd(&[a, b, d])?[..], e, c])?;
    let t3 = cross_nd(&[&cross_nd(&[a, b, e])?[..], c, d])?;
    let t4 = cross_nd(&[a, b, &cross_nd(&[c, d, e])?[..]])?;
    let diff: Vec<f64> = (0..4).map(|i| t1[i] + t2[i] + t3[i] - t4[i]).collect();
    Ok(max_abs(&diff))
}
