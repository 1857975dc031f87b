//! Spherical, hyperspherical and m-dimensional simplex trigonometry.
//!
//! A configuration of unit vectors n_1..n_m is described by its Gram matrix of
//! central-angle cosines. Every angle is derived from sub-determinants of it.

mod collapse;
mod dd;
mod mdim;
mod parts;
mod sample;
mod spherical;
mod tetra;

pub use collapse::*;
pub use mdim::*;
pub use parts::*;
pub use sample::*;
pub use spherical::*;
pub use tetra::*;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multivec::{det, dot};

/// Slack for Gram determinants and arccos arguments lost to rounding.
pub const DET_SLACK: f64 = 1e-12;
pub const ACOS_SLACK: f64 = 1e-9;
/// Minimum Gram determinant accepted by the samplers.
pub const DEGENERACY_FLOOR: f64 = 1e-6;

/// Square root of a Gram determinant; slightly negative values are rounding.
pub fn gram_sine(d: f64) -> Result<f64> {
    if d < -DET_SLACK {
        return Err(Error::NonRealizable(d));
    }
    Ok(d.max(0.0).sqrt())
}

pub(crate) fn acos_checked(x: f64) -> Result<f64> {
    if x.abs() > 1.0 + ACOS_SLACK || x.is_nan() {
        return Err(Error::Degenerate(format!("arccos argument {x}")));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

fn det3(c1: f64, c2: f64, c3: f64) -> f64 {
    1.0 - c1 * c1 - c2 * c2 - c3 * c3 + 2.0 * c1 * c2 * c3
}

/// Three-variable generalized sine: sqrt of the 3x3 cosine Gram determinant.
/// Evaluated as 4 sin σ sin(σ−a) sin(σ−b) sin(σ−c) with σ the half sum, which
/// keeps its accuracy when the angles approach 0 or π.
pub fn gsin3(t_ij: f64, t_ik: f64, t_jk: f64) -> Result<f64> {
    let s = 0.5 * (t_ij + t_ik + t_jk);
    gram_sine(4.0 * s.sin() * (s - t_ij).sin() * (s - t_ik).sin() * (s - t_jk).sin())
}

/// Same as [`gsin3`] but taking cosines.
pub fn gsin3_cos(c_ij: f64, c_ik: f64, c_jk: f64) -> Result<f64> {
    gram_sine(det3(c_ij, c_ik, c_jk))
}

/// Index pairs of the six central angles of a tetrahedron, in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn pair_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    PAIRS.iter().position(|&p| p == (a, b)).expect("distinct labels in 0..4")
}

fn gram4(theta: &[f64; 6]) -> DMatrix<f64> {
    let mut g = DMatrix::identity(4, 4);
    for (idx, &(a, b)) in PAIRS.iter().enumerate() {
        let c = theta[idx].cos();
        g[(a, b)] = c;
        g[(b, a)] = c;
    }
    g
}

/// Six-variable generalized sine: sqrt of the 4x4 cosine Gram determinant.
pub fn gsin6(theta: &[f64; 6]) -> Result<f64> {
    gram_sine(det(&gram4(theta))?)
}

/// Symmetric, unit-diagonal matrix of central-angle cosines.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    g: DMatrix<f64>,
}

/// Flat serialized form: strict upper triangle, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub m: usize,
    pub cos: Vec<f64>,
}

impl GramMatrix {
    pub fn from_vectors<V: AsRef<[f64]>>(vs: &[V]) -> Result<Self> {
        let m = vs.len();
        let g = DMatrix::from_fn(m, m, |i, j| if i == j { 1.0 } else { dot(vs[i].as_ref(), vs[j].as_ref()) });
        Self::from_matrix(g)
    }

    pub fn from_upper(m: usize, cos: &[f64]) -> Result<Self> {
        if cos.len() != m * (m.saturating_sub(1)) / 2 {
            return Err(Error::Dimension(format!("{} cosines for m = {m}", cos.len())));
        }
        let mut g = DMatrix::identity(m, m);
        let mut it = cos.iter();
        for i in 0..m {
            for j in i + 1..m {
                let c = *it.next().expect("length checked");
                g[(i, j)] = c;
                g[(j, i)] = c;
            }
        }
        Self::from_matrix(g)
    }

    pub fn from_record(r: &ConfigRecord) -> Result<Self> {
        Self::from_upper(r.m, &r.cos)
    }

    /// Validates symmetry, unit diagonal, |g_ij| < 1 and all principal minors >= 0.
    pub fn from_matrix(g: DMatrix<f64>) -> Result<Self> {
        let m = g.nrows();
        if g.ncols() != m || !(3..=8).contains(&m) {
            return Err(Error::Dimension(format!("Gram matrix must be square with 3 <= m <= 8, got {}x{}", m, g.ncols())));
        }
        for i in 0..m {
            if (g[(i, i)] - 1.0).abs() > 1e-12 {
                return Err(Error::Degenerate(format!("diagonal entry {} is not 1", g[(i, i)])));
            }
            for j in 0..m {
                if (g[(i, j)] - g[(j, i)]).abs() > 1e-12 {
                    return Err(Error::Degenerate("Gram matrix is not symmetric".into()));
                }
                if i != j && !(g[(i, j)].abs() < 1.0) {
                    return Err(Error::Degenerate(format!("cosine {} is not inside (-1, 1)", g[(i, j)])));
                }
            }
        }
        let gm = Self { g };
        for mask in 1u32..(1 << m) {
            let idx: Vec<usize> = (0..m).filter(|b| mask & (1 << b) != 0).collect();
            gm.sine(&idx)?;
        }
        Ok(gm)
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn cos(&self, i: usize, j: usize) -> f64 {
        self.g[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn det(&self) -> f64 {
        self.g.determinant()
    }

    /// Rows `rows`, columns `cols` of the Gram matrix.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(rows.len(), cols.len(), |r, c| self.g[(rows[r], cols[c])])
    }

    /// Generalized sine of the sub-configuration `idx`.
    pub fn sine(&self, idx: &[usize]) -> Result<f64> {
        gram_sine(det(&self.minor(idx, idx))?)
    }

    pub fn to_record(&self) -> ConfigRecord {
        let m = self.dim();
        let mut cos = Vec::with_capacity(m * (m - 1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                cos.push(self.g[(i, j)]);
            }
        }
        ConfigRecord { m, cos }
    }
}

/// m unit vectors in R^m with their Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexConfig {
    pub vectors: Vec<Vec<f64>>,
    pub gram: GramMatrix,
}

impl SimplexConfig {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let m = vectors.len();
        if vectors.iter().any(|v| v.len() != m) {
            return Err(Error::Dimension(format!("simplex needs {m} vectors in R^{m}")));
        }
        if let Some(v) = vectors.iter().find(|v| (dot(v, v).sqrt() - 1.0).abs() > 1e-12) {
            return Err(Error::Degenerate(format!("vector norm {} is not 1", dot(v, v).sqrt())));
        }
        let gram = GramMatrix::from_vectors(&vectors)?;
        let d = gram.det();
        if d <= DEGENERACY_FLOOR {
            return Err(Error::Degenerate(format!("Gram determinant {d:e} below the floor")));
        }
        Ok(Self { vectors, gram })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}
