use nalgebra::DMatrix;
use serde::Serialize;

use super::{gram_sine, gsin3_cos, GramMatrix, SimplexConfig};
use crate::error::{Error, Result};
use crate::multivec::det;

/// +1 for an even permutation of its sorted order, -1 for odd.
pub fn perm_sign(seq: &[usize]) -> f64 {
    let mut s = 1.0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                s = -s;
            }
        }
    }
    s
}

fn sub(g: &DMatrix<f64>, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |r, c| g[(rows[r], cols[c])])
}

fn sine_of(g: &DMatrix<f64>, idx: &[usize]) -> Result<f64> {
    let s = gram_sine(det(&sub(g, idx, idx))?)?;
    if s == 0.0 {
        return Err(Error::Degenerate(format!("facet {idx:?} has zero generalized sine")));
    }
    Ok(s)
}

fn ridge_cos_mat(g: &DMatrix<f64>, ridge: &[usize], p: usize, q: usize) -> Result<f64> {
    let mut rows = vec![p];
    rows.extend_from_slice(ridge);
    let mut cols = ridge.to_vec();
    cols.push(q);
    Ok(-det(&sub(g, &rows, &cols))? / (sine_of(g, &rows)? * sine_of(g, &cols)?))
}

fn link_cos_mat(g: &DMatrix<f64>, ridge: &[usize], v: usize, w: usize) -> Result<f64> {
    if ridge.is_empty() {
        return Ok(g[(v, w)]);
    }
    let sign = if ridge.len() % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * ridge_cos_mat(g, ridge, v, w)?)
}

/// Cosine of the angle between the facets {p} ∪ ridge and ridge ∪ {q}.
pub fn ridge_cosine(g: &GramMatrix, ridge: &[usize], p: usize, q: usize) -> Result<f64> {
    ridge_cos_mat(g.matrix(), ridge, p, q)
}

/// Cosine of the angle between v and w seen from the link of `ridge`. Equals
/// the Gram entry when the ridge is empty and alternates sign with the ridge
/// size otherwise, so that link cosines of any level form a Gram matrix again.
pub fn link_cosine(g: &GramMatrix, ridge: &[usize], v: usize, w: usize) -> Result<f64> {
    link_cos_mat(g.matrix(), ridge, v, w)
}

fn check_order(m: usize, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; m];
    if order.len() != m {
        return Err(Error::Dimension(format!("order has {} entries, expected {m}", order.len())));
    }
    for &x in order {
        if x >= m || seen[x] {
            return Err(Error::Dimension(format!("{order:?} is not a permutation of 0..{m}")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Cosine of the top-level angle between the facets order[..m-1] and order[1..].
pub fn mdim_cosine_rule(g: &GramMatrix, order: &[usize]) -> Result<f64> {
    let m = g.dim();
    check_order(m, order)?;
    ridge_cosine(g, &order[1..m - 1], order[0], order[m - 1])
}

fn omit(m: usize, a: usize) -> Vec<usize> {
    (0..m).filter(|&x| x != a).collect()
}

/// gsin(full)^{m-2} over the product of the m facet sines.
pub fn mdim_sine_constant(g: &GramMatrix) -> Result<f64> {
    let m = g.dim();
    let full = g.sine(&(0..m).collect::<Vec<_>>())?;
    let mut prod = 1.0;
    for a in 0..m {
        prod *= sine_of(g.matrix(), &omit(m, a))?;
    }
    Ok(full.powi(m as i32 - 2) / prod)
}

/// Gram matrix of the unit normals u_a to the facets omitting vertex a, each
/// taken as the normalized product of the remaining vectors in ascending order.
pub fn polar_gram(g: &GramMatrix) -> Result<DMatrix<f64>> {
    let m = g.dim();
    let mut p = DMatrix::identity(m, m);
    for a in 0..m {
        for b in a + 1..m {
            let ridge: Vec<usize> = (0..m).filter(|&x| x != a && x != b).collect();
            let d = ridge_cosine(g, &ridge, a, b)?;
            let mut s1 = vec![a];
            s1.extend_from_slice(&ridge);
            let mut s2 = ridge.clone();
            s2.push(b);
            let v = -perm_sign(&s1) * perm_sign(&s2) * d;
            // u_b spans {a} ∪ ridge, u_a spans ridge ∪ {b}
            p[(a, b)] = v;
            p[(b, a)] = v;
        }
    }
    Ok(p)
}

/// cosθ between the last two vectors, rebuilt from the polar normals of the
/// cyclic facets (a, a+1, .., a+m-2).
pub fn mdim_polar_cosine(g: &GramMatrix) -> Result<f64> {
    let m = g.dim();
    let p = polar_gram(g)?;
    let cyc = |a: usize| -> Vec<usize> { (0..m - 1).map(|t| (a + t) % m).collect() };
    let sg: Vec<f64> = (0..m).map(|a| perm_sign(&cyc(a))).collect();
    let ud = |a: usize, b: usize| sg[a] * sg[b] * p[((a + m - 1) % m, (b + m - 1) % m)];
    let n = m - 1;
    let x = DMatrix::from_fn(n, n, |r, c| ud(r, c + 1));
    let s1 = gram_sine(det(&DMatrix::from_fn(n, n, |r, c| ud(r, c)))?)?;
    let s2 = gram_sine(det(&DMatrix::from_fn(n, n, |r, c| ud(r + 1, c + 1)))?)?;
    if s1 == 0.0 || s2 == 0.0 {
        return Err(Error::Degenerate("polar facet has zero generalized sine".into()));
    }
    Ok(det(&x)? / (s1 * s2))
}

pub fn mdim_polar_cosine_residual(c: &SimplexConfig) -> Result<f64> {
    let m = c.dim();
    Ok((c.gram.cos(m - 2, m - 1) - mdim_polar_cosine(&c.gram)?).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HierarchyReport {
    /// Level-j cosines computed directly vs through the level-k link Gram.
    pub composition: f64,
    /// sinθ^{[j]} = k_{j-1} sinθ^{[j-1]}.
    pub sine_rule: f64,
}

impl HierarchyReport {
    pub fn max(&self) -> f64 {
        self.composition.max(self.sine_rule)
    }
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items.len() < size {
        return vec![];
    }
    let mut out = Vec::new();
    for (n, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[n + 1..], size - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Level-j angles are between (j)-facets sharing a ridge of j-1 vertices.
/// Requires 1 <= k < j <= m-1.
pub fn facet_hierarchy(c: &SimplexConfig, j: usize, k: usize) -> Result<HierarchyReport> {
    let m = c.dim();
    if !(1 <= k && k < j && j < m) {
        return Err(Error::Dimension(format!("need 1 <= k < j <= m-1, got j = {j}, k = {k}, m = {m}")));
    }
    let g = c.gram.matrix();
    let mut rep = HierarchyReport { composition: 0.0, sine_rule: 0.0 };
    for v in 0..m {
        for w in v + 1..m {
            let rest: Vec<usize> = (0..m).filter(|&x| x != v && x != w).collect();
            for ridge in subsets(&rest, j - 1) {
                let direct = link_cos_mat(g, &ridge, v, w)?;

                let (low, tail) = ridge.split_at(k - 1);
                let nodes: Vec<usize> = tail.iter().cloned().chain([v, w]).collect();
                let n = nodes.len();
                let mut lk = DMatrix::identity(n, n);
                for a in 0..n {
                    for b in a + 1..n {
                        let x = link_cos_mat(g, low, nodes[a], nodes[b])?;
                        lk[(a, b)] = x;
                        lk[(b, a)] = x;
                    }
                }
                let t_idx: Vec<usize> = (0..tail.len()).collect();
                let via = link_cos_mat(&lk, &t_idx, n - 2, n - 1)?;
                rep.composition = rep.composition.max((direct - via).abs());

                let sin_direct = (1.0 - direct * direct).max(0.0).sqrt();
                for (pos, &r) in ridge.iter().enumerate() {
                    let mut lower = ridge.clone();
                    lower.remove(pos);
                    let l_rv = link_cos_mat(g, &lower, r, v)?;
                    let l_rw = link_cos_mat(g, &lower, r, w)?;
                    let l_vw = link_cos_mat(g, &lower, v, w)?;
                    let sn = |x: f64| (1.0 - x * x).max(0.0).sqrt();
                    let kk = gsin3_cos(l_rv, l_rw, l_vw)? / (sn(l_rv) * sn(l_rw) * sn(l_vw));
                    rep.sine_rule = rep.sine_rule.max((sin_direct - kk * sn(l_vw)).abs());
                }
            }
        }
    }
    Ok(rep)
}

pub fn facet_hierarchy_residual(c: &SimplexConfig, j: usize, k: usize) -> Result<f64> {
    Ok(facet_hierarchy(c, j, k)?.max())
}
