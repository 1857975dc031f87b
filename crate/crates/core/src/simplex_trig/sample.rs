use std::f64::consts::PI;

use super::{HypersphericalTetrahedron, SimplexConfig, SphericalTriangle, DEGENERACY_FLOOR};
use crate::error::{Error, Result};
use crate::multivec::dot;
use crate::sampling::{rng_from_seed, unit_vec, TrialRng};

pub const MAX_REJECTIONS: usize = 10_000;
pub const ANGLE_MARGIN: f64 = 0.05;

fn acceptable(vs: &[Vec<f64>]) -> bool {
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            let t = dot(&vs[a], &vs[b]).clamp(-1.0, 1.0).acos();
            if !(t > ANGLE_MARGIN && t < PI - ANGLE_MARGIN) {
                return false;
            }
        }
    }
    true
}

/// Draws m uniform unit vectors in R^m until the configuration is accepted.
/// Returns it with the number of rejected draws.
pub fn sample_simplex_from(rng: &mut TrialRng, m: usize) -> Result<(SimplexConfig, usize)> {
    if !(3..=8).contains(&m) {
        return Err(Error::Dimension(format!("m = {m} outside 3..=8")));
    }
    for rejected in 0..MAX_REJECTIONS {
        let vs: Vec<Vec<f64>> = (0..m).map(|_| unit_vec(rng, m)).collect();
        if !acceptable(&vs) {
            continue;
        }
        match SimplexConfig::new(vs) {
            Ok(c) if c.gram.det() > DEGENERACY_FLOOR => return Ok((c, rejected)),
            _ => continue,
        }
    }
    Err(Error::Sampling(MAX_REJECTIONS))
}

pub fn sample_simplex(m: usize, seed: u64) -> Result<SimplexConfig> {
    Ok(sample_simplex_from(&mut rng_from_seed(seed), m)?.0)
}

pub fn sample_triangle(seed: u64) -> Result<SphericalTriangle> {
    SphericalTriangle::from_config(&sample_simplex(3, seed)?)
}

pub fn sample_tetrahedron(seed: u64) -> Result<HypersphericalTetrahedron> {
    HypersphericalTetrahedron::from_config(&sample_simplex(4, seed)?)
}
