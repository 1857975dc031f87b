use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("configuration is not realizable (Gram determinant {0:e})")]
    NonRealizable(f64),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("angle sum {0} does not exceed pi")]
    NotSpherical(f64),
    #[error("indeterminate ratio: {0}")]
    Indeterminate(String),
    #[error("vertex cosine {0} outside [-1, 1]")]
    NonRealizableVertex(f64),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("addition denominator {0:e} too small")]
    DegenerateDenominator(f64),
    #[error("configuration is not collapsed (generalized sine {0:e})")]
    NotCollapsed(f64),
    #[error("sampler gave up after {0} consecutive rejections")]
    Sampling(usize),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("tangent projection failed: {0}")]
    Tangent(String),
    #[error("tetrahedron is not symmetric (dihedral mismatch {0:e})")]
    NotSymmetric(f64),
    #[error("initial condition on the separatrix (|1 - k^2| = {0:e})")]
    Separatrix(f64),
    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("state off the quadric surface (residual {0:e})")]
    OffSurface(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
