//! Hyperspherical trigonometry, generalized Jacobi elliptic functions and the
//! integrable tops built on them.

pub mod elliptic;
pub mod dynamics;
pub mod error;
pub mod gjelliptic;
pub mod multivec;
pub mod quad;
pub mod sampling;
pub mod simplex_trig;
pub mod suites;
pub mod uniformize;

pub use error::{Error, Result};
