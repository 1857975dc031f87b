//! Integrable tops in Nambu form and a reference integrator.

pub mod dell;
pub mod nambu;
pub mod ode;
pub mod top3;
pub mod top4;

pub use dell::{dell_closed_form, dell_hamiltonian, dell_quadric_rhs, DellParams, DellSolution};
pub use nambu::{nambu3_bracket, nambu4_bracket, nambu_bracket, Coord, Field, Quadratic};
pub use ode::{integrate, linspace, OdeOptions, Trajectory};
pub use top3::{euler3_closed_form, euler3_rhs, Inertia3, Top3Solution};
pub use top4::{euler4_closed_form, euler4_coefficients, euler4_rhs, Nambu4Params};
