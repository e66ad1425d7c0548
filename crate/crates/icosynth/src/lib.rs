//! Exact and approximate synthesis of single-qubit unitaries over the
//! icosahedral golden gates ρ, σ, τ.

pub mod diagonal;
pub mod error;
pub mod gauss;
pub mod general;
pub mod golden;
pub mod icosian;
pub mod lattice2d;
pub mod real;
pub mod sots;
pub mod unitary;

pub use error::{Error, Result};
