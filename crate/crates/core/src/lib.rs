//! Gelfand–Graev hypergeometric systems: vector sets and bases, GG-series,
//! residual verification, lattice quotients, integral representations,
//! resonance and generalized-function solutions.

pub mod distributions;
pub mod error;
pub mod gamma;
pub mod integral;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod resonance;
pub mod sampling;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{GgError, Result};
pub use model::{
    base_coords, build_reduced_system, enumerate_bases, kernel_space, reducibility_check,
    BaseSelection, ReducedSystem, ReducibilityReport, VectorSet,
};
pub use scalar::{Cx, Real};

/// Crate version, recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Double-precision complex scalar.
pub type C64 = Cx<f64>;
pub type VectorSet64 = VectorSet<f64>;
pub type BaseSelection64 = BaseSelection<f64>;
pub type ReducedSystem64 = ReducedSystem<f64>;
