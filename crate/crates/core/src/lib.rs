//! Pseudo-spectral solver for the absolute-vorticity equation on a rotating
//! unit sphere, with Rossby–Haurwitz wave oracles, conserved functionals,
//! orbit distances and the degree-2 moment algebra.

pub mod dynamics;
pub mod error;
pub mod functionals;
pub mod grid;
pub mod harmonics;
pub mod invariants;
pub mod lab;
pub mod operators;
pub mod orbit;
pub mod rh_waves;
pub mod rotations;

pub use error::{Error, Result};
pub use grid::GridSpec;
pub use harmonics::{GridField, SpectralField, C64};
pub use invariants::E2Coeffs;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
