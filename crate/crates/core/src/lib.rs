//! Finite-volume solver for the two-dimensional compressible Euler equations
//! with the two-state K-CUSP-X flux and its genuinely multidimensional
//! extension GM-K-CUSP-X.

pub mod cases;
pub mod corner;
pub mod error;
pub mod euler;
pub mod io;
pub mod midpoint;
pub mod solver;

pub use error::{CellIndex, Error, Result};
pub use euler::{Axis, ConservedState, FluxVector, GasModel, PrimitiveState};
