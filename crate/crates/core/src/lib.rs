//! Numerical toolkit for the rotating Kepler problem.
//!
//! The crate covers the planar Kepler and rotating-Kepler dynamics, the
//! Ligon-Schaaf and Levi-Civita regularizations, the toric domain cut out by
//! the reduced Jacobi Hamiltonian below the critical energy `-3/2`, the
//! resonance catalogue of periodic orbits of the second kind and the
//! Stern-Brocot derived slope tree.
//!
//! Units are dimensionless with gravitational parameter 1 and a frame that
//! rotates with unit angular speed.

// Negated comparisons reject NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalogue;
pub mod dynamics;
mod error;
pub mod io;
pub mod numerics;
pub mod regularization;
pub mod sampling;
pub mod toric;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};

/// Critical value of the Jacobi energy.
pub const CRITICAL_ENERGY: f64 = -1.5;
