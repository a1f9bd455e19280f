//! Simulation library for classical statistical chains in the transfer-matrix
//! (step evolution operator) formalism.
//!
//! The library follows the information transport between the boundaries of a
//! one-dimensional chain of spin layers. The local state on a hypersurface is
//! carried by a pair of real wave functions, or equivalently by a classical
//! density matrix, both evolving linearly under step evolution operators.
//! Local observables become operators, boundary problems become two-sided
//! sweeps, and everything can be cross-checked against a brute-force
//! configuration sum.

pub mod boundary;
pub mod error;
pub mod evolution;
pub mod lattice;
pub mod linalg;
pub mod models;
pub mod observables;
pub mod oracle;
pub mod transforms;

pub use error::{Error, Result};

use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// Real column vector.
pub type Vector = Array1<f64>;
/// Real dense matrix.
pub type Matrix = Array2<f64>;
/// Complex column vector.
pub type CVector = Array1<Complex64>;
/// Complex dense matrix.
pub type CMatrix = Array2<Complex64>;
