//! Propagation of quantum fluctuations of a pump/probe beam pair through a
//! medium of lambda-type three-level atoms under electromagnetically induced
//! transparency.
//!
//! The numeric path linearizes the atomic Heisenberg-Langevin equations
//! around the steady state, eliminates the atoms at each sideband frequency
//! and propagates the field covariance along the medium. The [`analytic`]
//! module holds the closed-form spectra that the numeric path reproduces in
//! the ideal (undamped ground coherence) case.

pub mod analytic;
pub mod atom;
pub mod error;
pub mod langevin;
pub mod model;
pub mod propagate;
pub mod steady_state;
pub mod transfer;

pub use error::{Error, Result};
pub use model::{build_drive, build_drive_from_rabi, c_prefactor, Beam, DriveState, MediumParams, SystemOrdering, SystemVar};
pub use propagate::{simulate_decoherence, CovarianceMap, Simulation};

use nalgebra::{Dim, Matrix, RawStorage};
use num_complex::Complex64;

/// Largest modulus of a complex matrix (zero for an empty one).
pub fn max_abs<R: Dim, C: Dim, S: RawStorage<Complex64, R, C>>(m: &Matrix<Complex64, R, C, S>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
