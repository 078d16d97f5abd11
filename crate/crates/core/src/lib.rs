//! Classical statevector simulation of Fast Fourier linear-combination-of-unitaries
//! (FFLCU) heat-equation solvers.
//!
//! The crate is organised bottom-up:
//!
//! - [`sim`]: dense multi-register statevectors, diagonal phases, QFT, ancilla projection
//!   and a gate-level Pauli-Z path for diagonal unitaries.
//! - [`state_prep`]: Grover–Rudolph loading of integrable densities and direct injection.
//! - [`lcu`]: Fourier coefficients of `e^{-β|x|}`, LCU plans and the LCU circuit.
//! - [`spectral`]: grids, the signed-index DTFT, diffusion and drift evolutions.
//! - [`oracles`]: classical reference solutions and error metrics.
//! - [`gaussian`]: the trigonometric Gaussian proxy and its derivative bounds.
//! - [`pricing`]: Black–Scholes to heat-equation transforms, European and Bermudan pricing,
//!   classical pricing oracles and resource estimates.
//!
//! Data-parallel kernels run on rayon when the `parallel` feature is enabled (the default);
//! see [`par`] for the sequential fallback.

// `!(x > 0.0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gaussian;
pub mod lcu;
pub mod oracles;
pub mod par;
pub mod pricing;
pub mod sim;
pub mod spectral;
pub mod state_prep;

pub use error::{Error, Result};
pub use num_complex::Complex64;
