//! Spectral computations for Landau levels perturbed by δ-interactions
//! supported on closed planar curves.
//!
//! - [`special`]: generalized Laguerre polynomials, their zeros and Gauss rules.
//! - [`basis`]: the angular-momentum basis of each Landau level and magnetic translations.
//! - [`curve`]: Jordan curves, arclength quadrature and coupling weights.
//! - [`toeplitz`]: truncated Berezin-Toeplitz matrices of a weighted curve.
//! - [`census`]: resonant radii of circles and the associated scalar bounds.
//! - [`galerkin`]: finite sections of the perturbed Hamiltonian.
//! - [`cli`]: the `landau` command-line front end; [`verify`] its self-check suite.

pub mod basis;
pub mod census;
pub mod cli;
pub mod curve;
pub mod error;
pub mod galerkin;
pub mod special;
pub mod toeplitz;
pub mod verify;

pub use error::{Error, Result};
