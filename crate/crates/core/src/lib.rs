//! Exact and asymptotic spanning-tree counts on grid lattices, discrete tori
//! and quartered Aztec diamonds.
//!
//! * [`specfun`] - Bessel, eta, Catalan and the `∫₀^∞ … dt/t` quadrature.
//! * [`spectra`] - closed-form Laplacian spectra, heat traces, log-determinants.
//! * [`combinatorics`] - subset-indexed binomial inversion.
//! * [`exact`] - arbitrary-precision matrix-tree counts and exact identities.
//! * [`zetadet`] - zeta-regularised determinants of tori, orthotopes and the triangle.
//! * [`asympt`] - lattice constants, asymptotic right-hand sides and residual sweeps.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod asympt;
pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod precision;
pub mod spectra;
pub mod specfun;
pub mod sum;
pub mod zetadet;

pub use error::{Error, Result};
pub use precision::PrecisionMode;
pub use sum::{CompensatedSum, Exec};
