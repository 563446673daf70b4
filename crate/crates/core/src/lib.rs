//! Riemann–Liouville–Hadamard fractional differintegration of arbitrary
//! complex order on generalized power-logarithmic series.
//!
//! The crate is organised bottom-up:
//!
//! - [`special`]: complex gamma, digamma/polygamma, incomplete gamma and
//!   generalized hypergeometric series.
//! - [`series`]: truncated sums of `c * z^(b+n) * log^k z` and builders for
//!   a catalog of elementary and special functions.
//! - [`rlh`]: the differintegral itself, as exact rules on single terms,
//!   applied termwise, plus closed forms, the generalized Leibniz rule and
//!   differential constants.
//! - [`gl`]: independent numerical oracles (Grünwald–Letnikov sums and
//!   finite-part quadrature).
//! - [`meijer`]: parameter-level Meijer G algebra and the convergence
//!   decision procedure for Riemann–Liouville integrals of G-functions.
//! - [`expr`]: a tiny expression language compiled into series.

pub mod error;
pub mod expr;
pub mod gl;
pub mod meijer;
pub mod quad;
pub mod rlh;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// The numeric carrier used throughout the crate.
pub type Scalar = Complex64;

/// Shorthand for a real value lifted to [`Scalar`].
#[inline]
pub fn re(x: f64) -> Scalar {
    Complex64::new(x, 0.0)
}
