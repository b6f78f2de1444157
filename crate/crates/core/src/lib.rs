//! Attenuated X-ray normal operators on the hyperbolic plane and on closed
//! hyperbolic surfaces, together with the reconstruction formula
//!
//! ```text
//! (Δ − z(z + √−K)) S_K^(z) Π₀^(z) f = −8π² f
//! ```
//!
//! and its unattenuated limit `Δ S_K Π₀ f = −8π² f` for mean-zero `f`.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: Gauss–Legendre rules, the complex Gamma function and
//!   Neville extrapolation.
//! - [`geometry`]: the Poincaré disk, SU(1,1) isometries and geodesics.
//! - [`spherical`]: spherical functions, the spherical transform and the
//!   closed-form transforms of the operator kernels.
//! - [`xray_disk`]: the operators `Π₀^(z)`, `S_K^(z)`, `Δ`, `L_K^(z)` on the
//!   disk and the disk reconstruction.
//! - [`surface`]: the genus-2 octagon surface, operators on the quotient,
//!   curvature rescaling and the `z → 0` limit.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the rest.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod numerics;
pub mod spherical;
pub mod surface;
pub mod xray_disk;

pub use error::{Error, Result};
pub use num_complex::Complex64;
