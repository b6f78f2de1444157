//! Numerical building blocks shared by the operator modules.

mod extrapolate;
mod gamma;
mod interp;
mod quadrature;

pub use extrapolate::{extrapolate_to_zero, Extrapolation};
pub use gamma::gamma_complex;
pub use interp::{smooth_step, ChebyshevPanels};
pub use quadrature::{
    composite_gauss_legendre, gauss_legendre, periodic_trapezoid, QuadratureRule,
};

use num_complex::Complex64;

use crate::error::{bail, Result};

/// Complex scalar used for attenuation and spectral parameters.
pub type ComplexValue = Complex64;

/// Rejects values with a NaN or infinite component.
pub fn ensure_finite(w: ComplexValue, what: &str) -> Result<ComplexValue> {
    if w.re.is_finite() && w.im.is_finite() {
        Ok(w)
    } else {
        bail!(Numeric, "{what} is not finite: {w}")
    }
}
