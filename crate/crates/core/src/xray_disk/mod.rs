//! Operators on the Poincaré disk: the attenuated normal operator `Π₀^(z)`,
//! the smoothing operator `S_K^(z) = ½ Π₀^(z+√−K)`, the Laplace–Beltrami
//! operator, `L_K^(z) = Δ − z(z+√−K)`, convolution with radial kernels, and
//! the reconstruction `f = −(8π²)⁻¹ L^(z) S^(z) Π₀^(z) f`.

mod field;
mod operators;
mod tables;

pub use field::{
    bump_profile, Bump, ConstantField, FnField, MemoizedField, RadialField, ScalarField,
};
pub use operators::{
    convolve_radial, l_op, laplace_beltrami, normal_op_attenuated, radial_laplacian,
    reconstruct_disk, s_op, SmoothedField,
};
pub use tables::{radial_data_table, PolarTableField};

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::numerics::ensure_finite;
use crate::spherical::RadialFunction;

/// Attenuation `z` together with the curvature `K < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttenuationParam {
    z: Complex64,
    curvature: f64,
}

impl AttenuationParam {
    /// `Re z ≥ 0` is accepted so that `S_K^(0)` can be formed; operators
    /// that need `Re z > 0` check it themselves.
    pub fn new(z: Complex64, curvature: f64) -> Result<Self> {
        ensure_finite(z, "attenuation")?;
        if z.re < 0.0 {
            bail!(InvalidArgument, "attenuation must have Re z ≥ 0, got {z}");
        }
        if !(curvature < 0.0 && curvature.is_finite()) {
            bail!(
                InvalidArgument,
                "curvature must be negative, got {curvature}"
            );
        }
        Ok(Self { z, curvature })
    }

    /// Real `z` on the unit-curvature disk.
    pub fn unit(z: f64) -> Result<Self> {
        Self::new(Complex64::new(z, 0.0), -1.0)
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    /// `√−K`.
    pub fn sqrt_neg_k(&self) -> f64 {
        (-self.curvature).sqrt()
    }

    /// `z(z + √−K)`.
    pub fn shift(&self) -> Complex64 {
        self.z * (self.z + self.sqrt_neg_k())
    }

    pub(crate) fn require_positive(&self) -> Result<()> {
        if !(self.z.re > 0.0) {
            bail!(InvalidArgument, "operation needs Re z > 0, got {}", self.z);
        }
        Ok(())
    }
}

/// Discretization parameters of the ray, fiber and finite-difference rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorResolution {
    /// Directions in the fiber `S_x D`.
    pub n_theta: usize,
    /// Nodes along each ray (or each chord through a compact support).
    pub n_r: usize,
    /// Ray truncation; `None` derives it from the tail bound.
    pub radius: Option<f64>,
    /// Step of the five-point Laplacian.
    pub fd_step: f64,
}

impl Default for OperatorResolution {
    fn default() -> Self {
        Self {
            n_theta: 64,
            n_r: 600,
            radius: None,
            fd_step: 1e-3,
        }
    }
}

impl OperatorResolution {
    pub fn validate(&self) -> Result<()> {
        if self.n_theta < 4 {
            bail!(
                InvalidArgument,
                "n_theta must be at least 4, got {}",
                self.n_theta
            );
        }
        if self.n_r < 16 {
            bail!(InvalidArgument, "n_r must be at least 16, got {}", self.n_r);
        }
        if let Some(r) = self.radius {
            if !(r.is_finite() && r > 0.0) {
                bail!(
                    InvalidArgument,
                    "truncation radius must be positive, got {r}"
                );
            }
        }
        if !(1e-4..=1e-2).contains(&self.fd_step) {
            bail!(
                InvalidArgument,
                "finite-difference step must lie in [1e-4, 1e-2], got {}",
                self.fd_step
            );
        }
        Ok(())
    }
}

/// Ray length `R` at which the tail bound `(4π/Re z)·C·e^{−R Re z}` of the
/// normal operator equals `eps`: `R = ln(4πC/(eps·Re z)) / Re z`.
/// Returns 0 when the whole integral is already below `eps`.
pub fn truncation_radius(z: Complex64, bound: f64, eps: f64) -> Result<f64> {
    if !(z.re > 0.0) || !(bound > 0.0) || !(eps > 0.0) {
        bail!(
            InvalidArgument,
            "truncation radius needs Re z, C, eps > 0 (got {z}, {bound}, {eps})"
        );
    }
    let r = (4.0 * std::f64::consts::PI * bound / (eps * z.re)).ln() / z.re;
    Ok(r.max(0.0))
}

/// The kernel `τ^(z)(r) = e^{−zr}/sinh r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTau {
    z: Complex64,
}

/// `τ^(z)`; `Re z > 0`.
pub fn kernel_tau(z: Complex64) -> Result<KernelTau> {
    ensure_finite(z, "attenuation")?;
    if !(z.re > 0.0) {
        bail!(InvalidArgument, "kernel needs Re z > 0, got {z}");
    }
    Ok(KernelTau { z })
}

/// `σ^(z)(r) = e^{−(z+1)r}/sinh r = e^{−zr}(coth r − 1)`, i.e. `τ^(z+1)`.
pub fn kernel_sigma(z: Complex64) -> Result<KernelTau> {
    kernel_tau(z + 1.0)
}

impl KernelTau {
    pub fn attenuation(&self) -> Complex64 {
        self.z
    }
}

impl RadialFunction for KernelTau {
    fn eval(&self, r: f64) -> Result<Complex64> {
        if r < 1e-12 || r.is_nan() {
            bail!(
                Domain,
                "kernel is singular at r = {r}; use the sinh-weighted form"
            );
        }
        Ok((-self.z * r).exp() / r.sinh())
    }

    fn eval_times_sinh(&self, r: f64) -> Result<Complex64> {
        if r < 0.0 || r.is_nan() {
            bail!(InvalidArgument, "radius must be ≥ 0, got {r}");
        }
        Ok((-self.z * r).exp())
    }

    fn decay_rate(&self) -> Option<f64> {
        Some(self.z.re)
    }
}
