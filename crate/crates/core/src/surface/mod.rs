//! Closed hyperbolic surfaces `Γ\D`, here the genus-2 regular octagon:
//! fundamental-domain reduction, pullback of fields, operators on the
//! quotient, curvature rescaling, reconstruction and the `z → 0` limit.

mod data;
mod domain;
mod field;
mod group;
mod operators;

pub use data::{
    normal_op_data, reconstruct_surface_limit, reconstruct_surface_limit_from_field,
    reconstruct_surface_limit_many, LimitReconstruction,
};
pub use domain::{surface_mean, DomainQuadrature};
pub use field::{pullback_field, PullbackField, SurfaceField};
pub use group::{octagon_group, reduce_to_fundamental, FuchsianGroup, Orbit, OrbitElement};
pub use operators::{
    reconstruct_surface, reconstruct_surface_many, surface_normal_op, surface_normal_op_at_lift,
    surface_s_op, Surface, SurfaceResolution,
};

use crate::error::{bail, Result};
use crate::xray_disk::AttenuationParam;

/// The rescaling `g̃ = −K g` to curvature −1: distances scale by `√−K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureScaling {
    curvature: f64,
    scale: f64,
}

impl CurvatureScaling {
    pub fn new(curvature: f64) -> Result<Self> {
        if !(curvature < 0.0 && curvature.is_finite()) {
            bail!(
                InvalidArgument,
                "curvature must be negative, got {curvature}"
            );
        }
        Ok(Self {
            curvature,
            scale: (-curvature).sqrt(),
        })
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    /// `√−K`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `Π₀^(z) = pi_prefactor · Π̃₀^(z/√−K)`.
    pub fn pi_prefactor(&self) -> f64 {
        1.0 / self.scale
    }

    /// `S_K^(z) = s_prefactor · S̃^(z/√−K)`.
    pub fn s_prefactor(&self) -> f64 {
        1.0 / self.scale
    }

    /// `L_K^(z) = l_prefactor · L̃^(z/√−K)`.
    pub fn l_prefactor(&self) -> f64 {
        -self.curvature
    }
}

/// `z̃ = z/√−K` on the unit-curvature surface, with the operator scalings.
pub fn rescale_to_unit_curvature(
    p: &AttenuationParam,
) -> Result<(AttenuationParam, CurvatureScaling)> {
    let scaling = CurvatureScaling::new(p.curvature())?;
    Ok((
        AttenuationParam::new(p.z() / scaling.scale(), -1.0)?,
        scaling,
    ))
}
