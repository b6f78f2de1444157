use std::f64::consts::FRAC_PI_8;

use num_complex::Complex64;

use super::field::SurfaceField;
use super::group::FuchsianGroup;
use crate::error::{bail, Result};
use crate::geometry::DiskPoint;
use crate::numerics::{composite_gauss_legendre, gauss_legendre};

const RADIAL_ORDER: usize = 16;

/// A product rule on the octagon, split into the eight triangles
/// (0, vertex, vertex). Each triangle is covered in geodesic polar
/// coordinates `(ρ, θ)` about 0 with the side at `tanh ρ = tanh m / cos(θ−θ_k)`,
/// so the boundary is integrated exactly and no cell needs clipping.
#[derive(Debug, Clone)]
pub struct DomainQuadrature {
    nodes: Vec<DiskPoint>,
    weights: Vec<f64>,
}

impl DomainQuadrature {
    /// `angular` Gauss nodes per triangle, `radial_panels` Gauss panels of
    /// order 16 along each ray.
    pub fn octagon(group: &FuchsianGroup, angular: usize, radial_panels: usize) -> Result<Self> {
        if angular < 2 || radial_panels == 0 {
            bail!(
                InvalidArgument,
                "domain rule needs ≥ 2 angular nodes and ≥ 1 radial panel"
            );
        }
        let tm = group.edge_midpoint_radius().tanh();
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for k in 0..8 {
            let centre = FuchsianGroup::side_direction(k);
            for (psi, wa) in gauss_legendre(angular, -FRAC_PI_8, FRAC_PI_8)?.iter() {
                let rho_max = (tm / psi.cos()).atanh();
                for (rho, wr) in
                    composite_gauss_legendre(radial_panels, RADIAL_ORDER, 0.0, rho_max)?.iter()
                {
                    nodes.push(DiskPoint::from_polar(rho, centre + psi)?);
                    weights.push(wa * wr * rho.sinh());
                }
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[DiskPoint] {
        &self.nodes
    }

    /// Weights including the area element.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate(&self, f: impl Fn(&DiskPoint) -> Result<Complex64>) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(p)? * *w;
        }
        Ok(acc)
    }
}

/// `∫_F f dvol / area(F)`, both by the same rule.
pub fn surface_mean(f: &SurfaceField, domain: &DomainQuadrature) -> Result<Complex64> {
    if let Some(c) = f.as_constant() {
        return Ok(c);
    }
    let area = domain.area();
    if !(area > 0.0) {
        bail!(Resolution, "degenerate fundamental-domain rule");
    }
    Ok(domain.integrate(|p| f.eval_on_domain(p))? / area)
}
