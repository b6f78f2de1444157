//! Normal-operator data `Π₀^(z) f` on the surface for bump fields, and the
//! `z → 0` limit of the reconstruction.
//!
//! For `f = b(d(c, ·)) + s` with the bump inside the domain, `π*f` is the
//! lattice sum of disk bumps plus a constant, so `π*Π₀f = Σ_γ G(d(·, γc)) +
//! 4πs/z` with `G` the (tabulated) disk image of one bump. The lattice sum
//! converges only like `Σ e^{−Re z·d}`; it is cut smoothly at `T_out` and the
//! discarded tail is replaced by its lattice average, which is exact for
//! the mean since `∫_D G = (4π/z)∫_D b`.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;

use super::field::SurfaceField;
use super::group::{FuchsianGroup, Orbit};
use super::operators::{reconstruct_surface_many, unit_param, Surface};
use crate::error::{bail, Result};
use crate::geometry::DiskPoint;
use crate::numerics::{composite_gauss_legendre, extrapolate_to_zero, smooth_step, Extrapolation};
use crate::spherical::{RadialFunction, TabulatedRadial};
use crate::xray_disk::{bump_profile, radial_data_table, AttenuationParam, Bump};

/// A Γ-periodic radial lattice sum `α(Σ_γ G(d(y, γc))ψ(d) + β)`.
pub(crate) struct PeriodizedData {
    group: FuchsianGroup,
    /// `γc`, `1 − |γc|²` and `d(0, γc)`, sorted by the last.
    images: Vec<(Complex64, f64, f64)>,
    profile: TabulatedRadial,
    cutoff: (f64, f64),
    constant: Complex64,
    prefactor: f64,
}

impl PeriodizedData {
    pub(crate) fn eval(&self, y: &DiskPoint) -> Result<Complex64> {
        let (y, _) = super::group::reduce_to_fundamental(y, &self.group)?;
        let (t_in, t_out) = self.cutoff;
        let q_max = (0.5 * t_out).sinh().powi(2);
        let yc = y.coord();
        let room = 1.0 - yc.norm_sqr();
        let limit = t_out + y.radius();
        let n = self.images.partition_point(|im| im.2 <= limit);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(c, rc, _) in &self.images[..n] {
            let q = (yc - c).norm_sqr() / (room * rc);
            if q >= q_max {
                continue;
            }
            let d = 2.0 * q.sqrt().asinh();
            acc += self.profile.eval(d)? * (1.0 - smooth_step(d, t_in, t_out));
        }
        Ok((acc + self.constant) * self.prefactor)
    }
}

/// `Π₀^(z) f` as a surface field, for constant fields and for bumps (plus a
/// constant) inside the fundamental domain. Other fields are rejected: the
/// pointwise operator [`super::surface_normal_op`] is too slow to tabulate.
pub fn normal_op_data(
    f: &SurfaceField,
    p: &AttenuationParam,
    surface: &Surface,
) -> Result<SurfaceField> {
    let (unit, scaling) = unit_param(p)?;
    let z = unit.z();
    if let Some(c) = f.as_constant() {
        return Ok(SurfaceField::constant(
            c * (4.0 * PI) / z * scaling.pi_prefactor(),
        ));
    }
    let Some((bump, shift)) = f.as_bump() else {
        bail!(
            Precondition,
            "surface data can only be generated for constant and bump fields"
        );
    };
    let res = surface.resolution();
    let window = res.data_cutoff;
    let (_, t_out) = window;
    let at_origin = Bump::new(DiskPoint::origin(), bump.radius, bump.amplitude)?;
    let profile = radial_data_table(&at_origin, &unit, &res.op, t_out + 0.25, res.table_panel)?
        .into_profile();

    let mass = composite_gauss_legendre(64, 16, 0.0, bump.radius)?
        .integrate(|r| bump_profile(r, bump.radius) * r.sinh())
        * TAU;
    let mass = bump.amplitude * mass;
    let cut_integral = lattice_cut_integral(&profile, window)?;
    let area = surface.group().area();
    let constant = (mass * (4.0 * PI) / z - cut_integral) / area + shift * (4.0 * PI) / z;

    let images = image_table(
        surface.orbit_arc(),
        &bump.center,
        t_out + surface.group().vertex_radius(),
    )?;
    let data = PeriodizedData {
        group: surface.group().clone(),
        images,
        profile,
        cutoff: window,
        constant,
        prefactor: scaling.pi_prefactor(),
    };
    let bound = scaling.pi_prefactor() * 4.0 * PI / z.re * f.bound();
    Ok(SurfaceField::periodized(data, bound))
}

/// `∫_D G(d(0, y)) ψ(d) dvol = 2π ∫₀^{T_out} G(r) ψ(r) sinh r dr`.
fn lattice_cut_integral(profile: &TabulatedRadial, (t_in, t_out): (f64, f64)) -> Result<Complex64> {
    let panels = (t_out / 0.0625).ceil() as usize;
    let rule = composite_gauss_legendre(panels, 16, 0.0, t_out)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (r, w) in rule.iter() {
        acc += profile.eval(r)? * ((1.0 - smooth_step(r, t_in, t_out)) * r.sinh() * w);
    }
    Ok(acc * TAU)
}

fn image_table(
    orbit: Arc<Orbit>,
    centre: &DiskPoint,
    reach: f64,
) -> Result<Vec<(Complex64, f64, f64)>> {
    let limit = reach + centre.radius();
    if limit > orbit.radius() {
        bail!(Internal, "orbit enumeration does not cover the lattice sum");
    }
    let origin = DiskPoint::origin();
    let mut images = orbit
        .within(limit)
        .iter()
        .map(|e| {
            let c = e.element.apply(centre)?;
            Ok((
                c.coord(),
                1.0 - c.coord().norm_sqr(),
                crate::geometry::distance(&origin, &c),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    images.sort_by(|a, b| a.2.total_cmp(&b.2));
    Ok(images)
}

/// The reconstructions at each `z` and their extrapolation to `z = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitReconstruction {
    pub samples: Vec<(f64, Complex64)>,
    pub extrapolation: Extrapolation,
}

impl LimitReconstruction {
    pub fn value(&self) -> Complex64 {
        self.extrapolation.value
    }
}

fn check_z_list(z_list: &[f64]) -> Result<()> {
    if z_list.len() < 3 {
        bail!(
            InvalidArgument,
            "the z → 0 limit needs at least 3 attenuations, got {}",
            z_list.len()
        );
    }
    if let Some(z) = z_list.iter().find(|z| !(**z > 0.0 && **z <= 0.5)) {
        bail!(
            InvalidArgument,
            "attenuations for the limit must lie in (0, 0.5], got {z}"
        );
    }
    Ok(())
}

/// Evaluates `−(8π²)⁻¹ L^(z) S^(z) g_z` at `q` for each real `z` in
/// `z_list` (order kept; pass it decreasing) and extrapolates to 0.
///
/// The data must come from a mean-zero field, since otherwise they have a
/// pole at `z = 0`. Only the data are seen here, so the check is on
/// `mean(f) = z·mean(g_z)/4π` at the accuracy of the domain rule applied to
/// `g_z` (`1e−6` relative); [`reconstruct_surface_limit_from_field`]
/// enforces `|mean(f)| ≤ 1e−8` on the field itself.
pub fn reconstruct_surface_limit(
    provider: &dyn Fn(&AttenuationParam) -> Result<SurfaceField>,
    curvature: f64,
    q: &DiskPoint,
    surface: &Surface,
    z_list: &[f64],
) -> Result<LimitReconstruction> {
    let mut all = reconstruct_surface_limit_many(
        provider,
        curvature,
        std::slice::from_ref(q),
        surface,
        z_list,
    )?;
    Ok(all.remove(0))
}

/// [`reconstruct_surface_limit`] at several points; the data for each `z`
/// are requested once.
pub fn reconstruct_surface_limit_many(
    provider: &dyn Fn(&AttenuationParam) -> Result<SurfaceField>,
    curvature: f64,
    points: &[DiskPoint],
    surface: &Surface,
    z_list: &[f64],
) -> Result<Vec<LimitReconstruction>> {
    check_z_list(z_list)?;
    let mut per_z = Vec::with_capacity(z_list.len());
    for &z in z_list {
        let p = AttenuationParam::new(Complex64::new(z, 0.0), curvature)?;
        let g = provider(&p)?;
        let field_mean = surface.mean(&g)? * (z / (4.0 * PI));
        let scale = (g.bound() * z / (4.0 * PI)).max(1.0);
        if field_mean.norm() > 1e-6 * scale {
            bail!(
                Precondition,
                "data at z = {z} come from a field with mean {field_mean:.3e}; the z → 0 limit needs mean zero"
            );
        }
        per_z.push(reconstruct_surface_many(&g, &p, points, surface)?);
    }
    (0..points.len())
        .map(|i| {
            let samples: Vec<(f64, Complex64)> =
                z_list.iter().zip(&per_z).map(|(&z, v)| (z, v[i])).collect();
            let extrapolation = extrapolate_to_zero(&samples)?;
            Ok(LimitReconstruction {
                samples,
                extrapolation,
            })
        })
        .collect()
}

/// The limit for a bump (or constant) field `f`: the mean is subtracted
/// first and the data are generated for each `z`. Returns the
/// reconstructions together with the mean-zero field they recover.
pub fn reconstruct_surface_limit_from_field(
    f: &SurfaceField,
    curvature: f64,
    points: &[DiskPoint],
    surface: &Surface,
    z_list: &[f64],
) -> Result<(Vec<LimitReconstruction>, SurfaceField)> {
    check_z_list(z_list)?;
    let f0 = f.offset(-surface.mean(f)?);
    let residual = surface.mean(&f0)?;
    if residual.norm() > 1e-8 * f.bound().max(1.0) {
        bail!(Numeric, "mean subtraction left a mean of {residual:.3e}");
    }
    let provider = |p: &AttenuationParam| normal_op_data(&f0, p, surface);
    Ok((
        reconstruct_surface_limit_many(&provider, curvature, points, surface, z_list)?,
        f0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{surface_normal_op, SurfaceResolution};

    #[test]
    fn constant_data() {
        let s = Surface::octagon(SurfaceResolution::default()).unwrap();
        let one = SurfaceField::constant(Complex64::new(1.0, 0.0));
        let p = AttenuationParam::new(Complex64::new(0.5, 0.0), -4.0).unwrap();
        let g = normal_op_data(&one, &p, &s).unwrap();
        assert!((g.as_constant().unwrap() - 8.0 * PI).norm() < 1e-12);
        let f = SurfaceField::from_fn(|_| Ok(Complex64::new(1.0, 0.0)), 1.0, 0.0).unwrap();
        assert!(normal_op_data(&f, &p, &s).is_err());
    }

    #[test]
    fn limit_rejects_nonzero_mean_and_bad_lists() {
        let s = Surface::octagon(SurfaceResolution::default()).unwrap();
        let one = SurfaceField::constant(Complex64::new(1.0, 0.0));
        let provider = |p: &AttenuationParam| normal_op_data(&one, p, &s);
        let q = DiskPoint::origin();
        let err = reconstruct_surface_limit(&provider, -1.0, &q, &s, &[0.4, 0.2, 0.1]);
        assert!(matches!(err, Err(crate::Error::Precondition(_))));
        assert!(reconstruct_surface_limit(&provider, -1.0, &q, &s, &[0.4, 0.2]).is_err());
        assert!(reconstruct_surface_limit(&provider, -1.0, &q, &s, &[0.8, 0.2, 0.1]).is_err());
        let zero = SurfaceField::zero();
        let (r, _) =
            reconstruct_surface_limit_from_field(&zero, -1.0, &[q], &s, &[0.4, 0.2, 0.1]).unwrap();
        assert_eq!(r[0].value(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn periodized_data_matches_lattice_operator() {
        let s = Surface::octagon(SurfaceResolution::default()).unwrap();
        let rho = s.group().edge_midpoint_radius() - 0.2;
        let f = SurfaceField::bump(s.group(), Bump::centered(rho).unwrap()).unwrap();
        let p = AttenuationParam::unit(0.5).unwrap();
        let g = normal_op_data(&f, &p, &s).unwrap();
        for q in [
            DiskPoint::origin(),
            DiskPoint::from_polar(1.2, 0.5).unwrap(),
        ] {
            let a = g.eval_on_domain(&q).unwrap();
            let b = surface_normal_op(&f, &p, &q, &s).unwrap();
            assert!((a - b).norm() < 1e-3 * a.norm(), "{a} vs {b}");
        }
        // Mean of the data is (4π/z)·mean(f).
        let mf = s.mean(&f).unwrap();
        let mg = s.mean(&g).unwrap();
        assert!(
            (mg - mf * 4.0 * PI / 0.5).norm() < 1e-6 * mg.norm(),
            "{mg} vs {mf}"
        );
    }
}
