//! Operators on the quotient `Γ\D`, evaluated on the disk.
//!
//! Lifting `Π₀^(z)` to the disk gives `2∫∫ e^{−zt} π*f(γ(t)) dt dv`, or in
//! geodesic polar form the convolution of `π*f` with `2e^{−zr}/sinh r`. The
//! rays are long (about `1/Re z` times a logarithm) and, on a quotient,
//! wrap many times around the surface. Three pieces are computed separately:
//!
//! - the mean `f̄`, whose image is exactly `4πf̄/z`;
//! - near rays `t ≤ 1.5` of `f − f̄`, blended out by a smooth cutoff;
//! - the rest of the convolution, as a sum over the lattice copies `γF` of
//!   the fundamental domain of a fixed product rule on `F`, blended out
//!   smoothly between the orbit radii `T_in < T_out`.
//!
//! For mean-zero data the neglected tail `d > T_out` averages out over the
//! equidistributed lattice; what remains decays like `e^{−(Re z+½)T}`
//! times the smallness of the cutoff's Fourier transform at the surface's
//! spectral parameters.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::domain::{surface_mean, DomainQuadrature};
use super::field::SurfaceField;
use super::group::{octagon_group, reduce_to_fundamental, FuchsianGroup, Orbit};
use super::{rescale_to_unit_curvature, CurvatureScaling};
use crate::error::{bail, Result};
use crate::geometry::{distance, DiskPoint, IsometryElement};
use crate::numerics::{composite_gauss_legendre, ensure_finite, periodic_trapezoid, smooth_step};
use crate::xray_disk::{AttenuationParam, OperatorResolution};

const NEAR_ORDER: usize = 16;

/// Discretization of the surface operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceResolution {
    /// Fiber directions and finite-difference step (`n_theta`, `fd_step`);
    /// the full record also drives the disk tables behind generated data.
    pub op: OperatorResolution,
    /// Gauss nodes along each near ray.
    pub near_nodes: usize,
    /// The near part is blended into the lattice sum over `[a, b]`.
    pub near_cutoff: (f64, f64),
    /// The lattice sum of the operators is blended out over `[T_in, T_out]`.
    pub orbit_cutoff: (f64, f64),
    /// The same for the lattice sum behind generated data (the widest window).
    pub data_cutoff: (f64, f64),
    /// Angular Gauss nodes per octagon triangle.
    pub domain_angular: usize,
    /// Radial Gauss panels (order 16) per ray of an octagon triangle.
    pub domain_radial_panels: usize,
    /// Panel width of radial data tables near the support.
    pub table_panel: f64,
}

impl Default for SurfaceResolution {
    fn default() -> Self {
        Self {
            op: OperatorResolution::default(),
            near_nodes: 96,
            near_cutoff: (0.75, 1.5),
            orbit_cutoff: (5.0, 7.0),
            data_cutoff: (5.0, 7.0),
            domain_angular: 16,
            domain_radial_panels: 6,
            table_panel: 0.125,
        }
    }
}

impl From<OperatorResolution> for SurfaceResolution {
    fn from(op: OperatorResolution) -> Self {
        Self {
            op,
            ..Default::default()
        }
    }
}

impl SurfaceResolution {
    pub fn validate(&self) -> Result<()> {
        self.op.validate()?;
        let (a, b) = self.near_cutoff;
        let (t0, t1) = self.orbit_cutoff;
        if !(0.0 < a && a < b && b <= t0 && t0 < t1) {
            bail!(
                InvalidArgument,
                "cutoffs must satisfy 0 < a < b ≤ T_in < T_out, got ({a}, {b}), ({t0}, {t1})"
            );
        }
        let (d0, d1) = self.data_cutoff;
        if !(0.0 < d0 && d0 < d1) {
            bail!(
                InvalidArgument,
                "data cutoff must satisfy 0 < T_in < T_out, got ({d0}, {d1})"
            );
        }
        if t1.max(d1) > 10.0 {
            bail!(
                InvalidArgument,
                "lattice cutoffs beyond 10 exceed the enumerable range"
            );
        }
        if self.near_nodes < NEAR_ORDER {
            bail!(InvalidArgument, "need at least {NEAR_ORDER} near-ray nodes");
        }
        if !(self.table_panel > 0.0) {
            bail!(InvalidArgument, "table panel width must be positive");
        }
        Ok(())
    }
}

/// The octagon surface with everything the operators reuse: the group,
/// the orbit of 0 out to the reach of the lattice sums and the domain rule.
#[derive(Debug, Clone)]
pub struct Surface {
    group: FuchsianGroup,
    orbit: Arc<Orbit>,
    domain: DomainQuadrature,
    node_coords: Vec<Complex64>,
    node_room: Vec<f64>,
    res: SurfaceResolution,
}

impl Surface {
    pub fn new(group: FuchsianGroup, res: SurfaceResolution) -> Result<Self> {
        res.validate()?;
        let reach = res.orbit_cutoff.1.max(res.data_cutoff.1) + 2.0 * group.vertex_radius() + 0.5;
        let orbit = Arc::new(Orbit::enumerate(&group, reach)?);
        let domain =
            DomainQuadrature::octagon(&group, res.domain_angular, res.domain_radial_panels)?;
        let node_coords = domain.nodes().iter().map(DiskPoint::coord).collect();
        let node_room = domain
            .nodes()
            .iter()
            .map(|p| 1.0 - p.coord().norm_sqr())
            .collect();
        Ok(Self {
            group,
            orbit,
            domain,
            node_coords,
            node_room,
            res,
        })
    }

    pub fn octagon(res: SurfaceResolution) -> Result<Self> {
        Self::new(octagon_group()?, res)
    }

    pub fn group(&self) -> &FuchsianGroup {
        &self.group
    }

    pub fn orbit(&self) -> &Orbit {
        &self.orbit
    }

    pub(crate) fn orbit_arc(&self) -> Arc<Orbit> {
        Arc::clone(&self.orbit)
    }

    pub fn domain(&self) -> &DomainQuadrature {
        &self.domain
    }

    pub fn resolution(&self) -> &SurfaceResolution {
        &self.res
    }

    pub fn reduce(&self, p: &DiskPoint) -> Result<(DiskPoint, IsometryElement)> {
        reduce_to_fundamental(p, &self.group)
    }

    pub fn mean(&self, f: &SurfaceField) -> Result<Complex64> {
        surface_mean(f, &self.domain)
    }
}

/// A field split into its mean and the weighted samples of `f − f̄` on the
/// domain rule.
struct Prepared {
    mean: Complex64,
    weighted: Vec<Complex64>,
}

fn prepare(f: &SurfaceField, surface: &Surface) -> Result<Prepared> {
    let mean = surface.mean(f)?;
    if f.as_constant().is_some() {
        return Ok(Prepared {
            mean,
            weighted: Vec::new(),
        });
    }
    let weighted = surface
        .domain
        .nodes()
        .iter()
        .zip(surface.domain.weights())
        .map(|(p, w)| Ok((f.eval_on_domain(p)? - mean) * *w))
        .collect::<Result<Vec<_>>>()?;
    Ok(Prepared { mean, weighted })
}

/// Unit-curvature `Π₀^(z) f(x)` at the lift `x`, `Re z > 0`.
fn apply_unit(
    f: &SurfaceField,
    prep: &Prepared,
    z: Complex64,
    x: &DiskPoint,
    surface: &Surface,
) -> Result<Complex64> {
    let mean_part = prep.mean * (4.0 * PI) / z;
    if prep.weighted.is_empty() {
        return Ok(mean_part);
    }
    let near = near_part(f, prep.mean, z, x, surface)?;
    let far = far_part(&prep.weighted, z, x, surface)?;
    ensure_finite(mean_part + near + far, "surface operator")
}

fn near_part(
    f: &SurfaceField,
    mean: Complex64,
    z: Complex64,
    x: &DiskPoint,
    surface: &Surface,
) -> Result<Complex64> {
    let res = &surface.res;
    let (a, b) = res.near_cutoff;
    let panels = res.near_nodes.div_ceil(NEAR_ORDER);
    let radial: Vec<(f64, Complex64)> = composite_gauss_legendre(panels, NEAR_ORDER, 0.0, b)?
        .iter()
        .map(|(t, w)| {
            (
                (0.5 * t).tanh(),
                (-z * t).exp() * (2.0 * w * (1.0 - smooth_step(t, a, b))),
            )
        })
        .collect();
    let xc = x.coord();
    let mut acc = Complex64::new(0.0, 0.0);
    for (theta, wt) in periodic_trapezoid(res.op.n_theta, 0.0)?.iter() {
        let dir = Complex64::from_polar(1.0, theta);
        let mut ray = Complex64::new(0.0, 0.0);
        for &(th, wr) in &radial {
            let w = dir * th;
            let y = DiskPoint::new((w + xc) / (xc.conj() * w + 1.0))?;
            let (yr, _) = surface.reduce(&y)?;
            ray += (f.eval_on_domain(&yr)? - mean) * wr;
        }
        acc += ray * wt;
    }
    Ok(acc)
}

/// `Σ_γ Σ_k w_k h(u_k) K(d(x, γu_k))` with `K = 2e^{−zd}/sinh d` blended
/// in over the near cutoff and out over the orbit cutoff.
///
/// The copies `γF` that can meet the ball `d(x, ·) < T_out` are found from
/// the reduced point `x' = g₀x` as `γ = g₀⁻¹η` with `d(x', η0) ≤ T_out + R_v`;
/// all distances are then measured from `x` itself.
fn far_part(
    weighted: &[Complex64],
    z: Complex64,
    x: &DiskPoint,
    surface: &Surface,
) -> Result<Complex64> {
    let (a, b) = surface.res.near_cutoff;
    let (t_in, t_out) = surface.res.orbit_cutoff;
    let (x_red, g0) = surface.reduce(x)?;
    let reach = t_out + surface.group.vertex_radius();
    let q_min = (0.5 * a).sinh().powi(2);
    let q_max = (0.5 * t_out).sinh().powi(2);
    let xc = x.coord();
    let mut acc = Complex64::new(0.0, 0.0);
    for e in surface.orbit.within(reach + x_red.radius()) {
        if distance(&x_red, &e.image) > reach {
            continue;
        }
        // x seen from the copy γF, γ = g₀⁻¹η: γ⁻¹x = η⁻¹g₀x.
        let m = e.element.inverse().compose(&g0);
        let xl = (m.a() * xc + m.b()) / (m.b().conj() * xc + m.a().conj());
        let room = 1.0 - xl.norm_sqr();
        if !(room > 0.0) {
            bail!(
                Numeric,
                "lattice copy of the evaluation point left the disk"
            );
        }
        for ((u, ru), h) in surface
            .node_coords
            .iter()
            .zip(&surface.node_room)
            .zip(weighted)
        {
            let q = (xl - u).norm_sqr() / (room * ru);
            if q <= q_min || q >= q_max {
                continue;
            }
            let sh = q.sqrt();
            let d = 2.0 * sh.asinh();
            let sinh_d = 2.0 * sh * (1.0 + q).sqrt();
            let mut cut = 1.0 - smooth_step(d, t_in, t_out);
            if d < b {
                cut *= smooth_step(d, a, b);
            }
            acc += *h * ((-z * d).exp() * (2.0 * cut / sinh_d));
        }
    }
    Ok(acc)
}

/// `Π₀^(z) f` at the point `q` of the surface (reduced into the domain
/// first), for a surface of curvature `p.curvature()`.
pub fn surface_normal_op(
    f: &SurfaceField,
    p: &AttenuationParam,
    q: &DiskPoint,
    surface: &Surface,
) -> Result<Complex64> {
    let (q_red, _) = surface.reduce(q)?;
    surface_normal_op_at_lift(f, p, &q_red, surface)
}

/// `Π₀^(z)(π*f)` evaluated at an arbitrary lift; equal, on the quotient,
/// for all lifts of one point.
pub fn surface_normal_op_at_lift(
    f: &SurfaceField,
    p: &AttenuationParam,
    lift: &DiskPoint,
    surface: &Surface,
) -> Result<Complex64> {
    p.require_positive()?;
    let (unit, scaling) = rescale_to_unit_curvature(p)?;
    let prep = prepare(f, surface)?;
    Ok(apply_unit(f, &prep, unit.z(), lift, surface)? * scaling.pi_prefactor())
}

/// `S_K^(z) g = ½ Π₀^(z+√−K) g` on the surface; `Re z ≥ 0`.
pub fn surface_s_op(
    g: &SurfaceField,
    p: &AttenuationParam,
    x: &DiskPoint,
    surface: &Surface,
) -> Result<Complex64> {
    let (unit, scaling) = rescale_to_unit_curvature(p)?;
    let prep = prepare(g, surface)?;
    Ok(apply_unit(g, &prep, unit.z() + 1.0, x, surface)? * (0.5 * scaling.s_prefactor()))
}

/// `−(8π²)⁻¹ L_K^(z) S_K^(z) g` at `q`; when `g = Π₀^(z) f` this is `f(q)`.
pub fn reconstruct_surface(
    g: &SurfaceField,
    p: &AttenuationParam,
    q: &DiskPoint,
    surface: &Surface,
) -> Result<Complex64> {
    Ok(reconstruct_surface_many(g, p, std::slice::from_ref(q), surface)?[0])
}

/// [`reconstruct_surface`] at several points, sharing the preparation of
/// the data.
pub fn reconstruct_surface_many(
    g: &SurfaceField,
    p: &AttenuationParam,
    points: &[DiskPoint],
    surface: &Surface,
) -> Result<Vec<Complex64>> {
    p.require_positive()?;
    let (unit, scaling) = rescale_to_unit_curvature(p)?;
    let prep = prepare(g, surface)?;
    let zs = unit.z() + 1.0;
    let h = surface.res.op.fd_step;
    points
        .iter()
        .map(|q| {
            let (q, _) = surface.reduce(q)?;
            let c = q.coord();
            let s = |dz: Complex64| -> Result<Complex64> {
                Ok(apply_unit(g, &prep, zs, &DiskPoint::new(c + dz)?, surface)? * 0.5)
            };
            let centre = s(Complex64::new(0.0, 0.0))?;
            let sum = s(Complex64::new(h, 0.0))?
                + s(Complex64::new(-h, 0.0))?
                + s(Complex64::new(0.0, h))?
                + s(Complex64::new(0.0, -h))?
                - centre * 4.0;
            let lap = sum * ((1.0 - c.norm_sqr()).powi(2) / (4.0 * h * h));
            let l_unit = lap - unit.shift() * centre;
            let value = l_unit * (scaling.l_prefactor() * scaling.s_prefactor()) / (-8.0 * PI * PI);
            ensure_finite(value, "surface reconstruction")
        })
        .collect()
}

/// Shared by the data generator: the scaling and unit-curvature parameter.
pub(crate) fn unit_param(p: &AttenuationParam) -> Result<(AttenuationParam, CurvatureScaling)> {
    p.require_positive()?;
    rescale_to_unit_curvature(p)
}
