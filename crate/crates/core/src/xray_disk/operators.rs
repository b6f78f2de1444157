use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{truncation_radius, AttenuationParam, OperatorResolution, ScalarField};
use crate::error::{bail, Result};
use crate::geometry::{DiskPoint, BOUNDARY_MARGIN};
use crate::numerics::{
    composite_gauss_legendre, ensure_finite, gauss_legendre, periodic_trapezoid,
};
use crate::spherical::RadialFunction;

/// Relative tail target for rays over fields of unbounded support.
const TAIL_EPS: f64 = 1e-10;
const RAY_ORDER: usize = 10;
const CHORD_ORDER: usize = 16;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Evaluates `f` at `(w + x)/(x̄ w + 1)`, the image of the origin-centred
/// point `w` under the translation taking 0 to `x`.
fn eval_transported(
    f: &dyn ScalarField,
    x: Complex64,
    w: Complex64,
    bound: f64,
) -> Result<Complex64> {
    let y = (w + x) / (x.conj() * w + 1.0);
    let v = if y.norm() >= 1.0 - BOUNDARY_MARGIN {
        match f.horizon_value() {
            Some(v) => v,
            None => bail!(
                Resolution,
                "ray reaches the representable horizon of the disk and the field has no value there; \
                 reduce the truncation radius"
            ),
        }
    } else {
        f.eval(&DiskPoint::new(y)?)?
    };
    if v.norm() > bound * (1.0 + 1e-9) {
        bail!(
            Precondition,
            "field value {v} exceeds its declared bound {bound}"
        );
    }
    Ok(v)
}

/// `∫_{S_x} ∫₀^R weight(t) f(γ_{x,v}(t)) dt dv` over a uniform fiber rule and
/// a composite Gauss–Legendre ray rule.
fn full_rays(
    f: &dyn ScalarField,
    x: &DiskPoint,
    weight: &dyn Fn(f64) -> Complex64,
    radius: f64,
    n_theta: usize,
    nodes: usize,
    order: usize,
) -> Result<Complex64> {
    let panels = nodes.div_ceil(order).max(1);
    let rule = composite_gauss_legendre(panels, order, 0.0, radius)?;
    let radial: Vec<(f64, Complex64)> = rule
        .iter()
        .map(|(t, w)| ((0.5 * t).tanh(), weight(t) * w))
        .collect();
    let fiber = periodic_trapezoid(n_theta, 0.0)?;
    let bound = f.bound();
    let xc = x.coord();
    let mut acc = zero();
    for (theta, wt) in fiber.iter() {
        let dir = Complex64::from_polar(1.0, theta);
        let mut ray = zero();
        for &(th, wr) in &radial {
            ray += eval_transported(f, xc, dir * th, bound)? * wr;
        }
        acc += ray * wt;
    }
    Ok(acc)
}

/// The parameter interval `{t ≥ 0 : d(0, γ(t)) ≤ ρ}` of the ray leaving a
/// point at distance `d` from 0 at angle `psi` from the direction to 0.
///
/// Solves `cosh d cosh t − sinh d cos ψ sinh t = cosh ρ` in `u = e^t`, written
/// without the cancellations that appear for large `d`.
fn chord(d: f64, rho: f64, psi: f64) -> Option<(f64, f64)> {
    let disc = rho.sinh().powi(2) - (d.sinh() * psi.sin()).powi(2);
    if disc <= 0.0 {
        return None;
    }
    let a_minus_b = (-d).exp() + 2.0 * d.sinh() * (0.5 * psi).sin().powi(2);
    let a_plus_b = d.cosh() + d.sinh() * psi.cos();
    let big = rho.cosh() + disc.sqrt();
    let t2 = (big / a_minus_b).ln();
    let t1 = (a_plus_b / big).ln().max(0.0);
    (t2 > t1).then_some((t1, t2))
}

/// Same integral as [`full_rays`] for a field supported in `d(0, ·) ≤ ρ`:
/// only the directions that meet the support (a cone when `x` lies outside
/// it) and only the chord inside it are integrated.
fn support_rays(
    f: &dyn ScalarField,
    x: &DiskPoint,
    weight: &dyn Fn(f64) -> Complex64,
    rho: f64,
    res: &OperatorResolution,
) -> Result<Complex64> {
    let d = x.radius();
    let toward_origin = if x.coord().norm() > 0.0 {
        (-x.coord()).arg()
    } else {
        0.0
    };
    let fiber: Vec<(f64, f64)> = if d > rho {
        let alpha = (rho.sinh() / d.sinh()).asin();
        gauss_legendre(res.n_theta.max(2), -alpha, alpha)?
            .iter()
            .collect()
    } else {
        periodic_trapezoid(res.n_theta, 0.0)?.iter().collect()
    };
    let bound = f.bound();
    let xc = x.coord();
    // A fixed node count per chord keeps the rule, and hence the result,
    // smooth in x; the data fields built from it are differentiated later.
    let panels = res.n_r.div_ceil(CHORD_ORDER);
    let mut acc = zero();
    for (psi, wt) in fiber {
        let Some((t1, t2)) = chord(d, rho, psi) else {
            continue;
        };
        let rule = composite_gauss_legendre(panels, CHORD_ORDER, t1, t2)?;
        let dir = Complex64::from_polar(1.0, toward_origin + psi);
        let mut ray = zero();
        for (t, wr) in rule.iter() {
            ray += eval_transported(f, xc, dir * (0.5 * t).tanh(), bound)? * weight(t) * wr;
        }
        acc += ray * wt;
    }
    Ok(acc)
}

/// `Π₀^(z) f(x) = 2 ∫_{S_x} ∫₀^∞ e^{−zt} f(γ_{x,v}(t)) dt dv`, `Re z > 0`.
///
/// Fields of compact support are integrated over the chords through their
/// support. Otherwise rays are truncated at `res.radius` or, by default, at
/// the radius where the tail bound drops below `1e−10·C`; nodes beyond the
/// representable horizon use [`ScalarField::horizon_value`].
pub fn normal_op_attenuated(
    f: &dyn ScalarField,
    p: &AttenuationParam,
    x: &DiskPoint,
    res: &OperatorResolution,
) -> Result<Complex64> {
    res.validate()?;
    p.require_positive()?;
    let c = f.bound();
    if !c.is_finite() {
        bail!(Precondition, "normal operator needs a bounded field");
    }
    let rho = f.support_radius();
    if c == 0.0 || rho == 0.0 {
        return Ok(zero());
    }
    let z = p.z();
    let weight = move |t: f64| (-z * t).exp();
    let sum = if rho.is_finite() {
        support_rays(f, x, &weight, rho, res)?
    } else {
        let radius = match res.radius {
            Some(r) => r,
            None => truncation_radius(z, c, TAIL_EPS * c)?,
        };
        full_rays(f, x, &weight, radius, res.n_theta, res.n_r, RAY_ORDER)?
    };
    ensure_finite(sum * 2.0, "normal operator")
}

/// `(f × K)(x) = ∫₀^{2π} ∫₀^R f(exp_x(r, θ)) K(r) sinh r dr dθ` in geodesic
/// polar coordinates about `x`, uniform in `θ`.
///
/// `R` is `res.radius` if given, else the extent of the support of `f` seen
/// from `x`, else of the kernel, else the tail radius of a kernel with a
/// known decay rate.
pub fn convolve_radial(
    f: &dyn ScalarField,
    kernel: &dyn RadialFunction,
    x: &DiskPoint,
    res: &OperatorResolution,
) -> Result<Complex64> {
    res.validate()?;
    let near = kernel.eval_times_sinh(1e-9)?;
    if !(near.re.is_finite() && near.im.is_finite()) || near.norm() > 1e6 {
        bail!(Precondition, "kernel·sinh r is unbounded near r = 0");
    }
    let c = f.bound();
    if !c.is_finite() {
        bail!(Precondition, "convolution needs a bounded field");
    }
    if c == 0.0 || f.support_radius() == 0.0 {
        return Ok(zero());
    }
    let radius = if let Some(r) = res.radius {
        r
    } else if f.support_radius().is_finite() {
        x.radius() + f.support_radius()
    } else if kernel.support_radius().is_finite() {
        kernel.support_radius()
    } else if let Some(rate) = kernel.decay_rate() {
        truncation_radius(Complex64::new(rate, 0.0), c, TAIL_EPS * c)?
    } else {
        bail!(
            Precondition,
            "cannot choose a truncation radius; set one in the resolution"
        );
    };
    let weight = |t: f64| {
        kernel
            .eval_times_sinh(t)
            .unwrap_or(Complex64::new(f64::NAN, 0.0))
    };
    let sum = full_rays(f, x, &weight, radius, res.n_theta, res.n_r, CHORD_ORDER)?;
    ensure_finite(sum, "convolution")
}

/// `S_K^(z) f = ½ Π₀^(z+√−K) f`; `Re z ≥ 0`.
pub fn s_op(
    f: &dyn ScalarField,
    p: &AttenuationParam,
    x: &DiskPoint,
    res: &OperatorResolution,
) -> Result<Complex64> {
    let shifted = AttenuationParam::new(p.z() + p.sqrt_neg_k(), p.curvature())?;
    Ok(normal_op_attenuated(f, &shifted, x, res)? * 0.5)
}

fn effective_step(x: &DiskPoint, h: f64) -> Result<f64> {
    if !(1e-4..=1e-2).contains(&h) {
        bail!(
            InvalidArgument,
            "finite-difference step must lie in [1e-4, 1e-2], got {h}"
        );
    }
    let room = 1.0 - x.coord().norm();
    if room > 10.0 * h {
        return Ok(h);
    }
    let shrunk = room / 10.0;
    if shrunk < 1e-4 {
        bail!(
            Resolution,
            "point {} is too close to the boundary for a stable stencil",
            x.coord()
        );
    }
    Ok(shrunk)
}

/// Disk Laplace–Beltrami operator `((1−|x|²)²/4)·Δ_euclid f` with the
/// five-point stencil. The step shrinks to `(1−|x|)/10` near the boundary
/// circle; below `1e−4` that is a resolution error.
pub fn laplace_beltrami(f: &dyn ScalarField, x: &DiskPoint, h: f64) -> Result<Complex64> {
    let h = effective_step(x, h)?;
    let c = x.coord();
    let at = |dz: Complex64| -> Result<Complex64> { f.eval(&DiskPoint::new(c + dz)?) };
    let centre = f.eval(x)?;
    let sum = at(Complex64::new(h, 0.0))?
        + at(Complex64::new(-h, 0.0))?
        + at(Complex64::new(0.0, h))?
        + at(Complex64::new(0.0, -h))?
        - centre * 4.0;
    let factor = (1.0 - c.norm_sqr()).powi(2) / 4.0;
    ensure_finite(sum * (factor / (h * h)), "Laplacian")
}

/// Radial form `F'' + coth r · F'` of the Laplacian (five-point central
/// differences, `F` extended evenly); at `r = 0` it is `2F''(0)`.
pub fn radial_laplacian(f: &dyn Fn(f64) -> Result<Complex64>, r: f64, h: f64) -> Result<Complex64> {
    if !(r >= 0.0 && r.is_finite()) || !(h > 0.0) {
        bail!(InvalidArgument, "radial Laplacian needs r ≥ 0 and h > 0");
    }
    let centre = f(r)?;
    let (p1, p2) = (f(r + h)?, f(r + 2.0 * h)?);
    let (m1, m2) = (f((r - h).abs())?, f((r - 2.0 * h).abs())?);
    let second = ((p1 + m1) * 16.0 - (p2 + m2) - centre * 30.0) / (12.0 * h * h);
    if r == 0.0 {
        return Ok(second * 2.0);
    }
    let first = ((p1 - m1) * 8.0 - (p2 - m2)) / (12.0 * h);
    Ok(second + first / r.tanh())
}

/// `L_K^(z) f = Δf − z(z+√−K) f`.
pub fn l_op(f: &dyn ScalarField, p: &AttenuationParam, x: &DiskPoint, h: f64) -> Result<Complex64> {
    Ok(laplace_beltrami(f, x, h)? - p.shift() * f.eval(x)?)
}

/// The field `y ↦ S_K^(z) g(y)`, each value computed by ray integration.
pub struct SmoothedField<F> {
    data: F,
    param: AttenuationParam,
    res: OperatorResolution,
}

impl<F: ScalarField> SmoothedField<F> {
    pub fn new(data: F, param: AttenuationParam, res: OperatorResolution) -> Self {
        Self { data, param, res }
    }
}

impl<F: ScalarField> ScalarField for SmoothedField<F> {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        s_op(&self.data, &self.param, p, &self.res)
    }
    fn bound(&self) -> f64 {
        TAU / (self.param.z().re + self.param.sqrt_neg_k()) * self.data.bound()
    }
    fn horizon_value(&self) -> Option<Complex64> {
        let shifted = self.param.z() + self.param.sqrt_neg_k();
        self.data.horizon_value().map(|c| c * TAU / shifted)
    }
}

/// `−(8π²)⁻¹ (Δ − z(z+1)) S^(z) g (x)` on the unit-curvature disk. When
/// `g = Π₀^(z) f` this recovers `f(x)`.
pub fn reconstruct_disk(
    g: &dyn ScalarField,
    p: &AttenuationParam,
    x: &DiskPoint,
    res: &OperatorResolution,
) -> Result<Complex64> {
    if p.curvature() != -1.0 {
        bail!(
            InvalidArgument,
            "disk reconstruction is for curvature −1, got {}",
            p.curvature()
        );
    }
    p.require_positive()?;
    res.validate()?;
    let smoothed = SmoothedField::new(g, *p, *res);
    let l = l_op(&smoothed, p, x, res.fd_step)?;
    Ok(l / (-8.0 * PI * PI))
}
