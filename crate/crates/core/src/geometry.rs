//! The Poincaré disk `|w| < 1` with metric `4|dw|²/(1−|w|²)²` (curvature −1),
//! its SU(1,1) isometries and unit-speed geodesics.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{bail, Result};

/// Points closer than this to the unit circle are not representable.
pub const BOUNDARY_MARGIN: f64 = 1e-12;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    coord: Complex64,
}

impl DiskPoint {
    pub fn new(coord: Complex64) -> Result<Self> {
        if !(coord.re.is_finite() && coord.im.is_finite()) {
            bail!(InvalidArgument, "disk coordinate is not finite: {coord}");
        }
        if coord.norm() >= 1.0 - BOUNDARY_MARGIN {
            bail!(Domain, "point {coord} is not inside the open unit disk");
        }
        Ok(Self { coord })
    }

    pub fn from_xy(x: f64, y: f64) -> Result<Self> {
        Self::new(Complex64::new(x, y))
    }

    /// The point at hyperbolic distance `r` from 0 in direction `angle`.
    pub fn from_polar(r: f64, angle: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            bail!(
                InvalidArgument,
                "hyperbolic radius must be finite and ≥ 0, got {r}"
            );
        }
        Self::new(Complex64::from_polar((0.5 * r).tanh(), angle))
    }

    pub const fn origin() -> Self {
        Self {
            coord: Complex64 { re: 0.0, im: 0.0 },
        }
    }

    pub fn coord(&self) -> Complex64 {
        self.coord
    }

    /// Hyperbolic distance to the origin.
    pub fn radius(&self) -> f64 {
        2.0 * self.coord.norm().atanh()
    }

    /// Conformal factor `2/(1−|w|²)` of the metric at this point.
    pub fn conformal_factor(&self) -> f64 {
        2.0 / (1.0 - self.coord.norm_sqr())
    }
}

/// An element of SU(1,1), `w ↦ (a w + b)/(b̄ w + ā)` with `|a|² − |b|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryElement {
    a: Complex64,
    b: Complex64,
}

impl IsometryElement {
    /// Accepts `(a, b)` whose determinant is 1 to within `1e−10` (relative to
    /// `|a|²` for long words).
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if !det.is_finite() || (det - 1.0).abs() > 1e-10 * a.norm_sqr().max(1.0) {
            bail!(InvalidArgument, "|a|² − |b|² = {det}, expected 1");
        }
        Ok(Self { a, b })
    }

    /// Divides `(a, b)` by `sqrt(|a|² − |b|²)`.
    pub fn normalized(a: Complex64, b: Complex64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if !(det.is_finite() && det > 0.0) {
            bail!(InvalidArgument, "|a|² − |b|² = {det} is not positive");
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// Rotation by `alpha` about the origin.
    pub fn rotation(alpha: f64) -> Self {
        Self {
            a: Complex64::from_polar(1.0, 0.5 * alpha),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// Hyperbolic translation by distance `s` along the diameter at angle
    /// `direction`; it maps 0 to `tanh(s/2) e^{i·direction}`.
    pub fn translation(direction: f64, s: f64) -> Self {
        Self {
            a: Complex64::new((0.5 * s).cosh(), 0.0),
            b: Complex64::from_polar((0.5 * s).sinh(), direction),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn determinant(&self) -> f64 {
        self.a.norm_sqr() - self.b.norm_sqr()
    }

    /// Trace of the matrix `[[a, b], [b̄, ā]]`.
    pub fn trace(&self) -> f64 {
        2.0 * self.a.re
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// `self ∘ other` (apply `other` first), renormalized.
    pub fn compose(&self, other: &Self) -> Self {
        let a = self.a * other.a + self.b * other.b.conj();
        let b = self.a * other.b + self.b * other.a.conj();
        let s = (a.norm_sqr() - b.norm_sqr()).sqrt();
        Self { a: a / s, b: b / s }
    }

    /// Distance between the matrices `±self` and `±other` (entrywise max).
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let plus = (self.a - other.a).norm().max((self.b - other.b).norm());
        let minus = (self.a + other.a).norm().max((self.b + other.b).norm());
        plus.min(minus)
    }

    pub fn apply(&self, p: &DiskPoint) -> Result<DiskPoint> {
        apply_isometry(self, p)
    }

    /// Derivative of the Möbius map at `p`; its argument is the rotation of
    /// tangent directions.
    pub fn derivative(&self, p: &DiskPoint) -> Complex64 {
        let den = self.b.conj() * p.coord + self.a.conj();
        (den * den).inv()
    }
}

/// `g·p = (a p + b)/(b̄ p + ā)`.
pub fn apply_isometry(g: &IsometryElement, p: &DiskPoint) -> Result<DiskPoint> {
    let den = g.b.conj() * p.coord + g.a.conj();
    if den.norm() < 1e-300 {
        bail!(
            Numeric,
            "degenerate Möbius denominator; element invariant violated"
        );
    }
    DiskPoint::new((g.a * p.coord + g.b) / den)
}

/// Hyperbolic distance, `arccosh(1 + 2|p−q|²/((1−|p|²)(1−|q|²)))`, evaluated
/// in the cancellation-free form `2 asinh(|p−q| / sqrt((1−|p|²)(1−|q|²)))`.
pub fn distance(p: &DiskPoint, q: &DiskPoint) -> f64 {
    let num = (p.coord - q.coord).norm();
    let den = ((1.0 - p.coord.norm_sqr()) * (1.0 - q.coord.norm_sqr())).sqrt();
    2.0 * (num / den).asinh()
}

/// The isometry `w ↦ (w − p)/(1 − p̄ w)` sending `p` to 0.
pub fn translate_to_origin(p: &DiskPoint) -> IsometryElement {
    let s = (1.0 - p.coord.norm_sqr()).sqrt();
    IsometryElement {
        a: Complex64::new(1.0 / s, 0.0),
        b: -p.coord / s,
    }
}

/// A unit tangent vector: base point and Euclidean direction angle, which is
/// also the Riemannian direction because the metric is conformal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitTangent {
    base: DiskPoint,
    angle: f64,
}

impl UnitTangent {
    pub fn new(base: DiskPoint, angle: f64) -> Self {
        Self {
            base,
            angle: angle.rem_euclid(TAU),
        }
    }

    pub fn base(&self) -> DiskPoint {
        self.base
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Geodesic flow for time `t`: the point and velocity direction at `t`.
    pub fn flow(&self, t: f64) -> Result<UnitTangent> {
        let w = origin_geodesic(self.angle, t)?;
        let back = translate_to_origin(&self.base).inverse();
        let point = back.apply(&w)?;
        let dir = back.derivative(&w) * Complex64::from_polar(1.0, self.angle);
        Ok(UnitTangent::new(point, dir.arg()))
    }
}

fn origin_geodesic(angle: f64, t: f64) -> Result<DiskPoint> {
    if !t.is_finite() {
        bail!(InvalidArgument, "geodesic time is not finite");
    }
    DiskPoint::new(Complex64::from_polar((0.5 * t).tanh(), angle))
}

/// `γ_{x,v}(t)`: the unit-speed geodesic through the base point of `x` in the
/// direction of `x`, computed as the origin diameter `tanh(t/2)e^{iθ}`
/// transported back by the translation taking 0 to the base point.
///
/// Fails with a domain error once the point comes within
/// [`BOUNDARY_MARGIN`] of the circle (about distance 28 from the origin).
pub fn geodesic_point(x: &UnitTangent, t: f64) -> Result<DiskPoint> {
    let w = origin_geodesic(x.angle, t)?;
    let p = x.base.coord;
    // Inverse of translate_to_origin(p): w ↦ (w + p)/(p̄ w + 1).
    let num = w.coord + p;
    let den = p.conj() * w.coord + 1.0;
    DiskPoint::new(num / den)
}

/// Equally spaced directions in the fiber over `x`, each with weight `2π/n`.
pub fn fiber_nodes(x: &DiskPoint, n: usize) -> Result<Vec<(UnitTangent, f64)>> {
    if n < 4 {
        bail!(
            InvalidArgument,
            "fiber quadrature needs at least 4 directions, got {n}"
        );
    }
    let w = TAU / n as f64;
    Ok((0..n)
        .map(|j| (UnitTangent::new(*x, w * j as f64), w))
        .collect())
}
