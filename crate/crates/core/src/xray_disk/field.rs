use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::geometry::{distance, DiskPoint};
use crate::spherical::RadialFunction;

/// A complex-valued function on the disk with a declared sup bound.
pub trait ScalarField: Send + Sync {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64>;

    /// `C` with `|eval| ≤ C` everywhere.
    fn bound(&self) -> f64;

    /// Hyperbolic radius about 0 outside which the field vanishes, or `+∞`.
    fn support_radius(&self) -> f64 {
        f64::INFINITY
    }

    /// The value taken at points too close to the boundary circle to be
    /// represented in floating point, if the field has one (0 for compact
    /// support, the constant for constants). Ray integrals that reach such
    /// points fail with a resolution error when this is `None`.
    fn horizon_value(&self) -> Option<Complex64> {
        self.support_radius()
            .is_finite()
            .then(|| Complex64::new(0.0, 0.0))
    }
}

impl<T: ScalarField + ?Sized> ScalarField for &T {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        (**self).eval(p)
    }
    fn bound(&self) -> f64 {
        (**self).bound()
    }
    fn support_radius(&self) -> f64 {
        (**self).support_radius()
    }
    fn horizon_value(&self) -> Option<Complex64> {
        (**self).horizon_value()
    }
}

impl<T: ScalarField + ?Sized> ScalarField for Arc<T> {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        (**self).eval(p)
    }
    fn bound(&self) -> f64 {
        (**self).bound()
    }
    fn support_radius(&self) -> f64 {
        (**self).support_radius()
    }
    fn horizon_value(&self) -> Option<Complex64> {
        (**self).horizon_value()
    }
}

impl<T: ScalarField + ?Sized> ScalarField for Box<T> {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        (**self).eval(p)
    }
    fn bound(&self) -> f64 {
        (**self).bound()
    }
    fn support_radius(&self) -> f64 {
        (**self).support_radius()
    }
    fn horizon_value(&self) -> Option<Complex64> {
        (**self).horizon_value()
    }
}

/// `f ≡ c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantField(pub Complex64);

impl ConstantField {
    pub fn real(c: f64) -> Self {
        Self(Complex64::new(c, 0.0))
    }
}

impl ScalarField for ConstantField {
    fn eval(&self, _: &DiskPoint) -> Result<Complex64> {
        Ok(self.0)
    }
    fn bound(&self) -> f64 {
        self.0.norm()
    }
    fn support_radius(&self) -> f64 {
        if self.0 == Complex64::new(0.0, 0.0) {
            0.0
        } else {
            f64::INFINITY
        }
    }
    fn horizon_value(&self) -> Option<Complex64> {
        Some(self.0)
    }
}

/// A field given by a closure.
pub struct FnField<F> {
    f: F,
    bound: f64,
    support: f64,
    horizon: Option<Complex64>,
}

impl<F> FnField<F>
where
    F: Fn(&DiskPoint) -> Complex64 + Send + Sync,
{
    pub fn new(f: F, bound: f64) -> Result<Self> {
        if !(bound >= 0.0) {
            bail!(InvalidArgument, "field bound must be ≥ 0, got {bound}");
        }
        Ok(Self {
            f,
            bound,
            support: f64::INFINITY,
            horizon: None,
        })
    }

    /// Declares that the field vanishes outside `d(0, ·) ≤ radius`.
    pub fn with_support(mut self, radius: f64) -> Self {
        self.support = radius;
        self.horizon = Some(Complex64::new(0.0, 0.0));
        self
    }

    pub fn with_horizon_value(mut self, value: Complex64) -> Self {
        self.horizon = Some(value);
        self
    }
}

impl<F> ScalarField for FnField<F>
where
    F: Fn(&DiskPoint) -> Complex64 + Send + Sync,
{
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        if p.radius() > self.support {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok((self.f)(p))
    }
    fn bound(&self) -> f64 {
        self.bound
    }
    fn support_radius(&self) -> f64 {
        self.support
    }
    fn horizon_value(&self) -> Option<Complex64> {
        self.horizon
    }
}

/// `exp(1 − 1/(1 − (r/ρ)²))` for `r < ρ`, else 0; equal to 1 at `r = 0`.
pub fn bump_profile(r: f64, radius: f64) -> f64 {
    let s = r / radius;
    if s >= 1.0 {
        return 0.0;
    }
    (1.0 - 1.0 / (1.0 - s * s)).exp()
}

/// `amplitude · bump_profile(d(center, ·), radius)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub center: DiskPoint,
    pub radius: f64,
    pub amplitude: Complex64,
}

impl Bump {
    pub fn new(center: DiskPoint, radius: f64, amplitude: Complex64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            bail!(
                InvalidArgument,
                "bump radius must be positive, got {radius}"
            );
        }
        Ok(Self {
            center,
            radius,
            amplitude,
        })
    }

    /// Unit-height bump centred at the origin.
    pub fn centered(radius: f64) -> Result<Self> {
        Self::new(DiskPoint::origin(), radius, Complex64::new(1.0, 0.0))
    }
}

impl ScalarField for Bump {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        Ok(self.amplitude * bump_profile(distance(&self.center, p), self.radius))
    }
    fn bound(&self) -> f64 {
        self.amplitude.norm()
    }
    fn support_radius(&self) -> f64 {
        self.center.radius() + self.radius
    }
}

impl RadialFunction for Bump {
    /// Profile as a function of the distance to the bump centre.
    fn eval(&self, r: f64) -> Result<Complex64> {
        if r < 0.0 || r.is_nan() {
            bail!(InvalidArgument, "radius must be ≥ 0, got {r}");
        }
        Ok(self.amplitude * bump_profile(r, self.radius))
    }
    fn support_radius(&self) -> f64 {
        self.radius
    }
}

/// A radial field `y ↦ F(d(0, y))`.
pub struct RadialField<R> {
    profile: R,
    bound: f64,
}

impl<R: RadialFunction> RadialField<R> {
    pub fn new(profile: R, bound: f64) -> Result<Self> {
        if !(bound >= 0.0) {
            bail!(InvalidArgument, "field bound must be ≥ 0, got {bound}");
        }
        Ok(Self { profile, bound })
    }

    pub fn profile(&self) -> &R {
        &self.profile
    }

    pub fn into_profile(self) -> R {
        self.profile
    }
}

impl<R: RadialFunction> ScalarField for RadialField<R> {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        self.profile.eval(p.radius())
    }
    fn bound(&self) -> f64 {
        self.bound
    }
    fn support_radius(&self) -> f64 {
        self.profile.support_radius()
    }
}

/// Caches point evaluations of an expensive field, keyed by the exact bit
/// pattern of the coordinate; results are identical with or without it.
pub struct MemoizedField<F> {
    inner: F,
    cache: Mutex<HashMap<(u64, u64), Complex64>>,
}

impl<F: ScalarField> MemoizedField<F> {
    pub fn new(inner: F) -> Self {
        Self {
            inner,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn cached_points(&self) -> usize {
        self.cache.lock().map(|c| c.len()).unwrap_or(0)
    }
}

impl<F: ScalarField> ScalarField for MemoizedField<F> {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        let key = (p.coord().re.to_bits(), p.coord().im.to_bits());
        if let Some(v) = self.cache.lock().ok().and_then(|c| c.get(&key).copied()) {
            return Ok(v);
        }
        let v = self.inner.eval(p)?;
        if let Ok(mut c) = self.cache.lock() {
            c.insert(key, v);
        }
        Ok(v)
    }
    fn bound(&self) -> f64 {
        self.inner.bound()
    }
    fn support_radius(&self) -> f64 {
        self.inner.support_radius()
    }
    fn horizon_value(&self) -> Option<Complex64> {
        self.inner.horizon_value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        let b = Bump::centered(1.0).unwrap();
        assert_eq!(
            ScalarField::eval(&b, &DiskPoint::origin()).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let out = DiskPoint::from_polar(1.0, 0.3).unwrap();
        assert_eq!(
            ScalarField::eval(&b, &out).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(ScalarField::support_radius(&b), 1.0);
        assert_eq!(b.horizon_value(), Some(Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn memo_is_transparent() {
        let b = Bump::centered(1.5).unwrap();
        let m = MemoizedField::new(b);
        let p = DiskPoint::from_xy(0.2, -0.1).unwrap();
        let first = m.eval(&p).unwrap();
        assert_eq!(m.eval(&p).unwrap(), first);
        assert_eq!(first, ScalarField::eval(&b, &p).unwrap());
        assert_eq!(m.cached_points(), 1);
    }

    #[test]
    fn fn_field_support() {
        let f = FnField::new(|_| Complex64::new(2.0, 0.0), 2.0)
            .unwrap()
            .with_support(0.5);
        assert_eq!(
            f.eval(&DiskPoint::from_polar(0.6, 0.0).unwrap()).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            f.eval(&DiskPoint::from_polar(0.4, 0.0).unwrap()).unwrap(),
            Complex64::new(2.0, 0.0)
        );
    }
}
