use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::data::PeriodizedData;
use super::group::{reduce_to_fundamental, FuchsianGroup};
use crate::error::{bail, Result};
use crate::geometry::{distance, DiskPoint};
use crate::xray_disk::{bump_profile, Bump, ScalarField};

type DomainFn = dyn Fn(&DiskPoint) -> Result<Complex64> + Send + Sync;

#[derive(Clone)]
pub(crate) enum FieldKind {
    Constant,
    Bump(Bump),
    Function(Arc<DomainFn>),
    Periodized(Arc<PeriodizedData>),
}

/// A function on the quotient surface, given by its values on the
/// fundamental domain, plus a constant shift.
#[derive(Clone)]
pub struct SurfaceField {
    pub(crate) kind: FieldKind,
    shift: Complex64,
    bound: f64,
    smooth_margin: f64,
}

impl fmt::Debug for SurfaceField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            FieldKind::Constant => "constant".to_string(),
            FieldKind::Bump(b) => format!("{b:?}"),
            FieldKind::Function(_) => "function".to_string(),
            FieldKind::Periodized(_) => "periodized data".to_string(),
        };
        f.debug_struct("SurfaceField")
            .field("kind", &kind)
            .field("shift", &self.shift)
            .field("bound", &self.bound)
            .field("smooth_margin", &self.smooth_margin)
            .finish()
    }
}

impl SurfaceField {
    pub fn constant(c: Complex64) -> Self {
        Self {
            kind: FieldKind::Constant,
            shift: c,
            bound: c.norm(),
            smooth_margin: f64::INFINITY,
        }
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    /// A bump whose support lies inside the fundamental domain. The smooth
    /// margin is the distance from the support to the domain boundary and
    /// must be positive, so that the periodic extension is smooth.
    pub fn bump(group: &FuchsianGroup, bump: Bump) -> Result<Self> {
        let margin = group.boundary_distance(&bump.center) - bump.radius;
        if !(margin > 0.0) {
            bail!(
                Precondition,
                "bump support reaches the fundamental-domain boundary (margin {margin:.3e})"
            );
        }
        Ok(Self {
            kind: FieldKind::Bump(bump),
            shift: Complex64::new(0.0, 0.0),
            bound: bump.amplitude.norm(),
            smooth_margin: margin,
        })
    }

    /// An arbitrary function on the domain. It must agree on paired
    /// boundary points; `smooth_margin` is informational.
    pub fn from_fn<F>(f: F, bound: f64, smooth_margin: f64) -> Result<Self>
    where
        F: Fn(&DiskPoint) -> Result<Complex64> + Send + Sync + 'static,
    {
        if !(bound >= 0.0) {
            bail!(InvalidArgument, "field bound must be ≥ 0, got {bound}");
        }
        Ok(Self {
            kind: FieldKind::Function(Arc::new(f)),
            shift: Complex64::new(0.0, 0.0),
            bound,
            smooth_margin,
        })
    }

    pub(crate) fn periodized(data: PeriodizedData, bound: f64) -> Self {
        Self {
            kind: FieldKind::Periodized(Arc::new(data)),
            shift: Complex64::new(0.0, 0.0),
            bound,
            smooth_margin: f64::INFINITY,
        }
    }

    /// `f + c`.
    pub fn offset(&self, c: Complex64) -> Self {
        Self {
            shift: self.shift + c,
            bound: self.bound + c.norm(),
            ..self.clone()
        }
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        match &self.kind {
            FieldKind::Constant => Ok(Self::constant(self.shift * s)),
            FieldKind::Bump(b) => Ok(Self {
                kind: FieldKind::Bump(Bump {
                    amplitude: b.amplitude * s,
                    ..*b
                }),
                shift: self.shift * s,
                bound: self.bound * s.abs(),
                smooth_margin: self.smooth_margin,
            }),
            _ => bail!(
                InvalidArgument,
                "only constant and bump fields can be rescaled"
            ),
        }
    }

    /// The value at a point of the (closed) fundamental domain.
    pub fn eval_on_domain(&self, p: &DiskPoint) -> Result<Complex64> {
        let v = match &self.kind {
            FieldKind::Constant => Complex64::new(0.0, 0.0),
            FieldKind::Bump(b) => b.amplitude * bump_profile(distance(&b.center, p), b.radius),
            FieldKind::Function(f) => f(p)?,
            FieldKind::Periodized(d) => d.eval(p)?,
        };
        Ok(v + self.shift)
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn smooth_margin(&self) -> f64 {
        self.smooth_margin
    }

    /// `Some(c)` when the field is the constant `c`.
    pub fn as_constant(&self) -> Option<Complex64> {
        matches!(self.kind, FieldKind::Constant).then_some(self.shift)
    }

    /// The bump and shift when the field is `bump + c`.
    pub fn as_bump(&self) -> Option<(Bump, Complex64)> {
        match self.kind {
            FieldKind::Bump(b) => Some((b, self.shift)),
            _ => None,
        }
    }
}

/// `π*f`: the Γ-periodic disk field `p ↦ f(reduce(p))`.
pub struct PullbackField<'a> {
    field: &'a SurfaceField,
    group: &'a FuchsianGroup,
}

pub fn pullback_field<'a>(field: &'a SurfaceField, group: &'a FuchsianGroup) -> PullbackField<'a> {
    PullbackField { field, group }
}

impl ScalarField for PullbackField<'_> {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        if let Some(c) = self.field.as_constant() {
            return Ok(c);
        }
        let (q, _) = reduce_to_fundamental(p, self.group)?;
        self.field.eval_on_domain(&q)
    }
    fn bound(&self) -> f64 {
        self.field.bound()
    }
    fn horizon_value(&self) -> Option<Complex64> {
        self.field.as_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::octagon_group;

    #[test]
    fn bump_margin() {
        let g = octagon_group().unwrap();
        let inside = Bump::centered(1.2).unwrap();
        let f = SurfaceField::bump(&g, inside).unwrap();
        assert!((f.smooth_margin() - (g.edge_midpoint_radius() - 1.2)).abs() < 1e-12);
        let too_big = Bump::centered(1.6).unwrap();
        assert!(SurfaceField::bump(&g, too_big).is_err());
    }

    #[test]
    fn pullback_is_periodic() {
        let g = octagon_group().unwrap();
        let b = Bump::new(
            DiskPoint::from_xy(0.1, 0.05).unwrap(),
            1.0,
            Complex64::new(1.0, 0.5),
        )
        .unwrap();
        let f = SurfaceField::bump(&g, b).unwrap();
        let pull = pullback_field(&f, &g);
        let p = DiskPoint::from_polar(0.7, 0.4).unwrap();
        let v = pull.eval(&p).unwrap();
        for gen in g.generators() {
            let w = pull.eval(&gen.apply(&p).unwrap()).unwrap();
            assert!((v - w).norm() < 1e-12);
        }
        let c = SurfaceField::constant(Complex64::new(2.0, -1.0));
        let pc = pullback_field(&c, &g);
        assert_eq!(
            pc.eval(&DiskPoint::from_polar(9.0, 1.0).unwrap()).unwrap(),
            Complex64::new(2.0, -1.0)
        );
        // Bounded along a long geodesic.
        for k in 0..200 {
            let q = DiskPoint::from_polar(0.1 * k as f64, 0.3).unwrap();
            assert!(pull.eval(&q).unwrap().norm() <= f.bound() * (1.0 + 1e-12));
        }
    }
}
