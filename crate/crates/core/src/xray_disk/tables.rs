//! Tabulated data fields. Reconstruction applies `S^(z)` to the data
//! `g = Π₀^(z) f` at tens of thousands of points per output value, so the
//! data is sampled once on a geodesic polar grid about 0 and interpolated.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{normal_op_attenuated, AttenuationParam, OperatorResolution, RadialField, ScalarField};
use crate::error::{bail, Result};
use crate::geometry::DiskPoint;
use crate::numerics::ChebyshevPanels;
use crate::spherical::TabulatedRadial;

const TABLE_ORDER: usize = 16;

fn panel_count(r_max: f64, width: f64) -> Result<usize> {
    if !(r_max.is_finite() && r_max > 0.0) || !(width > 0.0) {
        bail!(
            InvalidArgument,
            "table extent {r_max} and panel width {width} must be positive"
        );
    }
    Ok((r_max / width).ceil() as usize)
}

/// Panel breaks on `[0, r_max]`: width `fine` up to `r_fine`, then `coarse`.
pub(crate) fn graded_breaks(r_max: f64, r_fine: f64, fine: f64, coarse: f64) -> Result<Vec<f64>> {
    panel_count(r_max, fine)?;
    panel_count(r_max, coarse)?;
    let mut breaks = vec![0.0];
    let split = r_fine.clamp(0.0, r_max);
    let n_fine = (split / fine).ceil() as usize;
    for k in 1..=n_fine {
        breaks.push(split * k as f64 / n_fine as f64);
    }
    let rest = r_max - split;
    if rest > 0.0 {
        let n = (rest / coarse).ceil() as usize;
        for k in 1..=n {
            breaks.push(split + rest * k as f64 / n as f64);
        }
    }
    Ok(breaks)
}

/// `Π₀^(z) f` for a field `f` that is radial about 0 and supported in
/// `d(0, ·) ≤ ρ`, sampled along the positive real axis on `[0, r_max]` and
/// extended by 0 beyond.
///
/// Near the support the data inherits the steep edge of `f`, so panels of
/// width `fine` are used up to `ρ + 1`; beyond, the data decays smoothly
/// like `e^{−(1+Re z) r}` and width `4·fine` suffices.
pub fn radial_data_table(
    f: &dyn ScalarField,
    p: &AttenuationParam,
    res: &OperatorResolution,
    r_max: f64,
    fine: f64,
) -> Result<RadialField<TabulatedRadial>> {
    let rho = f.support_radius();
    if !rho.is_finite() {
        bail!(
            Precondition,
            "radial data tables need a compactly supported field"
        );
    }
    let breaks = graded_breaks(r_max, rho + 1.0, fine, 4.0 * fine)?;
    let table = ChebyshevPanels::build_on(breaks, TABLE_ORDER, |r| {
        normal_op_attenuated(f, p, &DiskPoint::from_polar(r, 0.0)?, res)
    })?;
    let bound = 4.0 * PI / p.z().re * f.bound();
    RadialField::new(TabulatedRadial::new(table)?, bound)
}

/// A field sampled on `n_angles` equally spaced rays from 0, each a
/// Chebyshev-panel table in the hyperbolic radius; trigonometric
/// interpolation in the angle. Zero beyond `r_max`.
#[derive(Debug, Clone)]
pub struct PolarTableField {
    columns: Vec<ChebyshevPanels>,
    r_max: f64,
    bound: f64,
}

impl PolarTableField {
    /// `n_angles` must be even (barycentric trigonometric interpolation).
    pub fn build<F>(
        mut f: F,
        r_max: f64,
        panel_width: f64,
        n_angles: usize,
        bound: f64,
    ) -> Result<Self>
    where
        F: FnMut(&DiskPoint) -> Result<Complex64>,
    {
        if n_angles < 4 || !n_angles.is_multiple_of(2) {
            bail!(
                InvalidArgument,
                "angular sample count must be even and ≥ 4, got {n_angles}"
            );
        }
        let panels = panel_count(r_max, panel_width)?;
        let mut columns = Vec::with_capacity(n_angles);
        for j in 0..n_angles {
            let theta = TAU * j as f64 / n_angles as f64;
            columns.push(ChebyshevPanels::build(
                0.0,
                r_max,
                panels,
                TABLE_ORDER,
                |r| f(&DiskPoint::from_polar(r, theta)?),
            )?);
        }
        Ok(Self {
            columns,
            r_max,
            bound,
        })
    }

    /// Samples `Π₀^(z) f`.
    pub fn normal_op_data(
        f: &dyn ScalarField,
        p: &AttenuationParam,
        res: &OperatorResolution,
        r_max: f64,
        panel_width: f64,
        n_angles: usize,
    ) -> Result<Self> {
        let bound = 4.0 * PI / p.z().re * f.bound();
        Self::build(
            |y| normal_op_attenuated(f, p, y, res),
            r_max,
            panel_width,
            n_angles,
            bound,
        )
    }
}

impl ScalarField for PolarTableField {
    fn eval(&self, p: &DiskPoint) -> Result<Complex64> {
        let r = p.radius();
        if r > self.r_max {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let n = self.columns.len();
        let theta = p.coord().arg().rem_euclid(TAU);
        let step = TAU / n as f64;
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for (j, col) in self.columns.iter().enumerate() {
            let diff = theta - step * j as f64;
            let v = col.eval(r).unwrap_or_default();
            let half = 0.5 * diff;
            if half.sin().abs() < 1e-14 {
                return Ok(v);
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let c = sign / half.tan();
            num += v * c;
            den += c;
        }
        Ok(num / den)
    }
    fn bound(&self) -> f64 {
        self.bound
    }
    fn support_radius(&self) -> f64 {
        self.r_max
    }
}
