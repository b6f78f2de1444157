use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{bail, Result};

/// C∞ step: 0 for `x ≤ a`, 1 for `x ≥ b`, strictly monotone in between.
pub fn smooth_step(x: f64, a: f64, b: f64) -> f64 {
    if x <= a {
        return 0.0;
    }
    if x >= b {
        return 1.0;
    }
    let u = (x - a) / (b - a);
    let p = (-1.0 / u).exp();
    let q = (-1.0 / (1.0 - u)).exp();
    p / (p + q)
}

/// Piecewise Chebyshev interpolant of a complex function of one real
/// variable, evaluated by the barycentric formula on each panel.
#[derive(Debug, Clone)]
pub struct ChebyshevPanels {
    breaks: Vec<f64>,
    nodes: Vec<f64>,
    bary: Vec<f64>,
    values: Vec<Vec<Complex64>>,
}

impl ChebyshevPanels {
    /// Samples `f` at `order` Chebyshev–Lobatto points on each of `panels`
    /// equal panels of `[a, b]`.
    pub fn build<F>(a: f64, b: f64, panels: usize, order: usize, f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        if panels == 0 {
            bail!(InvalidArgument, "need at least one panel");
        }
        if !(a.is_finite() && b.is_finite()) || a >= b {
            bail!(
                InvalidArgument,
                "interpolation interval [{a}, {b}] is invalid"
            );
        }
        let w = (b - a) / panels as f64;
        let mut breaks: Vec<f64> = (0..panels).map(|p| a + w * p as f64).collect();
        breaks.push(b);
        Self::build_on(breaks, order, f)
    }

    /// Panels between consecutive strictly increasing `breaks`.
    pub fn build_on<F>(breaks: Vec<f64>, order: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        if breaks.len() < 2 || order < 2 {
            bail!(InvalidArgument, "need at least one panel of order ≥ 2");
        }
        if breaks.iter().any(|b| !b.is_finite()) || breaks.windows(2).any(|w| w[0] >= w[1]) {
            bail!(
                InvalidArgument,
                "panel breaks must be finite and strictly increasing"
            );
        }
        let m = order - 1;
        let nodes: Vec<f64> = (0..order)
            .map(|j| -(PI * j as f64 / m as f64).cos())
            .collect();
        let bary: Vec<f64> = (0..order)
            .map(|j| {
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                if j == 0 || j == m {
                    0.5 * s
                } else {
                    s
                }
            })
            .collect();
        let mut values = Vec::with_capacity(breaks.len() - 1);
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mut row = Vec::with_capacity(order);
            for t in &nodes {
                let v = f(lo + 0.5 * (hi - lo) * (t + 1.0))?;
                if !(v.re.is_finite() && v.im.is_finite()) {
                    bail!(Numeric, "non-finite sample while building interpolant");
                }
                row.push(v);
            }
            values.push(row);
        }
        Ok(Self {
            breaks,
            nodes,
            bary,
            values,
        })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.breaks[0], self.breaks[self.breaks.len() - 1])
    }

    /// Interpolated value; `None` outside the covered interval.
    pub fn eval(&self, x: f64) -> Option<Complex64> {
        let (a, b) = self.interval();
        if !(x >= a && x <= b) {
            return None;
        }
        let p = self
            .breaks
            .partition_point(|&br| br <= x)
            .saturating_sub(1)
            .min(self.values.len() - 1);
        let (lo, hi) = (self.breaks[p], self.breaks[p + 1]);
        let t = 2.0 * (x - lo) / (hi - lo) - 1.0;
        let row = &self.values[p];
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = 0.0;
        for ((&node, &b), &v) in self.nodes.iter().zip(&self.bary).zip(row) {
            let d = t - node;
            if d == 0.0 {
                return Some(v);
            }
            let c = b / d;
            num += v * c;
            den += c;
        }
        Some(num / den)
    }
}
