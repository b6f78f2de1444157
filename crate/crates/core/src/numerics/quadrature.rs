use std::collections::HashMap;
use std::ops::{AddAssign, Mul};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{bail, Result};

/// A fixed quadrature rule on a closed interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    interval: (f64, f64),
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Applies the rule to `f`. Works for real and complex integrands.
    pub fn integrate<T, F>(&self, mut f: F) -> T
    where
        T: Default + AddAssign + Mul<f64, Output = T>,
        F: FnMut(f64) -> T,
    {
        let mut acc = T::default();
        for (x, w) in self.iter() {
            acc += f(x) * w;
        }
        acc
    }
}

type StandardRule = Arc<(Vec<f64>, Vec<f64>)>;

fn standard_cache() -> &'static Mutex<HashMap<usize, StandardRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, StandardRule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the three-term recurrence and memoized per order.
fn standard_rule(n: usize) -> StandardRule {
    if let Some(rule) = standard_cache().lock().unwrap().get(&n) {
        return rule.clone();
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let rule = Arc::new((nodes, weights));
    standard_cache().lock().unwrap().insert(n, rule.clone());
    rule
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        bail!(
            InvalidArgument,
            "quadrature interval [{a}, {b}] is empty or not finite"
        );
    }
    Ok(())
}

/// `n`-point Gauss–Legendre rule on `[a, b]`, exact for polynomials of degree
/// at most `2n − 1`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n < 2 {
        bail!(
            InvalidArgument,
            "Gauss-Legendre order must be at least 2, got {n}"
        );
    }
    check_interval(a, b)?;
    let std = standard_rule(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule {
        nodes: std.0.iter().map(|t| mid + half * t).collect(),
        weights: std.1.iter().map(|w| half * w).collect(),
        interval: (a, b),
    })
}

/// Composite Gauss–Legendre rule: `panels` equal panels of `order` nodes.
pub fn composite_gauss_legendre(
    panels: usize,
    order: usize,
    a: f64,
    b: f64,
) -> Result<QuadratureRule> {
    if panels == 0 {
        bail!(InvalidArgument, "composite rule needs at least one panel");
    }
    if order < 2 {
        bail!(
            InvalidArgument,
            "Gauss-Legendre order must be at least 2, got {order}"
        );
    }
    check_interval(a, b)?;
    let std = standard_rule(order);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + width * p as f64;
        let mid = lo + 0.5 * width;
        for (t, w) in std.0.iter().zip(std.1.iter()) {
            nodes.push(mid + 0.5 * width * t);
            weights.push(0.5 * width * w);
        }
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        interval: (a, b),
    })
}

/// Equally spaced rule for periodic integrands on `[start, start + 2π)`.
pub fn periodic_trapezoid(n: usize, start: f64) -> Result<QuadratureRule> {
    if n < 2 {
        bail!(
            InvalidArgument,
            "periodic rule needs at least 2 nodes, got {n}"
        );
    }
    let tau = std::f64::consts::TAU;
    let w = tau / n as f64;
    Ok(QuadratureRule {
        nodes: (0..n).map(|j| start + w * j as f64).collect(),
        weights: vec![w; n],
        interval: (start, start + tau),
    })
}
