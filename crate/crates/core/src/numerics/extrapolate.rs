use num_complex::Complex64;

use crate::error::{bail, Result};

/// Result of extrapolating a sampled function to `z = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    /// Value of the full-degree interpolant at zero.
    pub value: Complex64,
    /// `|P_n(0) − P_{n−1}(0)|` for the last two nested degrees.
    pub error_indicator: f64,
    /// `P_k(0)` for the interpolants through the first `k` samples, `k = 1..=n`.
    pub nested: Vec<Complex64>,
}

impl Extrapolation {
    /// Successive differences `|P_k(0) − P_{k−1}(0)|`, `k = 2..=n`.
    pub fn indicators(&self) -> Vec<f64> {
        self.nested
            .windows(2)
            .map(|w| (w[1] - w[0]).norm())
            .collect()
    }
}

/// Polynomial extrapolation to zero by Neville's scheme.
///
/// Samples are used in the order given; the nested estimates use the first
/// `k` samples, so passing the abscissae in decreasing order makes each new
/// sample the one closest to the target.
pub fn extrapolate_to_zero(samples: &[(f64, Complex64)]) -> Result<Extrapolation> {
    if samples.len() < 3 {
        bail!(
            InvalidArgument,
            "extrapolation needs at least 3 samples, got {}",
            samples.len()
        );
    }
    for (i, &(z, v)) in samples.iter().enumerate() {
        if !(z.is_finite() && z > 0.0) {
            bail!(
                InvalidArgument,
                "sample abscissa {z} must be positive and finite"
            );
        }
        if !(v.re.is_finite() && v.im.is_finite()) {
            bail!(InvalidArgument, "sample value at z = {z} is not finite");
        }
        if samples[..i].iter().any(|&(w, _)| w == z) {
            bail!(InvalidArgument, "duplicate abscissa {z}");
        }
    }
    // table[i] holds the interpolant through samples i-k..=i evaluated at 0
    // after k sweeps; its last entry after sweep k is P_{k+1}(0).
    let mut table: Vec<Complex64> = samples.iter().map(|s| s.1).collect();
    let mut nested = vec![table[0]];
    let n = samples.len();
    for k in 1..n {
        for i in (k..n).rev() {
            let zi = samples[i].0;
            let zj = samples[i - k].0;
            table[i] = table[i] + (table[i - 1] - table[i]) * (zi / (zi - zj));
        }
        nested.push(table[k]);
    }
    let value = nested[n - 1];
    let error_indicator = (nested[n - 1] - nested[n - 2]).norm();
    Ok(Extrapolation {
        value,
        error_indicator,
        nested,
    })
}
