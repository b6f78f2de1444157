//! Spherical functions `φ_λ`, the spherical transform of radial functions,
//! radial symmetrization, and the closed-form transforms of the kernels
//! `τ^(z)(r) = e^{−zr}/sinh r` and `σ^(z) = τ^(z+1)`.

use std::f64::consts::{LN_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::geometry::DiskPoint;
use crate::numerics::{composite_gauss_legendre, ensure_finite, gamma_complex, ChebyshevPanels};
use crate::xray_disk::ScalarField;

/// Spectral parameter `λ`; `φ_λ` has Laplace eigenvalue `−(λ² + 1/4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam {
    lambda: Complex64,
}

impl SpectralParam {
    pub fn new(lambda: Complex64) -> Result<Self> {
        Ok(Self {
            lambda: ensure_finite(lambda, "spectral parameter")?,
        })
    }

    pub fn real(lambda: f64) -> Result<Self> {
        Self::new(Complex64::new(lambda, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.lambda
    }

    pub fn neg(&self) -> Self {
        Self {
            lambda: -self.lambda,
        }
    }

    /// `−(λ² + 1/4)`.
    pub fn eigenvalue(&self) -> Complex64 {
        -(self.lambda * self.lambda + 0.25)
    }
}

/// A function of the hyperbolic radius `r ≥ 0`.
pub trait RadialFunction: Send + Sync {
    fn eval(&self, r: f64) -> Result<Complex64>;

    /// `eval(r)·sinh r`; kernels singular at 0 override this with the
    /// bounded product form.
    fn eval_times_sinh(&self, r: f64) -> Result<Complex64> {
        Ok(self.eval(r)? * r.sinh())
    }

    /// Radius beyond which the function vanishes, or `+∞`.
    fn support_radius(&self) -> f64 {
        f64::INFINITY
    }

    /// Known exponential decay rate `c` of `eval(r)·sinh r ~ e^{−cr}`, used
    /// to choose truncation radii.
    fn decay_rate(&self) -> Option<f64> {
        None
    }
}

/// A radial function given by a closure.
pub struct RadialFn<F> {
    f: F,
    support: f64,
}

impl<F> RadialFn<F>
where
    F: Fn(f64) -> Complex64 + Send + Sync,
{
    /// `support` is the radius outside which `f` is treated as 0
    /// (`f64::INFINITY` for none).
    pub fn new(f: F, support: f64) -> Result<Self> {
        if !(support > 0.0) {
            bail!(
                InvalidArgument,
                "support radius must be positive, got {support}"
            );
        }
        Ok(Self { f, support })
    }
}

impl<F> RadialFunction for RadialFn<F>
where
    F: Fn(f64) -> Complex64 + Send + Sync,
{
    fn eval(&self, r: f64) -> Result<Complex64> {
        if r < 0.0 || r.is_nan() {
            bail!(InvalidArgument, "radius must be ≥ 0, got {r}");
        }
        if r > self.support {
            return Ok(Complex64::new(0.0, 0.0));
        }
        ensure_finite((self.f)(r), "radial function value")
    }

    fn support_radius(&self) -> f64 {
        self.support
    }
}

/// A radial function sampled on Chebyshev panels, zero beyond the table.
#[derive(Debug, Clone)]
pub struct TabulatedRadial {
    table: ChebyshevPanels,
}

impl TabulatedRadial {
    /// The table must start at `r = 0`.
    pub fn new(table: ChebyshevPanels) -> Result<Self> {
        if table.interval().0 != 0.0 {
            bail!(InvalidArgument, "radial table must start at r = 0");
        }
        Ok(Self { table })
    }
}

impl RadialFunction for TabulatedRadial {
    fn eval(&self, r: f64) -> Result<Complex64> {
        if r < 0.0 || r.is_nan() {
            bail!(InvalidArgument, "radius must be ≥ 0, got {r}");
        }
        Ok(self.table.eval(r).unwrap_or_default())
    }

    fn support_radius(&self) -> f64 {
        self.table.interval().1
    }
}

/// Tail length (in the substituted variable) on each side of `[0, r]`.
const PHI_TAIL: f64 = 40.0;
const PHI_PANEL_ORDER: usize = 16;

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Spherical function
///
/// ```text
/// φ_λ(r) = (1/π) ∫₀^π (cosh r − sinh r cos θ)^{−iλ−1/2} dθ.
/// ```
///
/// The base is ≥ `e^{−r}` > 0, so the principal power is unambiguous. For
/// large `r` the integrand concentrates near `θ = 0`; the substitution
/// `θ = 2 atan(e^{v−r})` turns it into the smooth, exponentially decaying
///
/// ```text
/// (1/π) ∫ exp(−(1/2 + iλ) ln B(v)) / cosh(v − r) dv,
/// ln B(v) = −r + softplus(2v) − softplus(2(v − r)),
/// ```
///
/// integrated by composite Gauss–Legendre. `n_theta ≥ 16` sets the node
/// density: `n_theta/2` nodes per unit of `v` for `|λ| ≤ π/2`, more for
/// larger `|λ|` so that every oscillation gets at least 16 nodes.
pub fn phi_lambda(lambda: &SpectralParam, r: f64, n_theta: usize) -> Result<Complex64> {
    if n_theta < 16 {
        bail!(
            InvalidArgument,
            "n_theta must be at least 16, got {n_theta}"
        );
    }
    if !(r.is_finite() && r >= 0.0) {
        bail!(InvalidArgument, "radius must be finite and ≥ 0, got {r}");
    }
    if r == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let s = Complex64::new(0.5, 0.0) + Complex64::i() * lambda.value();
    let lo = -PHI_TAIL;
    let hi = r + PHI_TAIL;
    let width = 2f64.min(PI / lambda.value().norm()) * 16.0 / n_theta as f64;
    let panels = ((hi - lo) / width).ceil() as usize;
    let rule = composite_gauss_legendre(panels, PHI_PANEL_ORDER, lo, hi)?;
    let sum: Complex64 = rule.integrate(|v| {
        let ln_b = -r + softplus(2.0 * v) - softplus(2.0 * (v - r));
        let u = v - r;
        let ln_cosh = softplus(2.0 * u) - u - LN_2;
        (-s * ln_b - ln_cosh).exp()
    });
    ensure_finite(sum / PI, "spherical function")
}

/// Spherical transform of a radial function,
///
/// ```text
/// f̃(λ) = ∫_D f(x) φ_{−λ}(x) dx = 2π ∫₀^R F(r) φ_{−λ}(r) sinh r dr,
/// ```
///
/// by composite Gauss–Legendre with about `n_r` nodes on `[0, min(R, supp)]`.
/// For infinite support the last quarter of the range must contribute less
/// than the third quarter; growth there is reported as divergence.
pub fn spherical_transform(
    f: &dyn RadialFunction,
    lambda: &SpectralParam,
    radius: f64,
    n_r: usize,
    n_theta: usize,
) -> Result<Complex64> {
    if !(radius.is_finite() && radius > 0.0) {
        bail!(
            InvalidArgument,
            "truncation radius must be positive and finite, got {radius}"
        );
    }
    if n_r < 16 {
        bail!(InvalidArgument, "n_r must be at least 16, got {n_r}");
    }
    let support = f.support_radius();
    if support.is_finite() && radius < support {
        bail!(
            Precondition,
            "truncation radius {radius} is below the support radius {support}"
        );
    }
    let upper = radius.min(support);
    let neg = lambda.neg();
    let integrand =
        |r: f64| -> Result<Complex64> { Ok(f.eval_times_sinh(r)? * phi_lambda(&neg, r, n_theta)?) };
    let quarters = 4usize;
    let per = (n_r / (quarters * 16)).max(1);
    let mut parts = Vec::with_capacity(quarters);
    for q in 0..quarters {
        let a = upper * q as f64 / quarters as f64;
        let b = upper * (q + 1) as f64 / quarters as f64;
        let rule = composite_gauss_legendre(per, 16, a, b)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, w) in rule.iter() {
            acc += integrand(r)? * w;
        }
        parts.push(acc);
    }
    let total: Complex64 = parts.iter().sum::<Complex64>() * TAU;
    if support.is_infinite() {
        let last = parts[3].norm();
        let prev = parts[2].norm();
        if last > prev && last * TAU > 1e-6 * total.norm().max(1e-300) {
            bail!(
                Divergence,
                "tail segment grows ({last:.3e} > {prev:.3e}); the integrand does not decay fast enough"
            );
        }
    }
    ensure_finite(total, "spherical transform")
}

fn gamma_quartet(w: Complex64, lambda: Complex64) -> Result<(Complex64, Complex64)> {
    let half = Complex64::i() * lambda * 0.5;
    Ok((gamma_complex(w + half)?, gamma_complex(w - half)?))
}

fn check_attenuation(z: Complex64) -> Result<()> {
    ensure_finite(z, "attenuation")?;
    if !(z.re > 0.0) {
        bail!(InvalidArgument, "attenuation must have Re z > 0, got {z}");
    }
    Ok(())
}

/// `τ̃^(z)(λ) = π Γ(z/2+1/4+iλ/2)Γ(z/2+1/4−iλ/2) / (Γ(z/2+3/4+iλ/2)Γ(z/2+3/4−iλ/2))`.
pub fn tau_tilde_closed(z: Complex64, lambda: &SpectralParam) -> Result<Complex64> {
    check_attenuation(z)?;
    let l = lambda.value();
    let (n1, n2) = gamma_quartet(z * 0.5 + 0.25, l)?;
    let (d1, d2) = gamma_quartet(z * 0.5 + 0.75, l)?;
    ensure_finite(PI * (n1 * n2) / (d1 * d2), "tau transform")
}

/// `σ̃^(z)(λ) = π/((z/2+1/4)² + (λ/2)²) · Γ(z/2+3/4±iλ/2) / Γ(z/2+1/4±iλ/2)`.
pub fn sigma_tilde_closed(z: Complex64, lambda: &SpectralParam) -> Result<Complex64> {
    check_attenuation(z)?;
    let l = lambda.value();
    let w = z * 0.5 + 0.25;
    let pre = PI / (w * w + (l * 0.5) * (l * 0.5));
    let (n1, n2) = gamma_quartet(z * 0.5 + 0.75, l)?;
    let (d1, d2) = gamma_quartet(w, l)?;
    ensure_finite(pre * (n1 * n2) / (d1 * d2), "sigma transform")
}

/// `τ̃^(z)(λ) = 2π ∫₀^∞ e^{−zr} φ_{−λ}(r) dr` by quadrature, the
/// independent side of the closed form [`tau_tilde_closed`].
///
/// The integrand is bounded by `(1+r)e^{−(Re z+½)r}`; the range stops where
/// that falls below `1e−15`, with panels short enough to carry each
/// oscillation of `e^{iλr}` on 16 nodes.
pub fn tau_tilde_quadrature(
    z: Complex64,
    lambda: &SpectralParam,
    n_theta: usize,
) -> Result<Complex64> {
    check_attenuation(z)?;
    let decay = z.re + 0.5;
    let mut radius = 35.0 / decay;
    for _ in 0..8 {
        radius = ((1.0 + radius).ln() + 15.0 * std::f64::consts::LN_10) / decay;
    }
    let width = 0.5 * 1f64.min(PI / lambda.value().norm().max(1e-300));
    let per_quarter = (radius / (4.0 * width)).ceil() as usize;
    let kernel = crate::xray_disk::kernel_tau(z)?;
    spherical_transform(&kernel, lambda, radius, 64 * per_quarter, n_theta)
}

/// `f♮(x) = ∫_K f(k·x) dk`: average of `f` over the `n` rotations of `x`
/// about the origin (Haar probability measure).
pub fn radial_symmetrize(f: &dyn ScalarField, x: &DiskPoint, n: usize) -> Result<Complex64> {
    if n < 8 {
        bail!(
            InvalidArgument,
            "symmetrization needs at least 8 rotations, got {n}"
        );
    }
    let w = x.coord();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let rot = Complex64::from_polar(1.0, TAU * j as f64 / n as f64);
        acc += f.eval(&DiskPoint::new(rot * w)?)?;
    }
    Ok(acc / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lam(l: f64) -> SpectralParam {
        SpectralParam::real(l).unwrap()
    }

    /// Plain trapezoid in θ; the integrand is even and 2π-periodic.
    pub(crate) fn phi_trapezoid(l: f64, r: f64, n: usize) -> Complex64 {
        let s = Complex64::new(0.5, l);
        let h = PI / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=n {
            let th = h * j as f64;
            let b = r.cosh() - r.sinh() * th.cos();
            let w = if j == 0 || j == n { 0.5 } else { 1.0 };
            acc += (-s * b.ln()).exp() * w;
        }
        acc * h / PI
    }

    /// `P_{−1/2}(cosh η) = 2K(tanh(η/2)) / (π cosh(η/2))`, with `K` by AGM.
    fn legendre_minus_half(eta: f64) -> f64 {
        let (mut a, mut b) = (1.0, 1.0 / (0.5 * eta).cosh());
        for _ in 0..40 {
            let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
            a = an;
            b = bn;
        }
        let big_k = PI / (2.0 * a);
        2.0 * big_k / (PI * (0.5 * eta).cosh())
    }

    #[test]
    fn phi_at_origin_is_one() {
        for l in [0.0, 1.5, -3.0] {
            assert_eq!(
                phi_lambda(&lam(l), 0.0, 16).unwrap(),
                Complex64::new(1.0, 0.0)
            );
        }
        assert!(phi_lambda(&lam(0.0), 1.0, 8).is_err());
        assert!(phi_lambda(&lam(0.0), -1.0, 16).is_err());
    }

    #[test]
    fn phi_matches_trapezoid_oracle() {
        let oracle = phi_trapezoid(0.0, 1.0, 4096);
        let got = phi_lambda(&lam(0.0), 1.0, 16).unwrap();
        assert!((got - oracle).norm() < 1e-13, "{got} vs {oracle}");
        assert!((oracle.re - legendre_minus_half(1.0)).abs() < 1e-13);
        // frozen oracle value φ_0(1)
        assert!((got.re - 0.940_862_159_249_349_8).abs() < 1e-13);
        for &(l, r) in &[(0.5, 0.3), (2.0, 1.7), (5.0, 2.5), (1.0, 6.0)] {
            let o = phi_trapezoid(l, r, 4096);
            let g = phi_lambda(&lam(l), r, 16).unwrap();
            assert!((g - o).norm() < 1e-12, "λ={l} r={r}: {g} vs {o}");
        }
    }

    #[test]
    fn phi_large_radius_against_legendre() {
        for r in [10.0, 30.0, 80.0] {
            let g = phi_lambda(&lam(0.0), r, 16).unwrap();
            let o = legendre_minus_half(r);
            assert!((g.re - o).abs() < 1e-12 * o, "r={r}");
        }
    }

    #[test]
    fn closed_forms() {
        let z = Complex64::new(1.0, 0.0);
        let t = tau_tilde_closed(z, &lam(0.0)).unwrap();
        let g34 = gamma_complex(Complex64::new(0.75, 0.0)).unwrap().re;
        let g54 = gamma_complex(Complex64::new(1.25, 0.0)).unwrap().re;
        assert!((t.re - PI * g34 * g34 / (g54 * g54)).abs() < 1e-13);
        let s = sigma_tilde_closed(z, &lam(0.0)).unwrap();
        assert!((s.re - 4.0 * PI * PI / 2.25 / t.re).abs() < 1e-13);
        let shifted = tau_tilde_closed(z + 1.0, &lam(0.0)).unwrap();
        assert!((s - shifted).norm() < 1e-13);
        let a = tau_tilde_closed(Complex64::new(0.7, 0.0), &lam(1.3)).unwrap();
        let b = tau_tilde_closed(Complex64::new(0.7, 0.0), &lam(-1.3)).unwrap();
        assert!((a - b).norm() < 1e-14 && a.im.abs() < 1e-12);
        assert!(tau_tilde_closed(Complex64::new(0.0, 0.0), &lam(1.0)).is_err());
    }

    #[test]
    fn gamma_integral_quadrature_matches_closed_form() {
        for &(z, l) in &[(0.25, 0.0), (1.0, 0.5), (2.0, 5.0), (0.5, 2.0)] {
            let z = Complex64::new(z, 0.0);
            let q = tau_tilde_quadrature(z, &lam(l), 32).unwrap();
            let c = tau_tilde_closed(z, &lam(l)).unwrap();
            assert!((q - c).norm() < 1e-9 * c.norm(), "z={z} λ={l}: {q} vs {c}");
        }
        let z = Complex64::new(0.5, 0.3);
        let q = tau_tilde_quadrature(z, &lam(1.0), 32).unwrap();
        let c = tau_tilde_closed(z, &lam(1.0)).unwrap();
        assert!((q - c).norm() < 1e-9 * c.norm(), "{q} vs {c}");
    }

    #[test]
    fn transform_of_zero_and_divergence() {
        let zero = RadialFn::new(|_| Complex64::new(0.0, 0.0), f64::INFINITY).unwrap();
        assert_eq!(
            spherical_transform(&zero, &lam(0.0), 10.0, 64, 16).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        // e^{-r/4} does not beat the sinh r · φ growth e^{r/2}
        let slow = RadialFn::new(
            |r: f64| Complex64::new((-0.25 * r).exp(), 0.0),
            f64::INFINITY,
        )
        .unwrap();
        let err = spherical_transform(&slow, &lam(0.0), 40.0, 256, 16).unwrap_err();
        assert!(matches!(err, crate::Error::Divergence(_)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn phi_even_in_lambda(l in -6.0f64..6.0, r in 0.0f64..8.0) {
            let a = phi_lambda(&lam(l), r, 16).unwrap();
            let b = phi_lambda(&lam(-l), r, 16).unwrap();
            prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(1e-3));
        }

        #[test]
        fn product_identity(z in 0.05f64..4.0, l in -10.0f64..10.0) {
            let z = Complex64::new(z, 0.0);
            let p = tau_tilde_closed(z, &lam(l)).unwrap() * sigma_tilde_closed(z, &lam(l)).unwrap();
            let want = 4.0 * PI * PI / ((z + 0.5) * (z + 0.5) + l * l);
            prop_assert!((p - want).norm() <= 1e-12 * want.norm());
        }
    }
}
