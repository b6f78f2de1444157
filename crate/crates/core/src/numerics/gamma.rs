use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{bail, Result};

const LANCZOS_G: f64 = 7.0;
// Published coefficients, kept digit for digit.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function of a complex argument.
///
/// Lanczos approximation (g = 7, nine coefficients) on `Re w ≥ 1/2`, with the
/// reflection formula `Γ(w)Γ(1−w) = π / sin(πw)` below that line.
pub fn gamma_complex(w: Complex64) -> Result<Complex64> {
    if !(w.re.is_finite() && w.im.is_finite()) {
        bail!(InvalidArgument, "gamma argument is not finite: {w}");
    }
    if w.im == 0.0 && w.re <= 0.0 && w.re == w.re.round() {
        bail!(Domain, "gamma has a pole at {}", w.re);
    }
    let value = if w.re < 0.5 {
        let s = (w * PI).sin();
        if s.norm() == 0.0 {
            bail!(Domain, "gamma has a pole at {w}");
        }
        Complex64::new(PI, 0.0) / (s * lanczos(Complex64::new(1.0, 0.0) - w))
    } else {
        lanczos(w)
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        bail!(Numeric, "gamma overflowed at {w}");
    }
    Ok(value)
}

fn lanczos(w: Complex64) -> Complex64 {
    let x = w - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += *c / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // t^(x+1/2) e^{-t} evaluated in log form to keep large |Im w| finite.
    let log_part = (x + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_part.exp() * series
}

#[cfg(test)]
mod tests {
    use super::*;

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn recursion(re in 0.25f64..5.0, im in -5.0f64..5.0) {
            let w = c(re, im);
            let lhs = gamma_complex(w + 1.0).unwrap();
            let rhs = w * gamma_complex(w).unwrap();
            prop_assert!((lhs - rhs).norm() / lhs.norm() <= 1e-11);
        }

        #[test]
        fn conjugation(re in 0.25f64..10.0, im in -10.0f64..10.0) {
            let a = gamma_complex(c(re, im)).unwrap();
            let b = gamma_complex(c(re, -im)).unwrap();
            prop_assert!((a.conj() - b).norm() <= 1e-12 * a.norm());
        }
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!((gamma_complex(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        let half = gamma_complex(c(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt()).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
        let five = gamma_complex(c(5.0, 0.0)).unwrap();
        assert!((five.re - 24.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_branch_matches_recursion() {
        let w = c(0.3, 1.7);
        let lhs = gamma_complex(w + 1.0).unwrap();
        let rhs = w * gamma_complex(w).unwrap();
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-13);
        let neg = gamma_complex(c(-1.5, 0.0)).unwrap();
        assert!((neg.re - 4.0 * PI.sqrt() / 3.0).abs() < 1e-13);
    }

    #[test]
    fn poles_are_domain_errors() {
        for k in 0..4 {
            let err = gamma_complex(c(-(k as f64), 0.0)).unwrap_err();
            assert!(matches!(err, crate::Error::Domain(_)));
        }
        assert!(gamma_complex(c(f64::NAN, 0.0)).is_err());
    }

    /// Stirling series at 10 + i, brought down to 2 + i by the recursion.
    fn stirling_oracle(w: Complex64) -> Complex64 {
        const B: [f64; 7] = [
            1.0 / 6.0,
            -1.0 / 30.0,
            1.0 / 42.0,
            -1.0 / 30.0,
            5.0 / 66.0,
            -691.0 / 2730.0,
            7.0 / 6.0,
        ];
        let mut shift = Complex64::new(1.0, 0.0);
        let mut x = w;
        while x.re < 10.0 {
            shift *= x;
            x += 1.0;
        }
        let mut lg = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln();
        for (k, b) in B.iter().enumerate() {
            let n = 2 * (k + 1);
            lg += *b / ((n * (n - 1)) as f64 * x.powi(n as i32 - 1));
        }
        lg.exp() / shift
    }

    #[test]
    fn matches_stirling_oracle() {
        let w = c(2.0, 1.0);
        let oracle = stirling_oracle(w);
        let got = gamma_complex(w).unwrap();
        assert!(
            (got - oracle).norm() / oracle.norm() < 1e-13,
            "{got} vs {oracle}"
        );
        // frozen oracle value
        assert!((got - c(0.652_965_496_420_166_7, 0.343_065_839_816_545_4)).norm() < 1e-13);
        for &(re, im) in &[(0.25, 0.0), (0.75, 5.0), (4.5, -10.0), (10.0, 10.0)] {
            let w = c(re, im);
            let o = stirling_oracle(w);
            assert!(
                (gamma_complex(w).unwrap() - o).norm() / o.norm() < 1e-12,
                "{w}"
            );
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for &(re, im) in &[(0.25, 3.0), (2.0, -7.5), (9.5, 10.0)] {
            let a = gamma_complex(c(re, im)).unwrap();
            let b = gamma_complex(c(re, -im)).unwrap();
            assert!((a.conj() - b).norm() <= 1e-12 * a.norm());
        }
    }
}
