use std::f64::consts::PI;

use num_complex::Complex64;
use xray_hyperbolic::spherical::{
    sigma_tilde_closed, tau_tilde_closed, tau_tilde_quadrature, RadialFunction, SpectralParam,
};
use xray_hyperbolic::xray_disk::{kernel_sigma, kernel_tau};

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{fmt_num, Table};

pub const TRANSFORM_HEADER: [&str; 12] = [
    "lambda",
    "tau_quad_re",
    "tau_quad_im",
    "tau_closed_re",
    "tau_closed_im",
    "sigma_closed_re",
    "sigma_closed_im",
    "product_re",
    "product_im",
    "target_re",
    "target_im",
    "residual",
];

pub const KERNEL_HEADER: [&str; 8] = [
    "r",
    "tau_re",
    "tau_im",
    "sigma_re",
    "sigma_im",
    "sigma_coth_re",
    "sigma_coth_im",
    "residual",
];

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// One row per λ; the residual is the larger of the quadrature-vs-closed
/// and the product-identity relative errors. Returns the largest residual.
pub fn transform_table(cfg: &RunConfig, lambdas: &[f64]) -> CliResult<f64> {
    let z = cfg.z;
    let n_theta = cfg.resolution.n_theta.max(16);
    let mut table = Table::create(&cfg.output, &TRANSFORM_HEADER)?;
    let mut worst: f64 = 0.0;
    for &l in lambdas {
        let lambda = SpectralParam::real(l)?;
        let quad = tau_tilde_quadrature(z, &lambda, n_theta)?;
        let tau = tau_tilde_closed(z, &lambda)?;
        let sigma = sigma_tilde_closed(z, &lambda)?;
        let product = tau * sigma;
        let target = 4.0 * PI * PI / ((z + 0.5) * (z + 0.5) + l * l);
        let residual = rel(quad, tau).max(rel(product, target));
        worst = worst.max(residual);
        let mut cells = vec![fmt_num(l)];
        for v in [quad, tau, sigma, product, target] {
            cells.push(fmt_num(v.re));
            cells.push(fmt_num(v.im));
        }
        cells.push(fmt_num(residual));
        table.row(&cells)?;
    }
    let path = table.finish()?;
    println!(
        "transform-table: {} rows, max residual {:.3e}; wrote {}",
        lambdas.len(),
        worst,
        path.display()
    );
    Ok(worst)
}

/// `τ^(z)(r) = e^{−zr}/sinh r` and `σ^(z)(r) = e^{−(z+1)r}/sinh r`, the
/// latter also as `e^{−zr}(coth r − 1)`; the residual compares the two.
pub fn kernel_table(cfg: &RunConfig, r_max: f64, r_count: usize) -> CliResult<f64> {
    let tau = kernel_tau(cfg.z)?;
    let sigma = kernel_sigma(cfg.z)?;
    let mut table = Table::create(&cfg.output, &KERNEL_HEADER)?;
    let mut worst: f64 = 0.0;
    for k in 1..=r_count {
        let r = r_max * k as f64 / r_count as f64;
        let t = tau.eval(r)?;
        let s = sigma.eval(r)?;
        let s_coth = (-cfg.z * r).exp() * (2.0 / (2.0 * r).exp_m1());
        let residual = rel(s_coth, s);
        worst = worst.max(residual);
        table.row(&[
            fmt_num(r),
            fmt_num(t.re),
            fmt_num(t.im),
            fmt_num(s.re),
            fmt_num(s.im),
            fmt_num(s_coth.re),
            fmt_num(s_coth.im),
            fmt_num(residual),
        ])?;
    }
    let path = table.finish()?;
    println!(
        "kernel-table: {r_count} rows, max residual {worst:.3e}; wrote {}",
        path.display()
    );
    Ok(worst)
}
