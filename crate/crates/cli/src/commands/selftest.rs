//! Fast invariant checks across all modules, printed as a table.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xray_hyperbolic::geometry::{distance, DiskPoint, IsometryElement};
use xray_hyperbolic::numerics::{extrapolate_to_zero, gamma_complex};
use xray_hyperbolic::spherical::{
    phi_lambda, sigma_tilde_closed, tau_tilde_closed, tau_tilde_quadrature, SpectralParam,
};
use xray_hyperbolic::surface::{
    normal_op_data, octagon_group, reconstruct_surface, reduce_to_fundamental, DomainQuadrature,
    FuchsianGroup, Surface, SurfaceField, SurfaceResolution,
};
use xray_hyperbolic::xray_disk::{
    l_op, normal_op_attenuated, radial_laplacian, s_op, AttenuationParam, Bump, ConstantField,
    FnField, SmoothedField,
};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// One line of the table: `residual < tolerance` passes.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub note: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual < self.tolerance
    }
}

type Measured = xray_hyperbolic::Result<f64>;

fn run(name: &'static str, tolerance: f64, f: impl FnOnce() -> Measured) -> Check {
    match f() {
        Ok(residual) => Check {
            name,
            residual,
            tolerance,
            note: String::new(),
        },
        Err(e) => Check {
            name,
            residual: f64::INFINITY,
            tolerance,
            note: e.to_string(),
        },
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn random_point(rng: &mut ChaCha8Rng, max_radius: f64) -> xray_hyperbolic::Result<DiskPoint> {
    DiskPoint::from_polar(
        rng.gen_range(0.0..max_radius),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

fn octagon(perturb: Option<f64>) -> xray_hyperbolic::Result<FuchsianGroup> {
    let g = octagon_group()?;
    match perturb {
        Some(eps) => FuchsianGroup::regular_octagon(g.edge_midpoint_radius() * (1.0 + eps)),
        None => Ok(g),
    }
}

pub fn checks(cfg: &RunConfig, perturb: Option<f64>) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let res = cfg.resolution;
    let mut out = Vec::new();

    out.push(run("gamma-int identity", 1e-6, || {
        let mut worst: f64 = 0.0;
        for z in [0.5, 1.0, 2.0] {
            for l in [0.0, 1.0, 2.0] {
                let lambda = SpectralParam::real(l)?;
                let q = tau_tilde_quadrature(c(z), &lambda, 32)?;
                worst = worst.max(rel(q, tau_tilde_closed(c(z), &lambda)?));
            }
        }
        Ok(worst)
    }));

    out.push(run("kernel-transform product", 1e-12, || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let z = Complex64::new(rng.gen_range(0.05..4.0), rng.gen_range(-1.0..1.0));
            let l: f64 = rng.gen_range(-8.0..8.0);
            let lambda = SpectralParam::real(l)?;
            let p = tau_tilde_closed(z, &lambda)? * sigma_tilde_closed(z, &lambda)?;
            worst = worst.max(rel(p, 4.0 * PI * PI / ((z + 0.5) * (z + 0.5) + l * l)));
        }
        Ok(worst)
    }));

    out.push(run("spherical eigenvalue", 1e-5, || {
        let mut worst: f64 = 0.0;
        for l in [0.0, 1.0, 2.0] {
            let lambda = SpectralParam::real(l)?;
            for r in [0.5, 1.5, 2.5] {
                let phi = |s: f64| phi_lambda(&lambda, s, 32);
                let lap = radial_laplacian(&phi, r, 1e-2)?;
                let v = phi(r)?;
                worst = worst.max((lap + v * (l * l + 0.25)).norm() / (v.norm() * (l * l + 0.25)));
            }
        }
        Ok(worst)
    }));

    out.push(run("gamma recursion", 1e-11, || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let w = Complex64::new(rng.gen_range(0.1..6.0), rng.gen_range(-4.0..4.0));
            worst = worst.max(rel(gamma_complex(w + 1.0)?, w * gamma_complex(w)?));
        }
        Ok(worst)
    }));

    out.push(run("extrapolation exactness", 1e-10, || {
        let coef: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let poly = |z: f64| coef.iter().rev().fold(0.0, |acc, a| acc * z + a);
        let samples: Vec<(f64, Complex64)> = [0.4, 0.2, 0.1, 0.05]
            .iter()
            .map(|&z| (z, c(poly(z))))
            .collect();
        Ok((extrapolate_to_zero(&samples)?.value - c(coef[0])).norm())
    }));

    out.push(run("isometry invariance", 1e-9, || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let g = IsometryElement::translation(rng.gen_range(0.0..6.3), rng.gen_range(0.0..3.0))
                .compose(&IsometryElement::rotation(rng.gen_range(0.0..6.3)));
            let (p, q) = (random_point(&mut rng, 3.0)?, random_point(&mut rng, 3.0)?);
            let d = distance(&p, &q);
            worst = worst.max((distance(&g.apply(&p)?, &g.apply(&q)?) - d).abs() / d.max(1.0));
        }
        Ok(worst)
    }));

    let p = AttenuationParam::new(cfg.z, cfg.curvature);
    out.push(run("constant normal operator", 1e-10, || {
        let p = p.clone()?;
        let v = normal_op_attenuated(
            &ConstantField::real(1.0),
            &p,
            &random_point(&mut rng, 1.0)?,
            &res,
        )?;
        Ok(rel(v, 4.0 * PI / p.z()))
    }));
    out.push(run("constant S operator", 1e-10, || {
        let p = p.clone()?;
        let v = s_op(&ConstantField::real(1.0), &p, &DiskPoint::origin(), &res)?;
        Ok(rel(v, 2.0 * PI / (p.z() + p.sqrt_neg_k())))
    }));
    out.push(run("disk constant chain", 1e-6, || {
        let p = p.clone()?;
        let g = normal_op_attenuated(&ConstantField::real(1.0), &p, &DiskPoint::origin(), &res)?;
        let smoothed = SmoothedField::new(ConstantField(g), p, res);
        let v =
            l_op(&smoothed, &p, &DiskPoint::from_xy(0.2, -0.1)?, res.fd_step)? / (-8.0 * PI * PI);
        Ok(rel(v, c(1.0)))
    }));

    out.push(run("lemma eps (a) bound", 1e-6, || {
        // Excess of |Π₀f| over (4π/Re z)·C on random fields of known bound.
        let p = AttenuationParam::unit(0.5)?;
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..5 {
            let base = Complex64::from_polar(rng.gen_range(0.2..1.0), rng.gen_range(0.0..6.3));
            let amp = Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..6.3));
            let bump = Bump::new(random_point(&mut rng, 1.0)?, rng.gen_range(0.3..1.5), amp)?;
            let bound = base.norm() + amp.norm();
            let f = FnField::new(move |y: &DiskPoint| base + bump_value(&bump, y), bound)?
                .with_horizon_value(base);
            let v = normal_op_attenuated(&f, &p, &random_point(&mut rng, 1.0)?, &res)?;
            worst = worst.max(v.norm() / (4.0 * PI / p.z().re * bound) - 1.0);
        }
        Ok(worst.max(0.0))
    }));

    let group = octagon(perturb);
    out.push(run("octagon relator", 1e-7, || {
        let g = group.clone()?;
        Ok(g.relator()
            .projective_distance(&IsometryElement::identity()))
    }));
    out.push(run("octagon area", 1e-3, || {
        let g = group.clone()?;
        Ok((DomainQuadrature::octagon(&g, 8, 2)?.area() / (4.0 * PI) - 1.0).abs())
    }));
    out.push(run("reduction invariance", 1e-8, || {
        let g = group.clone()?;
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let p = random_point(&mut rng, 4.0)?;
            let mut w = IsometryElement::identity();
            for _ in 0..rng.gen_range(1..4) {
                w = w.compose(&g.generators()[rng.gen_range(0..8)]);
            }
            let (a, _) = reduce_to_fundamental(&p, &g)?;
            let (b, _) = reduce_to_fundamental(&w.apply(&p)?, &g)?;
            worst = worst.max(distance(&a, &b));
        }
        Ok(worst)
    }));
    out.push(run("surface constant chain", 1e-6, || {
        let surface = Surface::new(group.clone()?, SurfaceResolution::from(res))?;
        let p = p.clone()?;
        let one = SurfaceField::constant(c(1.0));
        let g = normal_op_data(&one, &p, &surface)?;
        let v = reconstruct_surface(&g, &p, &DiskPoint::from_xy(0.1, 0.3)?, &surface)?;
        Ok(rel(v, c(1.0)))
    }));
    out
}

fn bump_value(b: &Bump, y: &DiskPoint) -> Complex64 {
    b.amplitude * xray_hyperbolic::xray_disk::bump_profile(distance(&b.center, y), b.radius)
}

pub fn selftest(cfg: &RunConfig, perturb: Option<f64>) -> CliResult<Vec<Check>> {
    let rows = checks(cfg, perturb);
    println!(
        "{:<28} {:>12} {:>10}  verdict",
        "check", "residual", "tolerance"
    );
    for r in &rows {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        println!(
            "{:<28} {:>12.3e} {:>10.1e}  {verdict}",
            r.name, r.residual, r.tolerance
        );
        if !r.note.is_empty() {
            println!("    {}", r.note);
        }
    }
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} (residual {:.3e})", r.name, r.residual))
        .collect();
    if failed.is_empty() {
        println!(
            "selftest: all {} checks passed (seed {})",
            rows.len(),
            cfg.seed
        );
        Ok(rows)
    } else {
        Err(CliError::Failed(format!(
            "selftest: {} check(s) failed: {}",
            failed.len(),
            failed.join("; ")
        )))
    }
}
