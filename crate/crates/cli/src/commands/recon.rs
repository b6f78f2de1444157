use num_complex::Complex64;
use xray_hyperbolic::geometry::{DiskPoint, IsometryElement};
use xray_hyperbolic::surface::{
    normal_op_data, reconstruct_surface_limit_from_field, reconstruct_surface_many, Surface,
    SurfaceField, SurfaceResolution,
};
use xray_hyperbolic::xray_disk::{
    normal_op_attenuated, radial_data_table, reconstruct_disk, AttenuationParam, Bump,
    ConstantField, PolarTableField, ScalarField,
};

use crate::args::FieldChoice;
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::fieldcsv::{read_field_csv, GridField};
use crate::output::{fmt_num, write_plot_script, Table};

pub const DISK_HEADER: [&str; 5] = ["x", "y", "f_true", "f_reconstructed", "abs_error"];

/// Largest absolute error and the same relative to `max |f_true|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconSummary {
    pub points: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
}

#[derive(Default)]
struct Tally {
    points: usize,
    max_abs: f64,
    max_true: f64,
}

impl Tally {
    fn add(&mut self, truth: Complex64, rec: Complex64) -> f64 {
        let err = (rec - truth).norm();
        self.points += 1;
        self.max_abs = self.max_abs.max(err);
        self.max_true = self.max_true.max(truth.norm());
        err
    }

    fn summary(&self) -> ReconSummary {
        let rel = if self.max_true > 0.0 {
            self.max_abs / self.max_true
        } else {
            self.max_abs
        };
        ReconSummary {
            points: self.points,
            max_abs_error: self.max_abs,
            max_rel_error: rel,
        }
    }
}

fn base_cells(x: f64, y: f64, truth: Complex64, rec: Complex64, err: f64) -> Vec<String> {
    vec![
        fmt_num(x),
        fmt_num(y),
        fmt_num(truth.re),
        fmt_num(rec.re),
        fmt_num(err),
    ]
}

fn report(cmd: &str, cfg: &RunConfig, s: &ReconSummary) -> CliResult<()> {
    let script = write_plot_script(
        &cfg.output,
        &[(3, "f_true"), (4, "f_reconstructed"), (5, "abs_error")],
    )?;
    println!(
        "{cmd}: {} points, max abs error {:.3e}, max relative error {:.3e}; wrote {} and {}",
        s.points,
        s.max_abs_error,
        s.max_rel_error,
        cfg.output.display(),
        script.display()
    );
    Ok(())
}

/// Radius of the radial data table: the smoothing rays of `S` stop where
/// their tail bound is negligible, well inside this.
const DISK_TABLE_RADIUS: f64 = 17.0;
const DISK_TABLE_PANEL: f64 = 0.125;

pub fn disk_recon(cfg: &RunConfig, field: FieldChoice) -> CliResult<ReconSummary> {
    let p = AttenuationParam::new(cfg.z, -1.0)?;
    let res = cfg.resolution;
    let (truth, data): (Box<dyn ScalarField>, Box<dyn ScalarField>) = if let Some(input) =
        &cfg.input
    {
        let grid = GridField::from_rows(&read_field_csv(input)?)?;
        let r_max = grid.support_radius() + 10.0;
        let data = PolarTableField::normal_op_data(&grid, &p, &res, r_max, 0.25, 32)?;
        (Box::new(grid), Box::new(data))
    } else {
        match field {
            FieldChoice::Bump => {
                let bump = Bump::centered(1.0)?;
                let data = radial_data_table(&bump, &p, &res, DISK_TABLE_RADIUS, DISK_TABLE_PANEL)?;
                (Box::new(bump), Box::new(data))
            }
            FieldChoice::Constant => {
                let one = ConstantField::real(1.0);
                let g = normal_op_attenuated(&one, &p, &DiskPoint::origin(), &res)?;
                (Box::new(one), Box::new(ConstantField(g)))
            }
            FieldChoice::Zero => (
                Box::new(ConstantField::real(0.0)),
                Box::new(ConstantField::real(0.0)),
            ),
        }
    };
    let mut table = Table::create(&cfg.output, &DISK_HEADER)?;
    let mut tally = Tally::default();
    for (x, y) in cfg.grid.points() {
        let q = DiskPoint::from_xy(x, y)?;
        let f = truth.eval(&q)?;
        let rec = reconstruct_disk(&*data, &p, &q, &res)?;
        let err = tally.add(f, rec);
        table.row(&base_cells(x, y, f, rec, err))?;
    }
    table.finish()?;
    let s = tally.summary();
    report("disk-recon", cfg, &s)?;
    Ok(s)
}

fn surface_field(surface: &Surface, field: FieldChoice) -> CliResult<SurfaceField> {
    Ok(match field {
        FieldChoice::Bump => {
            let radius = surface.group().edge_midpoint_radius() - 0.2;
            SurfaceField::bump(surface.group(), Bump::centered(radius)?)?
        }
        FieldChoice::Constant => SurfaceField::constant(Complex64::new(1.0, 0.0)),
        FieldChoice::Zero => SurfaceField::zero(),
    })
}

fn lift_element(surface: &Surface, lift: usize) -> IsometryElement {
    match lift {
        0 => IsometryElement::identity(),
        k => surface.group().generators()[k - 1],
    }
}

pub fn surface_recon(cfg: &RunConfig, field: FieldChoice, lift: usize) -> CliResult<ReconSummary> {
    let surface = Surface::octagon(SurfaceResolution::from(cfg.resolution))?;
    let p = AttenuationParam::new(cfg.z, cfg.curvature)?;
    let f = surface_field(&surface, field)?;
    let g = normal_op_data(&f, &p, &surface)?;
    let gamma = lift_element(&surface, lift);
    let grid = cfg.grid.points();
    let points = grid
        .iter()
        .map(|&(x, y)| DiskPoint::from_xy(x, y))
        .collect::<Result<Vec<_>, _>>()?;
    let lifted = points
        .iter()
        .map(|q| gamma.apply(q))
        .collect::<Result<Vec<_>, _>>()?;
    let recs = reconstruct_surface_many(&g, &p, &lifted, &surface)?;

    let mut header = DISK_HEADER.to_vec();
    header.push("lift");
    let mut table = Table::create(&cfg.output, &header)?;
    let mut tally = Tally::default();
    for ((&(x, y), q), rec) in grid.iter().zip(&points).zip(recs) {
        let truth = f.eval_on_domain(&surface.reduce(q)?.0)?;
        let err = tally.add(truth, rec);
        let mut cells = base_cells(x, y, truth, rec, err);
        cells.push(lift.to_string());
        table.row(&cells)?;
    }
    table.finish()?;
    let s = tally.summary();
    report("surface-recon", cfg, &s)?;
    Ok(s)
}

/// Returns the summary and, per point, the nested extrapolation indicators.
pub fn limit_study(
    cfg: &RunConfig,
    field: FieldChoice,
    z_list: &[f64],
) -> CliResult<(ReconSummary, Vec<Vec<f64>>)> {
    let surface = Surface::octagon(SurfaceResolution::from(cfg.resolution))?;
    let f = surface_field(&surface, field)?;
    let grid = cfg.grid.points();
    let points = grid
        .iter()
        .map(|&(x, y)| DiskPoint::from_xy(x, y))
        .collect::<Result<Vec<_>, _>>()?;
    let (limits, f0) =
        reconstruct_surface_limit_from_field(&f, cfg.curvature, &points, &surface, z_list)?;

    let z_columns: Vec<String> = z_list.iter().map(|z| format!("rec_z{z}")).collect();
    let mut header = DISK_HEADER.to_vec();
    header.push("lift");
    header.extend(z_columns.iter().map(String::as_str));
    header.push("indicator");
    let mut table = Table::create(&cfg.output, &header)?;
    let mut tally = Tally::default();
    let mut indicators = Vec::with_capacity(points.len());
    for ((&(x, y), q), lim) in grid.iter().zip(&points).zip(&limits) {
        let truth = f0.eval_on_domain(&surface.reduce(q)?.0)?;
        let rec = lim.value();
        let err = tally.add(truth, rec);
        let mut cells = base_cells(x, y, truth, rec, err);
        cells.push("0".into());
        cells.extend(lim.samples.iter().map(|(_, v)| fmt_num(v.re)));
        cells.push(fmt_num(lim.extrapolation.error_indicator));
        table.row(&cells)?;
        indicators.push(lim.extrapolation.indicators());
    }
    table.finish()?;
    let s = tally.summary();
    report("limit-study", cfg, &s)?;
    for (i, ind) in indicators.iter().enumerate() {
        let text: Vec<String> = ind.iter().map(|v| format!("{v:.3e}")).collect();
        println!(
            "  point {i}: nested-degree indicators [{}]",
            text.join(", ")
        );
    }
    Ok((s, indicators))
}
