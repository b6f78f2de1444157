//! Field CSV files (`x,y,value_re,value_im`) and the bilinear field they
//! describe.

use std::path::Path;

use num_complex::Complex64;
use xray_hyperbolic::geometry::DiskPoint;
use xray_hyperbolic::xray_disk::ScalarField;

use crate::error::{CliError, CliResult};
use crate::output::fmt_num;

pub const FIELD_HEADER: [&str; 4] = ["x", "y", "value_re", "value_im"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldRow {
    pub x: f64,
    pub y: f64,
    pub value: Complex64,
}

/// Reads and checks a field CSV: exact header, four finite numbers per
/// row, every point strictly inside the unit disk.
pub fn read_field_csv(path: &Path) -> CliResult<Vec<FieldRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(CliError::csv(path))?;
    let header = reader.headers().map_err(CliError::csv(path))?.clone();
    if header.iter().ne(FIELD_HEADER) {
        return Err(CliError::Input(format!(
            "{}: header must be exactly '{}', got '{}'",
            path.display(),
            FIELD_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(CliError::csv(path))?;
        if record.len() != 4 {
            return Err(CliError::Input(format!(
                "{} row {line}: expected 4 fields",
                path.display()
            )));
        }
        let mut v = [0.0; 4];
        for (k, field) in record.iter().enumerate() {
            v[k] = match field.trim().parse::<f64>() {
                Ok(x) if x.is_finite() => x,
                _ => {
                    return Err(CliError::Input(format!(
                        "{} row {line}: '{field}' is not a finite number",
                        path.display()
                    )))
                }
            };
        }
        if v[0] * v[0] + v[1] * v[1] >= 1.0 {
            return Err(CliError::Input(format!(
                "{} row {line}: point ({}, {}) lies outside the unit disk",
                path.display(),
                v[0],
                v[1]
            )));
        }
        rows.push(FieldRow {
            x: v[0],
            y: v[1],
            value: Complex64::new(v[2], v[3]),
        });
    }
    Ok(rows)
}

pub fn write_field_csv(path: &Path, rows: &[FieldRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(CliError::csv(path))?;
    w.write_record(FIELD_HEADER).map_err(CliError::csv(path))?;
    for r in rows {
        w.write_record([
            fmt_num(r.x),
            fmt_num(r.y),
            fmt_num(r.value.re),
            fmt_num(r.value.im),
        ])
        .map_err(CliError::csv(path))?;
    }
    w.flush().map_err(CliError::io(path))
}

/// Bilinear interpolation on a rectilinear grid, zero outside the grid
/// rectangle (the convex hull of the samples), so the field has compact
/// support.
#[derive(Debug, Clone)]
pub struct GridField {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Row-major, `y` outer.
    values: Vec<Complex64>,
    bound: f64,
    support: f64,
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

impl GridField {
    /// The rows must cover every `(x, y)` of a rectilinear grid exactly once,
    /// with at least two distinct values on each axis.
    pub fn from_rows(rows: &[FieldRow]) -> CliResult<Self> {
        let xs = sorted_unique(rows.iter().map(|r| r.x).collect());
        let ys = sorted_unique(rows.iter().map(|r| r.y).collect());
        if xs.len() < 2 || ys.len() < 2 {
            return Err(CliError::Input(
                "field samples must span at least a 2×2 grid".into(),
            ));
        }
        if xs.len() * ys.len() != rows.len() {
            return Err(CliError::Input(format!(
                "{} rows do not form a rectilinear grid ({} distinct x, {} distinct y)",
                rows.len(),
                xs.len(),
                ys.len()
            )));
        }
        let mut values = vec![None; rows.len()];
        for (i, r) in rows.iter().enumerate() {
            let ix = xs.partition_point(|&x| x < r.x);
            let iy = ys.partition_point(|&y| y < r.y);
            let slot = &mut values[iy * xs.len() + ix];
            if slot.is_some() {
                return Err(CliError::Input(format!(
                    "row {}: point ({}, {}) appears twice",
                    i + 2,
                    r.x,
                    r.y
                )));
            }
            *slot = Some(r.value);
        }
        let values: Vec<Complex64> = values
            .into_iter()
            .map(|v| v.expect("grid is complete"))
            .collect();
        let bound = 1.1 * values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let corner = [xs[0], *xs.last().unwrap()]
            .iter()
            .flat_map(|&x| [ys[0], *ys.last().unwrap()].map(|y| (x * x + y * y).sqrt()))
            .fold(0.0, f64::max);
        let support = 2.0 * corner.atanh();
        Ok(Self {
            xs,
            ys,
            values,
            bound,
            support,
        })
    }

    fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[iy * self.xs.len() + ix]
    }
}

fn cell(axis: &[f64], t: f64) -> Option<(usize, f64)> {
    let (first, last) = (axis[0], *axis.last()?);
    if !(first..=last).contains(&t) {
        return None;
    }
    let i = axis.partition_point(|&a| a <= t).clamp(1, axis.len() - 1) - 1;
    Some((i, (t - axis[i]) / (axis[i + 1] - axis[i])))
}

impl ScalarField for GridField {
    fn eval(&self, p: &DiskPoint) -> xray_hyperbolic::Result<Complex64> {
        let w = p.coord();
        let (Some((i, u)), Some((j, v))) = (cell(&self.xs, w.re), cell(&self.ys, w.im)) else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        Ok(self.at(i, j) * ((1.0 - u) * (1.0 - v))
            + self.at(i + 1, j) * (u * (1.0 - v))
            + self.at(i, j + 1) * ((1.0 - u) * v)
            + self.at(i + 1, j + 1) * (u * v))
    }
    fn bound(&self) -> f64 {
        self.bound
    }
    fn support_radius(&self) -> f64 {
        self.support
    }
}
