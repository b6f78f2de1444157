use std::path::PathBuf;

use num_complex::Complex64;
use xray_hyperbolic::xray_disk::OperatorResolution;

use crate::args::{Cli, Command, FieldChoice};
use crate::error::{CliError, CliResult};

/// Evaluation grid: `n × n` points on `[−extent, extent]²` in disk
/// coordinates, row-major with `y` outer; `n = 1` is the origin alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub n: usize,
    pub extent: f64,
}

impl Grid {
    pub fn points(&self) -> Vec<(f64, f64)> {
        if self.n == 1 {
            return vec![(0.0, 0.0)];
        }
        let step = 2.0 * self.extent / (self.n - 1) as f64;
        let at = |i: usize| -self.extent + step * i as f64;
        (0..self.n)
            .flat_map(|j| (0..self.n).map(move |i| (at(i), at(j))))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Selftest {
        perturb_octagon: Option<f64>,
    },
    TransformTable {
        lambdas: Vec<f64>,
    },
    KernelTable {
        r_max: f64,
        r_count: usize,
    },
    DiskRecon {
        field: FieldChoice,
        allow_noncompact: bool,
    },
    SurfaceRecon {
        field: FieldChoice,
        lift: usize,
    },
    LimitStudy {
        field: FieldChoice,
        z_list: Vec<f64>,
    },
}

/// A fully validated run; nothing is computed before this exists.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub z: Complex64,
    pub curvature: f64,
    pub resolution: OperatorResolution,
    pub grid: Grid,
    pub input: Option<PathBuf>,
    pub output: PathBuf,
    pub seed: u64,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_list(flag: &str, text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(usage(format!("--{flag}: '{s}' is not a finite number"))),
        })
        .collect()
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> CliResult<Self> {
        let c = &cli.common;
        let z = Complex64::new(c.z_re, c.z_im);
        if !(z.re.is_finite() && z.im.is_finite()) || z.re <= 0.0 {
            return Err(usage(format!(
                "the attenuation needs finite z with Re z > 0, got {z}"
            )));
        }
        if !(c.curvature.is_finite() && c.curvature < 0.0) {
            return Err(usage(format!(
                "--curvature must be negative, got {}",
                c.curvature
            )));
        }
        let resolution = OperatorResolution {
            n_theta: c.n_theta,
            n_r: c.n_r,
            radius: c.radius,
            fd_step: c.fd_step,
        };
        resolution.validate().map_err(|e| usage(e.to_string()))?;

        let (default_n, default_extent) = match cli.command {
            Command::DiskRecon { .. } => (21, 0.6),
            Command::LimitStudy { .. } => (1, 0.3),
            _ => (5, 0.3),
        };
        let grid = Grid {
            n: c.grid_n.unwrap_or(default_n),
            extent: c.grid_extent.unwrap_or(default_extent),
        };
        if !(1..=401).contains(&grid.n) {
            return Err(usage(format!(
                "--grid-n must lie in 1..=401, got {}",
                grid.n
            )));
        }
        if !(grid.extent > 0.0 && grid.extent < 0.7) {
            return Err(usage(format!(
                "--grid-extent must lie in (0, 0.7), got {}",
                grid.extent
            )));
        }

        let task = match &cli.command {
            Command::Selftest { perturb_octagon } => {
                if perturb_octagon.is_some_and(|e| !(e.is_finite() && e > -0.5)) {
                    return Err(usage("--perturb-octagon must be finite and > −0.5"));
                }
                Task::Selftest {
                    perturb_octagon: *perturb_octagon,
                }
            }
            Command::TransformTable { lambdas } => Task::TransformTable {
                lambdas: parse_list("lambdas", lambdas)?,
            },
            Command::KernelTable { r_max, r_count } => {
                if !(r_max.is_finite() && *r_max > 0.0) {
                    return Err(usage(format!("--r-max must be positive, got {r_max}")));
                }
                if *r_count > 100_000 {
                    return Err(usage(format!(
                        "--r-count must be at most 100000, got {r_count}"
                    )));
                }
                Task::KernelTable {
                    r_max: *r_max,
                    r_count: *r_count,
                }
            }
            Command::DiskRecon {
                field,
                allow_noncompact,
            } => {
                if c.curvature != -1.0 {
                    return Err(usage(
                        "disk-recon works on the unit-curvature disk; drop --curvature",
                    ));
                }
                if *field == FieldChoice::Constant && !allow_noncompact && c.input.is_none() {
                    return Err(usage(
                        "the constant field has no compact support; pass --allow-noncompact",
                    ));
                }
                Task::DiskRecon {
                    field: *field,
                    allow_noncompact: *allow_noncompact,
                }
            }
            Command::SurfaceRecon { field, lift } => {
                if *lift > 8 {
                    return Err(usage(format!("--lift must lie in 0..=8, got {lift}")));
                }
                Task::SurfaceRecon {
                    field: *field,
                    lift: *lift,
                }
            }
            Command::LimitStudy { field, z_list } => {
                let z_list = parse_list("z-list", z_list)?;
                if z_list.len() < 3 {
                    return Err(usage("--z-list needs at least 3 values"));
                }
                if let Some(z) = z_list.iter().find(|z| !(**z > 0.0 && **z <= 0.5)) {
                    return Err(usage(format!(
                        "--z-list values must lie in (0, 0.5], got {z}"
                    )));
                }
                for (i, z) in z_list.iter().enumerate() {
                    if z_list[..i].contains(z) {
                        return Err(usage(format!("--z-list repeats {z}")));
                    }
                }
                Task::LimitStudy {
                    field: *field,
                    z_list,
                }
            }
        };
        if c.input.is_some() && !matches!(task, Task::DiskRecon { .. }) {
            return Err(usage("--input is only read by disk-recon"));
        }
        let output = c
            .output
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.csv", cli.command.name())));
        Ok(Self {
            task,
            z,
            curvature: c.curvature,
            resolution,
            grid,
            input: c.input.clone(),
            output,
            seed: c.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn cfg(args: &[&str]) -> CliResult<RunConfig> {
        let cli =
            Cli::try_parse_from(std::iter::once("xrayh").chain(args.iter().copied())).unwrap();
        RunConfig::from_cli(&cli)
    }

    #[test]
    fn defaults_and_validation() {
        let c = cfg(&["disk-recon"]).unwrap();
        assert_eq!(c.grid, Grid { n: 21, extent: 0.6 });
        assert_eq!(c.output, PathBuf::from("disk-recon.csv"));
        assert_eq!(c.z, Complex64::new(0.5, 0.0));
        assert!(matches!(
            cfg(&["disk-recon", "--field", "constant"]),
            Err(CliError::Usage(_))
        ));
        assert!(cfg(&["disk-recon", "--field", "constant", "--allow-noncompact"]).is_ok());
        assert!(matches!(
            cfg(&["kernel-table", "--z-re", "-1"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cfg(&["surface-recon", "--lift", "9"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cfg(&["limit-study", "--z-list", "0.4,0.2"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cfg(&["limit-study", "--z-list", "0.4,0.2,0.7"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cfg(&["selftest", "--n-theta", "2"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cfg(&["selftest", "--grid-extent", "0.9"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            cfg(&["selftest", "--input", "x.csv"]),
            Err(CliError::Usage(_))
        ));
        let t = cfg(&["transform-table", "--lambdas", ""]).unwrap();
        assert_eq!(t.task, Task::TransformTable { lambdas: vec![] });
        assert!(matches!(
            cfg(&["transform-table", "--lambdas", "1,x"]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn grid_points() {
        assert_eq!(Grid { n: 1, extent: 0.3 }.points(), vec![(0.0, 0.0)]);
        let p = Grid { n: 3, extent: 0.5 }.points();
        assert_eq!(p.len(), 9);
        assert_eq!(p[0], (-0.5, -0.5));
        assert_eq!(p[1], (0.0, -0.5));
        assert_eq!(p[8], (0.5, 0.5));
    }
}
