use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "xrayh",
    version,
    about = "Attenuated X-ray normal operators on the hyperbolic disk and the genus-2 surface",
    long_about = "Self-tests, transform and kernel tables, and reconstruction runs.\n\
                  Exit codes: 0 success, 1 failed check, 2 usage error, 3 input-data error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant checks of every module and print a pass/fail table.
    Selftest {
        /// Scale the octagon inradius by (1 + EPS) before building the group (negative control).
        #[arg(long, hide = true, value_name = "EPS")]
        perturb_octagon: Option<f64>,
    },
    /// Spherical transform of the Π₀ kernel by quadrature against its closed form, with σ̃ and the product identity.
    TransformTable {
        /// Comma-separated λ values; an empty list writes only the header.
        #[arg(long, default_value = "0,1,2,3,4,5", allow_hyphen_values = true)]
        lambdas: String,
    },
    /// The radial kernels e^{−zr}/sinh r and e^{−(z+1)r}/sinh r on an r grid.
    KernelTable {
        /// Largest radius.
        #[arg(long, default_value_t = 5.0)]
        r_max: f64,
        /// Number of radii, equally spaced on (0, r_max].
        #[arg(long, default_value_t = 50)]
        r_count: usize,
    },
    /// Reconstruct a field on the disk from its attenuated normal-operator data.
    DiskRecon {
        /// Built-in field (ignored with --input).
        #[arg(long, value_enum, default_value_t = FieldChoice::Bump)]
        field: FieldChoice,
        /// Accept fields without compact support (the constant field).
        #[arg(long)]
        allow_noncompact: bool,
    },
    /// Reconstruct a field on the genus-2 octagon surface.
    SurfaceRecon {
        #[arg(long, value_enum, default_value_t = FieldChoice::Bump)]
        field: FieldChoice,
        /// Evaluate at the lift g·q: 0 is q itself, k = 1..8 uses generator k−1.
        #[arg(long, default_value_t = 0)]
        lift: usize,
    },
    /// Unattenuated reconstruction of the mean-zero part of a surface field via z → 0.
    LimitStudy {
        #[arg(long, value_enum, default_value_t = FieldChoice::Bump)]
        field: FieldChoice,
        /// Comma-separated attenuations in (0, 0.5], in extrapolation order.
        #[arg(long, default_value = "0.4,0.2,0.1,0.05")]
        z_list: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Selftest { .. } => "selftest",
            Command::TransformTable { .. } => "transform-table",
            Command::KernelTable { .. } => "kernel-table",
            Command::DiskRecon { .. } => "disk-recon",
            Command::SurfaceRecon { .. } => "surface-recon",
            Command::LimitStudy { .. } => "limit-study",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldChoice {
    /// Smooth bump: radius 1 at the origin on the disk; 0.2 inside the domain on the surface.
    Bump,
    /// The constant 1.
    Constant,
    /// The zero field.
    Zero,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Real part of the attenuation z.
    #[arg(long, global = true, default_value_t = 0.5, allow_hyphen_values = true)]
    pub z_re: f64,
    /// Imaginary part of the attenuation z.
    #[arg(long, global = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub z_im: f64,
    /// Curvature K < 0.
    #[arg(long, short = 'K', global = true, default_value_t = -1.0, allow_hyphen_values = true)]
    pub curvature: f64,
    /// Fiber directions per point.
    #[arg(long, global = true, default_value_t = 64)]
    pub n_theta: usize,
    /// Nodes per ray.
    #[arg(long, global = true, default_value_t = 600)]
    pub n_r: usize,
    /// Ray truncation radius [default: from the tail bound].
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Step of the five-point Laplacian, in [1e-4, 1e-2].
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub fd_step: f64,
    /// Grid points per axis [default: 21 disk-recon, 5 surface-recon, 1 limit-study].
    #[arg(long, global = true)]
    pub grid_n: Option<usize>,
    /// Grid half-width in disk coordinates, below 0.7 [default: 0.6 disk-recon, 0.3 surface].
    #[arg(long, global = true)]
    pub grid_extent: Option<f64>,
    /// Field CSV (header x,y,value_re,value_im) on a rectilinear grid; disk-recon only.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output CSV [default: <command>.csv]; reconstructions also write <output>.gp.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed of the randomized self-test suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}
