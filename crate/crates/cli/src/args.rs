use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sphere-green",
    version,
    about = "Fundamental solutions of Laplace's equation on S_R^d: kernels, Fourier and Gegenbauer expansions, potentials",
    args_override_self = true
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (relative paths resolve against --out-dir when given).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Default output directory; output goes to <dir>/<command>.<ext> when --out is absent.
    #[arg(long, global = true, env = "SPHGREEN_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// Omit the timestamp metadata line.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// JSON object of flag values (keys are long flag names) overriding the command line.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate kernels, coefficients, expansions and potentials.
    Eval {
        #[command(subcommand)]
        what: Eval,
    },
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum Eval {
    /// Fundamental solution G_R^d.
    Greens(GreensArgs),
    /// Closed-form Fourier coefficients on S^2.
    FourierS2(S2Args),
    /// Elliptic-integral Fourier coefficients on S^3.
    FourierS3(S3Args),
    /// Fourier coefficients by quadrature on S^d.
    FourierQuad(QuadArgs),
    /// Truncated Gegenbauer expansion.
    Gegenbauer(GegenbauerArgs),
    /// Newtonian potential of a density on a theta grid.
    Potential(PotentialArgs),
    /// Binding energy of a uniform disc (d = 2) or ball (d = 3).
    Binding(BindingArgs),
    /// Superintegrable density-potential pairs on a theta grid.
    Superintegrable(SuperArgs),
}

/// Two points of S_R^d by their angles.
#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long = "theta-p")]
    pub theta_p: Option<f64>,
    /// Intermediate angles theta_2..theta_{d-1} of the first point.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub mids: Vec<f64>,
    #[arg(long = "mids-p", value_delimiter = ',', allow_negative_numbers = true)]
    pub mids_p: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long = "phi-p", default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi_p: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GreensArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Geodesic angle between the points (alternative to the point angles).
    #[arg(long = "theta-sep")]
    pub theta_sep: Option<f64>,
    #[command(flatten)]
    pub pair: PairArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MRange {
    /// Single order m.
    #[arg(long)]
    pub m: Option<u32>,
    /// All orders 0..=m-max.
    #[arg(long = "m-max")]
    pub m_max: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct S2Args {
    #[command(flatten)]
    pub m: MRange,
    #[arg(long)]
    pub theta: f64,
    #[arg(long = "theta-p")]
    pub theta_p: f64,
}

#[derive(Debug, Clone, Args)]
pub struct S3Args {
    #[command(flatten)]
    pub m: MRange,
    #[arg(long)]
    pub theta: f64,
    #[arg(long = "theta-p")]
    pub theta_p: f64,
    #[arg(long)]
    pub theta2: f64,
    #[arg(long = "theta2-p")]
    pub theta2_p: f64,
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    #[arg(long)]
    pub d: usize,
    #[command(flatten)]
    pub m: MRange,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub pair: PairArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GegenbauerArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Truncation degree (cap when --tol is given).
    #[arg(long = "L", default_value_t = 40)]
    pub l: usize,
    /// Stop automatically once terms fall below tol times the sum.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub pair: PairArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    Disc2,
    Ball3,
    CurveSegment,
    Oscillator,
    Kepler,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[arg(long, value_enum, required_unless_present = "density_json")]
    pub density: Option<DensityKind>,
    /// DensitySpec JSON file (any kind, including tabulated_axisymmetric).
    #[arg(long = "density-json", conflicts_with = "density")]
    pub density_json: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub rho0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub theta0: Option<f64>,
    #[arg(long)]
    pub varphi: Option<f64>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub density: DensityArgs,
    /// Grid a:b:step (inclusive) or a comma list; vartheta for the curve segment.
    #[arg(long = "theta-grid", alias = "theta")]
    pub theta_grid: String,
    /// phi_1 of the field points (curve segment only).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CapKind {
    Disc2,
    Ball3,
}

#[derive(Debug, Clone, Args)]
pub struct BindingArgs {
    #[arg(long, value_enum)]
    pub density: CapKind,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub rho0: f64,
    /// One or more cap radii (comma list or a:b:step).
    #[arg(long)]
    pub theta0: String,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Add a double-quadrature column.
    #[arg(long)]
    pub quadrature: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    Oscillator,
    Kepler,
}

#[derive(Debug, Clone, Args)]
pub struct SuperArgs {
    #[arg(long, value_enum)]
    pub kind: PairKind,
    #[arg(long)]
    pub d: usize,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long = "theta-grid", alias = "theta")]
    pub theta_grid: String,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run a single suite.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Radii for the flat-space slope fits.
    #[arg(long = "R", value_delimiter = ',')]
    pub radii: Vec<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}
