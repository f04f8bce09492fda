use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "wrm",
    version,
    about = "Weighted-residual discretization and Newton/Picard solves of nonlinear boundary-value problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and solve one problem, reporting samples of the solution.
    #[command(allow_negative_numbers = true)]
    Solve(RunArgs),
    /// Compare analytic and finite-difference Jacobians at random points.
    #[command(allow_negative_numbers = true)]
    JacobianCheck(RunArgs),
    /// Run the randomized Hadamard-product property suite.
    #[command(allow_negative_numbers = true)]
    Properties(RunArgs),
    /// Sweep the basis size and tabulate iterations and errors.
    #[command(allow_negative_numbers = true)]
    Compare(RunArgs),
    /// List problems, bases and solver options.
    List(ListArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Problem name; same as --problem.
    #[arg(value_name = "PROBLEM")]
    pub problem_name: Option<String>,
    #[arg(long)]
    pub problem: Option<String>,
    /// novel | traditional
    #[arg(long)]
    pub scheme: Option<String>,
    /// Number of basis functions.
    #[arg(long)]
    pub n: Option<usize>,
    /// sine | legendre | monomial
    #[arg(long)]
    pub basis: Option<String>,
    /// sjt | fd
    #[arg(long)]
    pub jacobian: Option<String>,
    /// newton | picard
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub tol_residual: Option<f64>,
    #[arg(long)]
    pub tol_step: Option<f64>,
    #[arg(long)]
    pub damping: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random points for jacobian-check.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Random matrix pairs for properties.
    #[arg(long)]
    pub cases: Option<usize>,
    /// json | csv | table
    #[arg(long)]
    pub output: Option<String>,
    /// JSON file with keys mirroring the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Heat slab: conductivity slope.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Heat slab: temperature at x = 0.
    #[arg(long)]
    pub t0: Option<f64>,
    /// Heat slab: flux at x = L.
    #[arg(long)]
    pub q_l: Option<f64>,
    /// Heat slab: thickness L.
    #[arg(long)]
    pub length: Option<f64>,
    /// Beam: normalized load group.
    #[arg(long)]
    pub load: Option<f64>,
    /// Beam: normalized axial stiffness group.
    #[arg(long)]
    pub stiffness: Option<f64>,
    /// Basis sizes swept by compare, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub ns: Option<Vec<usize>>,
    /// Report wall-clock seconds (otherwise null, keeping output byte-stable).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ListArgs {
    /// json | csv | table
    #[arg(long)]
    pub output: Option<String>,
}

pub fn parse<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}
