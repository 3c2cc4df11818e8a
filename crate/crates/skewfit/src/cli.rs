//! Command-line interface definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "skewfit",
    version,
    about = "Bayesian inference for the skew-normal distribution: simulation studies, Gibbs-sampler fits, and prior elicitation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bias/MSE study for the shape estimators with location and scale fixed
    Simulate(SimulateArgs),
    /// Fit location, scale, and shape to a one-column CSV by Gibbs sampling
    Fit(FitArgs),
    /// Turn prior beliefs into hyperparameters
    Elicit(ElicitArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PriorKind {
    Normal,
    Skewnormal,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimandArg {
    Mean,
    Mode,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// True location of the generating law
    #[arg(long, default_value_t = 0.0)]
    pub true_xi: f64,
    /// True scale of the generating law
    #[arg(long, default_value_t = 1.0)]
    pub true_omega: f64,
    /// True shape of the generating law
    #[arg(long, default_value_t = 0.0)]
    pub true_alpha: f64,
    /// Sample size; repeat the flag for one study row per size
    #[arg(long, required = true)]
    pub n: Vec<usize>,
    /// Replications per row
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    /// Shape prior family
    #[arg(long, value_enum, default_value_t = PriorKind::Normal)]
    pub prior: PriorKind,
    #[arg(long, default_value_t = 0.0)]
    pub alpha0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub psi0: f64,
    /// Shape hyperparameter; required with --prior skewnormal
    #[arg(long)]
    pub lambda0: Option<f64>,
    /// Posterior summary used as the point estimate
    #[arg(long, value_enum, default_value_t = EstimandArg::Mean)]
    pub estimand: EstimandArg,
    /// Monte Carlo draws behind each posterior-mean estimate
    #[arg(long, default_value_t = 500)]
    pub mc_draws: usize,
    /// Latent-kernel sweeps per posterior draw
    #[arg(long, default_value_t = 50)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory (simstudy.csv, summary.json)
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// One-column numeric CSV (optional header)
    pub data: PathBuf,
    #[arg(long, value_enum, default_value_t = PriorKind::Skewnormal)]
    pub prior: PriorKind,
    #[arg(long, default_value_t = 0.0)]
    pub alpha0: f64,
    #[arg(long, default_value_t = 7.0)]
    pub psi0: f64,
    /// Shape hyperparameter; required with --prior skewnormal
    #[arg(long)]
    pub lambda0: Option<f64>,
    /// Location prior center
    #[arg(long)]
    pub xi0: f64,
    /// Location prior scale multiplier
    #[arg(long)]
    pub kappa: f64,
    /// Precision prior shape
    #[arg(long)]
    pub a: f64,
    /// Precision prior rate
    #[arg(long)]
    pub b: f64,
    #[arg(long, default_value_t = 12_000)]
    pub iters: usize,
    #[arg(long, default_value_t = 2_000)]
    pub burnin: usize,
    #[arg(long, default_value_t = 1)]
    pub thin: usize,
    /// Latent-kernel sweeps per shape draw
    #[arg(long, default_value_t = 50)]
    pub sweeps: usize,
    /// Number of density-band grid points
    #[arg(long, default_value_t = 101)]
    pub grid_points: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory (summary.json, bands.csv)
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ElicitArgs {
    /// Stated mean of the data distribution (moments mode)
    #[arg(long)]
    pub mean: Option<f64>,
    /// Stated standard deviation (moments mode)
    #[arg(long)]
    pub sd: Option<f64>,
    /// Stated skewness (moments mode)
    #[arg(long)]
    pub skew: Option<f64>,
    /// Dispersion dial for the moments mode
    #[arg(long, default_value_t = 1.0)]
    pub strength: f64,
    /// Prior scale (mass-curve mode)
    #[arg(long)]
    pub psi0: Option<f64>,
    /// Prior shape (mass-curve mode)
    #[arg(long)]
    pub lambda0: Option<f64>,
    /// Upper end of the integer lambda grid for the curve
    #[arg(long, default_value_t = 15)]
    pub lambda_max: u32,
    /// Output directory (summary.json, fig1.csv)
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}
