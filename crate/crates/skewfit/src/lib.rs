//! Command implementations behind the `skewfit` binary.
//!
//! Output contract: every command writes `summary.json` (stable key order,
//! full configuration echo) into the output directory, plus its CSV artifact
//! (`simstudy.csv`, `bands.csv`, or `fig1.csv`). All commands are
//! deterministic functions of their flags: repeating a run with the same
//! seed reproduces every output byte for byte. Floats in CSVs carry 17
//! significant digits so re-ingesting them is exact.

pub mod cli;
pub mod elicit;
pub mod fit;
pub mod io;
pub mod simulate;

use serde::Serialize;

use skewnormal::gibbs::GibbsConfig;
use skewnormal::posterior::ShapePrior;
use skewnormal::NigPrior;

use cli::{Cli, Command, ElicitArgs, EstimandArg, FitArgs, PriorKind, SimulateArgs};
use simulate::{Estimand, ExperimentSpec, SimRow};

/// Command failure with the exit-code split the binary reports:
/// 2 for usage errors, 3 for data errors.
#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Data(_) => 3,
        }
    }
}

fn shape_prior(kind: PriorKind, alpha0: f64, psi0: f64, lambda0: Option<f64>) -> Result<ShapePrior, CmdError> {
    match kind {
        PriorKind::Normal => {
            if lambda0.is_some() {
                return Err(CmdError::Usage(
                    "--lambda0 applies only to --prior skewnormal".into(),
                ));
            }
            ShapePrior::normal(alpha0, psi0).map_err(|e| CmdError::Usage(e.to_string()))
        }
        PriorKind::Skewnormal => {
            let lambda0 = lambda0
                .ok_or_else(|| CmdError::Usage("--prior skewnormal requires --lambda0".into()))?;
            ShapePrior::skew_normal(alpha0, psi0, lambda0)
                .map_err(|e| CmdError::Usage(e.to_string()))
        }
    }
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

pub fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Simulate(args) => run_simulate(args),
        Command::Fit(args) => run_fit_cmd(args),
        Command::Elicit(args) => run_elicit(args),
    }
}

#[derive(Serialize)]
struct SimulateSummary {
    command: String,
    config: SimulateConfigEcho,
    rows: Vec<SimRow>,
}

#[derive(Serialize)]
struct SimulateConfigEcho {
    true_xi: f64,
    true_omega: f64,
    true_alpha: f64,
    n: Vec<usize>,
    reps: usize,
    prior: fit::PriorEcho,
    estimand: Estimand,
    mc_draws: usize,
    sweeps: usize,
    seed: u64,
}

fn run_simulate(args: SimulateArgs) -> Result<(), CmdError> {
    let prior = shape_prior(args.prior, args.alpha0, args.psi0, args.lambda0)?;
    let true_params = skewnormal::SkewNormalParams::new(args.true_xi, args.true_omega, args.true_alpha)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let estimand = match args.estimand {
        EstimandArg::Mean => Estimand::PosteriorMean,
        EstimandArg::Mode => Estimand::PosteriorMode,
    };
    let mut rows = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let spec = ExperimentSpec {
            true_params,
            n,
            replications: args.reps,
            estimand,
            prior,
            fixed_loc_scale: true,
            seed: args.seed,
            mc_draws: args.mc_draws,
            ltn_sweeps: args.sweeps,
        };
        rows.push(simulate::run_simulation(&spec)?);
    }
    io::write_output(&args.out, "simstudy.csv", &simulate::simstudy_csv(&rows))?;
    let summary = SimulateSummary {
        command: "simulate".into(),
        config: SimulateConfigEcho {
            true_xi: args.true_xi,
            true_omega: args.true_omega,
            true_alpha: args.true_alpha,
            n: args.n.clone(),
            reps: args.reps,
            prior: (&prior).into(),
            estimand,
            mc_draws: args.mc_draws,
            sweeps: args.sweeps,
            seed: args.seed,
        },
        rows,
    };
    io::write_output(&args.out, "summary.json", &to_pretty_json(&summary))
}

fn run_fit_cmd(args: FitArgs) -> Result<(), CmdError> {
    let prior = shape_prior(args.prior, args.alpha0, args.psi0, args.lambda0)?;
    let nig = NigPrior::new(args.xi0, args.kappa, args.a, args.b)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let gibbs = GibbsConfig {
        n_iter: args.iters,
        burn_in: args.burnin,
        seed: args.seed,
        ltn_sweeps: args.sweeps,
        thin: args.thin,
    };
    gibbs.validate().map_err(|e| CmdError::Usage(e.to_string()))?;

    let y = io::read_numeric_column(&args.data)?;
    let report = fit::run_fit(&y, &prior, &nig, &gibbs, args.grid_points)?;
    io::write_output(&args.out, "bands.csv", &fit::bands_csv(&report.bands))?;
    io::write_output(&args.out, "summary.json", &to_pretty_json(&report))?;
    eprintln!(
        "fit: n={} iters={} wall={:.2}s -> {}",
        report.n,
        args.iters,
        report.wall_time_secs,
        args.out.display()
    );
    Ok(())
}

fn run_elicit(args: ElicitArgs) -> Result<(), CmdError> {
    let moments_mode = [args.mean, args.sd, args.skew].iter().any(Option::is_some);
    let curve_mode = args.psi0.is_some() || args.lambda0.is_some();
    match (moments_mode, curve_mode) {
        (true, true) => Err(CmdError::Usage(
            "pass either the moment flags (--mean --sd --skew) or the mass-curve flags (--psi0 --lambda0), not both".into(),
        )),
        (false, false) => Err(CmdError::Usage(
            "pass the moment flags (--mean --sd --skew) or the mass-curve flags (--psi0 --lambda0)".into(),
        )),
        (true, false) => {
            let (Some(mean), Some(sd), Some(skew)) = (args.mean, args.sd, args.skew) else {
                return Err(CmdError::Usage("moments mode needs --mean, --sd, and --skew".into()));
            };
            let report = elicit::elicit_moments(mean, sd, skew, args.strength)?;
            io::write_output(&args.out, "summary.json", &to_pretty_json(&report))
        }
        (false, true) => {
            let (Some(psi0), Some(lambda0)) = (args.psi0, args.lambda0) else {
                return Err(CmdError::Usage("mass-curve mode needs --psi0 and --lambda0".into()));
            };
            let report = elicit::elicit_mass_curve(psi0, lambda0, args.lambda_max)?;
            let curve = report.curve.as_deref().expect("mass-curve mode always tabulates");
            io::write_output(&args.out, "fig1.csv", &elicit::fig_csv(curve))?;
            io::write_output(&args.out, "summary.json", &to_pretty_json(&report))
        }
    }
}
