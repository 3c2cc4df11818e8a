//! The elicit command: hyperparameters from moment statements, or the
//! prior-mass curve for a skewness-direction belief.

use serde::Serialize;

use skewnormal::elicitation::{
    elicit_from_moments, fig_curve, prior_mean_alpha, prob_alpha_negative,
};
use skewnormal::posterior::ShapePrior;
use skewnormal::CentralMoments;

use crate::fit::{NigEcho, PriorEcho};
use crate::CmdError;

#[derive(Debug, Clone, Serialize)]
pub struct MomentsEcho {
    pub mean: f64,
    pub sd: f64,
    pub skew: f64,
    pub strength: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImpliedParams {
    pub xi: f64,
    pub omega: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElicitReport {
    pub command: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<MomentsEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implied: Option<ImpliedParams>,
    pub prior: PriorEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nig: Option<NigEcho>,
    pub prob_alpha_negative: f64,
    pub prior_mean_alpha: f64,
    /// (lambda0, Pr(alpha < 0)) pairs; present in mass-curve mode.
    #[serde(skip)]
    pub curve: Option<Vec<(f64, f64)>>,
}

/// Moment-statement mode.
pub fn elicit_moments(mean: f64, sd: f64, skew: f64, strength: f64) -> Result<ElicitReport, CmdError> {
    let moments = CentralMoments::new(mean, sd, skew).map_err(|e| CmdError::Data(e.to_string()))?;
    let e = elicit_from_moments(&moments, strength).map_err(|e| CmdError::Data(e.to_string()))?;
    Ok(ElicitReport {
        command: "elicit".into(),
        mode: "moments".into(),
        moments: Some(MomentsEcho { mean, sd, skew, strength }),
        implied: Some(ImpliedParams {
            xi: e.implied_xi,
            omega: e.implied_omega,
            alpha: e.implied_alpha,
        }),
        prior: (&e.shape).into(),
        nig: Some(NigEcho { xi0: e.nig.xi0, kappa: e.nig.kappa, a: e.nig.a, b: e.nig.b }),
        prob_alpha_negative: prob_alpha_negative(&e.shape),
        prior_mean_alpha: prior_mean_alpha(&e.shape),
        curve: None,
    })
}

/// Skewness-direction mode: a zero-centered skew-normal prior plus the
/// prior-mass curve over an integer lambda grid.
pub fn elicit_mass_curve(psi0: f64, lambda0: f64, lambda_max: u32) -> Result<ElicitReport, CmdError> {
    let prior =
        ShapePrior::skew_normal(0.0, psi0, lambda0).map_err(|e| CmdError::Data(e.to_string()))?;
    let lambdas: Vec<f64> = (0..=lambda_max).map(f64::from).collect();
    let curve = fig_curve(psi0, &lambdas).map_err(|e| CmdError::Data(e.to_string()))?;
    Ok(ElicitReport {
        command: "elicit".into(),
        mode: "mass-curve".into(),
        moments: None,
        implied: None,
        prior: (&prior).into(),
        nig: None,
        prob_alpha_negative: prob_alpha_negative(&prior),
        prior_mean_alpha: prior_mean_alpha(&prior),
        curve: Some(curve),
    })
}

pub fn fig_csv(curve: &[(f64, f64)]) -> String {
    let rows: Vec<Vec<f64>> = curve.iter().map(|&(l, p)| vec![l, p]).collect();
    crate::io::csv_table(&["lambda0", "prob_alpha_negative"], &rows)
}
