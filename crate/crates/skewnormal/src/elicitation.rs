//! Prior elicitation: translating beliefs about the data distribution into
//! hyperparameters.
//!
//! Two routes are supported. When only the direction of skewness is known, a
//! skew-normal prior centered at zero places its mass on one half-line; the
//! prior probability of a negative shape quantifies how firmly, and
//! [`fig_curve`] tabulates it against the prior's shape hyperparameter. When
//! moments of past data are available, [`elicit_from_moments`] inverts the
//! moment map to center the priors on the implied direct parameters.

use crate::distributions::CentralMoments;
use crate::error::Result;
use crate::gibbs::NigPrior;
use crate::posterior::ShapePrior;

/// Prior probability that the shape parameter is negative: the prior's own
/// distribution function at zero.
pub fn prob_alpha_negative(prior: &ShapePrior) -> f64 {
    prior.as_skew_normal().cdf(0.0).expect("prior parameters are finite")
}

/// Closed-form prior mean of the shape parameter:
/// `alpha_0 + psi_0 sqrt(2/pi) lambda_0 / sqrt(lambda_0^2 + 1)`.
pub fn prior_mean_alpha(prior: &ShapePrior) -> f64 {
    prior.as_skew_normal().moments().mean
}

/// The prior-mass curve: `(lambda, Pr(alpha < 0))` pairs for a zero-centered
/// skew-normal prior with scale `psi0`. Monotone nonincreasing for
/// lambda >= 0.
pub fn fig_curve(psi0: f64, lambdas: &[f64]) -> Result<Vec<(f64, f64)>> {
    lambdas
        .iter()
        .map(|&l| {
            let prior = ShapePrior::skew_normal(0.0, psi0, l)?;
            Ok((l, prob_alpha_negative(&prior)))
        })
        .collect()
}

/// Hyperparameters produced by moment-based elicitation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElicitedPriors {
    pub shape: ShapePrior,
    pub nig: NigPrior,
    /// The direct parameters implied by the stated moments.
    pub implied_xi: f64,
    pub implied_omega: f64,
    pub implied_alpha: f64,
}

/// Map stated moments of the data distribution to hyperparameters.
///
/// The moments are inverted to direct parameters `(xi*, omega*, alpha*)`.
/// The shape prior is normal, centered at `alpha*` with scale `strength`.
/// The location/scale prior is normal-inverse-gamma with `xi_0 = xi*` and
/// `b` chosen so the prior mode of `omega^2` equals `omega*^2`
/// (mode = b/(a+1) for the inverse gamma). A single `strength` dial governs
/// the dispersion hyperparameters monotonically:
///
/// | strength s | psi_0 | kappa  | a   |
/// |------------|-------|--------|-----|
/// | s          | s     | s^2/4  | 1/s |
///
/// so s = 1 gives `psi_0 = 1, kappa = 0.25, a = 1`, smaller s tightens every
/// component and larger s loosens them.
pub fn elicit_from_moments(moments: &CentralMoments, strength: f64) -> Result<ElicitedPriors> {
    let dp = moments.to_params();
    let shape = ShapePrior::normal(dp.alpha, strength)?;
    let a = 1.0 / strength;
    let nig = NigPrior::new(dp.xi, strength * strength / 4.0, a, dp.omega * dp.omega * (a + 1.0))?;
    Ok(ElicitedPriors {
        shape,
        nig,
        implied_xi: dp.xi,
        implied_omega: dp.omega,
        implied_alpha: dp.alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_prior_is_fifty_fifty() {
        let p = ShapePrior::skew_normal(0.0, 10.0, 0.0).unwrap();
        assert!((prob_alpha_negative(&p) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn published_mass_anchors() {
        // lambda_0 = 7 keeps under 5% mass below zero...
        let p = ShapePrior::skew_normal(0.0, 10.0, 7.0).unwrap();
        assert!(prob_alpha_negative(&p) < 0.05);
        // ... and lambda_0 = 20 under 2%; closed form 1/2 - atan(20)/pi.
        let p = ShapePrior::skew_normal(0.0, 7.0, 20.0).unwrap();
        let mass = prob_alpha_negative(&p);
        assert!(mass < 0.02);
        assert!((mass - 0.015902251256176375).abs() < 1e-9);
    }

    #[test]
    fn mass_is_scale_free_when_centered() {
        let mass_at = |psi0: f64| {
            prob_alpha_negative(&ShapePrior::skew_normal(0.0, psi0, 4.0).unwrap())
        };
        let p1 = mass_at(0.5);
        for psi0 in [1.0, 7.0, 50.0] {
            assert!((mass_at(psi0) - p1).abs() < 1e-10);
        }
    }

    #[test]
    fn prior_mean_anchors() {
        let p = ShapePrior::normal(2.0, 1.0).unwrap();
        assert_eq!(prior_mean_alpha(&p), 2.0);
        // mpmath: 7 sqrt(2/pi) * 20/sqrt(401) = 5.578223498794686.
        let p = ShapePrior::skew_normal(0.0, 7.0, 20.0).unwrap();
        assert!((prior_mean_alpha(&p) - 5.578223498794686).abs() < 1e-12);
        // mpmath check of the closed form at a negative shape.
        let p = ShapePrior::skew_normal(0.0, 1.0, -3.0).unwrap();
        let want = -crate::norm::SQRT_2_OVER_PI * 3.0 / 10.0f64.sqrt();
        assert!((prior_mean_alpha(&p) - want).abs() < 1e-12);
    }

    #[test]
    fn curve_is_monotone_and_vanishes() {
        for &psi0 in &[0.5, 1.0, 10.0] {
            let lambdas: Vec<f64> = (0..=15).map(|k| k as f64).collect();
            let curve = fig_curve(psi0, &lambdas).unwrap();
            assert_eq!(curve[0].1, prob_alpha_negative(&ShapePrior::skew_normal(0.0, psi0, 0.0).unwrap()));
            assert!((curve[0].1 - 0.5).abs() < 1e-10);
            for w in curve.windows(2) {
                assert!(w[1].1 <= w[0].1 + 1e-12, "curve not nonincreasing at {:?}", w);
            }
        }
        // Limit: essentially no mass below zero at very large lambda.
        let c = fig_curve(10.0, &[1e4]).unwrap();
        assert!(c[0].1 < 1e-4);
    }

    #[test]
    fn moment_elicitation_published_anchor() {
        // (22.68, 13.72, 0.35) with strength 1. The exact inversion gives
        // (9.8619, 18.7761, 1.6530); the published rounded counterparts are
        // (9.81, 18.82, 1.67).
        let m = CentralMoments::new(22.68, 13.72, 0.35).unwrap();
        let e = elicit_from_moments(&m, 1.0).unwrap();
        assert!((e.implied_xi - 9.861939528161463).abs() < 1e-10);
        assert!((e.implied_omega - 18.776077179744165).abs() < 1e-10);
        assert!((e.implied_alpha - 1.652987971452748).abs() < 1e-10);
        assert_eq!(e.shape, ShapePrior::Normal { alpha0: e.implied_alpha, psi0: 1.0 });
        assert_eq!(e.nig.kappa, 0.25);
        assert_eq!(e.nig.a, 1.0);
        // Prior mode of omega^2 equals the implied omega^2.
        let mode = e.nig.b / (e.nig.a + 1.0);
        assert!((mode - e.implied_omega * e.implied_omega).abs() < 1e-9);
    }

    #[test]
    fn zero_skewness_centers_at_zero() {
        let m = CentralMoments::new(5.0, 2.0, 0.0).unwrap();
        let e = elicit_from_moments(&m, 2.0).unwrap();
        assert_eq!(e.implied_alpha, 0.0);
        assert_eq!(e.shape.psi0(), 2.0);
    }

    #[test]
    fn elicitation_recovers_the_generating_shape() {
        // elicit_from_moments after the forward moment map recovers alpha.
        for &(xi, omega, alpha) in &[(0.0, 1.0, 1.3), (4.0, 2.5, -0.7), (-2.0, 0.4, 6.0)] {
            let p = crate::distributions::SkewNormalParams::new(xi, omega, alpha).unwrap();
            let e = elicit_from_moments(&p.moments(), 1.0).unwrap();
            assert!(
                (e.implied_alpha - alpha).abs() < 1e-6 * (1.0 + alpha.abs()),
                "alpha: {} vs {alpha}",
                e.implied_alpha
            );
        }
    }

    #[test]
    fn prior_predictive_reproduces_target_mean() {
        use rand::SeedableRng;
        // Draw (xi, omega) from the NIG prior and alpha from the shape prior,
        // then one observation each; the prior-predictive mean should sit near
        // the stated mean.
        // Mode-matching the scale prior leaves an O(1/a) gap between E[omega]
        // and the implied omega*, so the reproduction is exact only in the
        // small-strength limit; 0.005 brings the gap under the Monte Carlo
        // noise floor.
        let m = CentralMoments::new(22.68, 13.72, 0.35).unwrap();
        let e = elicit_from_moments(&m, 0.005).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(31);
        let n = 100_000;
        let mut draws = Vec::with_capacity(n);
        for _ in 0..n {
            let (xi, omega) = e.nig.sample_one(&mut rng);
            let alpha = e.shape.sample_one(&mut rng);
            let p = crate::distributions::SkewNormalParams::new(xi, omega, alpha).unwrap();
            draws.push(p.sample_one(&mut rng));
        }
        let mean = crate::stats::mean(&draws);
        let se = crate::stats::sd(&draws) / (n as f64).sqrt();
        assert!(
            (mean - 22.68).abs() < 3.0 * se + 0.1,
            "prior predictive mean {mean}, se {se}"
        );
    }
}
