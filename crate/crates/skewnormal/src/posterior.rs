//! Closed-form SUN posteriors for the skew-normal shape parameter.
//!
//! With the location and scale fixed (data standardized), the likelihood of
//! the shape is a product of Gaussian cdf factors, `prod_i Phi(alpha y_i)`.
//! Under a normal prior `N(alpha_0, psi_0^2)` the posterior is
//! `SUN_{1,n}` with loadings `delta_i = psi_0 y_i (psi_0^2 y_i^2 + 1)^-1/2`
//! and latent correlation `I - D(delta)^2 + delta delta'`; a skew-normal
//! prior contributes one extra row with `y` replaced by `lambda_0/psi_0`.
//! The multivariate version stacks one row per observation plus one row per
//! skew-prior component, with row scales `s_i^2 = 1/(1 + |psi . z_i|^2)`
//! chosen so the latent correlation keeps a unit diagonal.
//!
//! The builders never materialize the latent correlation densely; they emit
//! the factored representation that the samplers exploit.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::distributions::SkewNormalParams;
use crate::error::{Error, Result};
use crate::norm;
use crate::sun::{SunParams, DELTA_CLAMP};

/// Prior for a scalar shape parameter: normal or skew-normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapePrior {
    Normal { alpha0: f64, psi0: f64 },
    SkewNormal { alpha0: f64, psi0: f64, lambda0: f64 },
}

impl ShapePrior {
    pub fn normal(alpha0: f64, psi0: f64) -> Result<Self> {
        Self::validate(alpha0, psi0, 0.0)?;
        Ok(Self::Normal { alpha0, psi0 })
    }

    pub fn skew_normal(alpha0: f64, psi0: f64, lambda0: f64) -> Result<Self> {
        Self::validate(alpha0, psi0, lambda0)?;
        Ok(Self::SkewNormal { alpha0, psi0, lambda0 })
    }

    fn validate(alpha0: f64, psi0: f64, lambda0: f64) -> Result<()> {
        if !alpha0.is_finite() || !lambda0.is_finite() {
            return Err(Error::NonFinite("shape prior hyperparameters"));
        }
        if !(psi0 > 0.0) || !psi0.is_finite() {
            return Err(Error::InvalidParam {
                name: "psi0",
                value: psi0,
                reason: "must be finite and positive",
            });
        }
        Ok(())
    }

    pub fn alpha0(&self) -> f64 {
        match *self {
            Self::Normal { alpha0, .. } | Self::SkewNormal { alpha0, .. } => alpha0,
        }
    }

    pub fn psi0(&self) -> f64 {
        match *self {
            Self::Normal { psi0, .. } | Self::SkewNormal { psi0, .. } => psi0,
        }
    }

    /// The shape hyperparameter; zero for the normal prior.
    pub fn lambda0(&self) -> f64 {
        match *self {
            Self::Normal { .. } => 0.0,
            Self::SkewNormal { lambda0, .. } => lambda0,
        }
    }

    /// The prior viewed as a skew-normal law over alpha (the normal prior is
    /// the lambda_0 = 0 member).
    pub fn as_skew_normal(&self) -> SkewNormalParams {
        SkewNormalParams::new(self.alpha0(), self.psi0(), self.lambda0())
            .expect("validated at construction")
    }

    /// Normalized log prior density.
    pub fn log_density(&self, alpha: f64) -> f64 {
        let z = (alpha - self.alpha0()) / self.psi0();
        match *self {
            Self::Normal { psi0, .. } => norm::log_pdf(z) - psi0.ln(),
            Self::SkewNormal { psi0, lambda0, .. } => {
                std::f64::consts::LN_2 + norm::log_pdf(z) - psi0.ln() + norm::log_cdf(lambda0 * z)
            }
        }
    }

    /// One draw from the prior.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.as_skew_normal().sample_one(rng)
    }
}

/// Independent per-component priors for a d-variate shape vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MvShapePrior {
    pub components: Vec<ShapePrior>,
}

impl MvShapePrior {
    pub fn new(components: Vec<ShapePrior>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DimensionMismatch("need at least one prior component".into()));
        }
        Ok(Self { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }
}

/// A standardized univariate sample, `y_i* = (y_i - xi)/omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedSample {
    y: Vec<f64>,
}

impl StandardizedSample {
    pub fn new(y: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(Error::DimensionMismatch("sample must contain at least one value".into()));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("standardized sample"));
        }
        Ok(Self { y })
    }

    pub fn from_raw(y: &[f64], xi: f64, omega: f64) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::InvalidParam { name: "omega", value: omega, reason: "must be positive" });
        }
        Self::new(y.iter().map(|v| (v - xi) / omega).collect())
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }
}

/// A standardized n x d sample for the multivariate posterior.
#[derive(Debug, Clone, PartialEq)]
pub struct MvStandardizedSample {
    y: DMatrix<f64>,
}

impl MvStandardizedSample {
    pub fn new(y: DMatrix<f64>) -> Result<Self> {
        if y.nrows() == 0 || y.ncols() == 0 {
            return Err(Error::DimensionMismatch("sample matrix must be non-empty".into()));
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("standardized sample"));
        }
        Ok(Self { y })
    }

    pub fn n(&self) -> usize {
        self.y.nrows()
    }

    pub fn dim(&self) -> usize {
        self.y.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.y
    }
}

/// SUN posterior under the normal prior: `SUN_{1,n}` with one row per
/// observation, `delta_i = psi_0 y_i (psi_0^2 y_i^2 + 1)^-1/2` and truncation
/// offset `delta_i alpha_0 / psi_0`.
pub fn build_posterior_pi1(prior: &ShapePrior, data: &StandardizedSample) -> Result<SunParams> {
    let ShapePrior::Normal { alpha0, psi0 } = *prior else {
        return Err(Error::Construction("expected the normal shape prior".into()));
    };
    build_rank1(alpha0, psi0, data.values(), None)
}

/// SUN posterior under the skew-normal prior: `SUN_{1,n+1}` where the design
/// is the data extended by `lambda_0 / psi_0`, and the extra row carries a
/// zero truncation offset.
pub fn build_posterior_pi2(prior: &ShapePrior, data: &StandardizedSample) -> Result<SunParams> {
    let ShapePrior::SkewNormal { alpha0, psi0, lambda0 } = *prior else {
        return Err(Error::Construction("expected the skew-normal shape prior".into()));
    };
    build_rank1(alpha0, psi0, data.values(), Some(lambda0 / psi0))
}

/// Dispatch on the prior kind.
pub fn build_posterior(prior: &ShapePrior, data: &StandardizedSample) -> Result<SunParams> {
    match prior {
        ShapePrior::Normal { .. } => build_posterior_pi1(prior, data),
        ShapePrior::SkewNormal { .. } => build_posterior_pi2(prior, data),
    }
}

fn build_rank1(
    alpha0: f64,
    psi0: f64,
    y: &[f64],
    prior_row: Option<f64>,
) -> Result<SunParams> {
    let n = y.len();
    let m = n + prior_row.is_some() as usize;
    let mut delta = Vec::with_capacity(m);
    let mut gamma = Vec::with_capacity(m);
    let mut clamped = Vec::new();
    for (i, &yi) in y.iter().enumerate() {
        let mut d = psi0 * yi / (psi0 * yi).hypot(1.0);
        if d.abs() > DELTA_CLAMP {
            d = DELTA_CLAMP.copysign(d);
            clamped.push(i);
        }
        delta.push(d);
        gamma.push(d * alpha0 / psi0);
    }
    if let Some(z) = prior_row {
        let mut d = psi0 * z / (psi0 * z).hypot(1.0);
        if d.abs() > DELTA_CLAMP {
            d = DELTA_CLAMP.copysign(d);
            clamped.push(n);
        }
        delta.push(d);
        gamma.push(0.0);
    }
    let mut params = SunParams::rank1(alpha0, gamma, psi0, delta)?;
    params.set_clamped_rows(clamped);
    Ok(params)
}

/// SUN posterior for a d-variate shape vector with independent per-component
/// priors: `SUN_{d,n+k}` where k counts the skew-normal components. The
/// stacked design holds the n data rows followed by one row per skew-prior
/// component j with single entry `lambda_j / psi_j`; row i gets scale
/// `s_i = (1 + |psi . z_i|^2)^-1/2`, loadings `Delta_ij = s_i psi_j z_ij`, and
/// truncation offset `s_i z_i' alpha_0` on data rows (zero on prior rows).
/// The latent correlation `D(s^2) + Delta Delta'` then has a unit diagonal
/// and an always-positive-semidefinite implied block matrix.
pub fn build_posterior_mv(
    prior: &MvShapePrior,
    data: &MvStandardizedSample,
) -> Result<SunParams> {
    let d = data.dim();
    if prior.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "prior has {} components, data has {d}",
            prior.dim()
        )));
    }
    let n = data.n();
    let skew_rows: Vec<usize> = (0..d)
        .filter(|&j| matches!(prior.components[j], ShapePrior::SkewNormal { .. }))
        .collect();
    let m = n + skew_rows.len();

    let psis: Vec<f64> = prior.components.iter().map(|p| p.psi0()).collect();
    let alpha0 = DVector::from_fn(d, |j, _| prior.components[j].alpha0());

    // Stacked design: data rows, then one row per skew-prior component.
    let mut z = DMatrix::zeros(m, d);
    for i in 0..n {
        for j in 0..d {
            z[(i, j)] = data.matrix()[(i, j)];
        }
    }
    for (r, &j) in skew_rows.iter().enumerate() {
        z[(n + r, j)] = prior.components[j].lambda0() / psis[j];
    }

    let mut delta = DMatrix::zeros(m, d);
    let mut gamma = DVector::zeros(m);
    let mut clamped = Vec::new();
    // s^2 floor mirroring the univariate loading clamp.
    let s2_floor = 1.0 - DELTA_CLAMP * DELTA_CLAMP;
    for i in 0..m {
        let weighted_norm2: f64 = (0..d).map(|j| (psis[j] * z[(i, j)]).powi(2)).sum();
        let mut s2 = 1.0 / (1.0 + weighted_norm2);
        if s2 < s2_floor {
            s2 = s2_floor;
            clamped.push(i);
        }
        let s = s2.sqrt();
        // Rescale loadings so the row norm stays consistent with s.
        let shrink = ((1.0 - s2) / weighted_norm2.max(f64::MIN_POSITIVE)).sqrt();
        for j in 0..d {
            delta[(i, j)] = shrink * psis[j] * z[(i, j)];
        }
        if i < n {
            let dot: f64 = (0..d).map(|j| z[(i, j)] * alpha0[j]).sum();
            gamma[i] = s * dot;
        }
    }

    let omega = DVector::from_vec(psis);
    let mut params = SunParams::factor(alpha0, gamma, omega, delta)?;
    params.set_clamped_rows(clamped);
    Ok(params)
}

/// Unnormalized log posterior: log prior plus `sum_i log Phi(alpha y_i)`,
/// accumulated in log space throughout.
pub fn log_posterior_unnorm(prior: &ShapePrior, data: &StandardizedSample, alpha: f64) -> f64 {
    let mut total = prior.log_density(alpha);
    for &y in data.values() {
        total += norm::log_cdf(alpha * y);
    }
    total
}

/// Multivariate counterpart: independent log priors plus
/// `sum_i log Phi(alpha' y_i)`.
pub fn log_posterior_unnorm_mv(
    prior: &MvShapePrior,
    data: &MvStandardizedSample,
    alpha: &DVector<f64>,
) -> f64 {
    let mut total = 0.0;
    for (j, p) in prior.components.iter().enumerate() {
        total += p.log_density(alpha[j]);
    }
    for i in 0..data.n() {
        let dot: f64 = (0..data.dim()).map(|j| alpha[j] * data.matrix()[(i, j)]).sum();
        total += norm::log_cdf(dot);
    }
    total
}

/// Monte Carlo posterior moments from independent SUN draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McMoments {
    pub mean: f64,
    pub variance: f64,
    /// Standard error of the mean estimate.
    pub se_mean: f64,
}

/// Sample mean and variance of `n_draws` independent draws from a d = 1 SUN
/// posterior, with the Monte Carlo standard error of the mean.
pub fn posterior_moments_mc<R: Rng + ?Sized>(
    posterior: &SunParams,
    n_draws: usize,
    n_sweeps: usize,
    rng: &mut R,
) -> Result<McMoments> {
    assert!(n_draws >= 2);
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..n_draws {
        let x = posterior.sample_d1(n_sweeps, rng)?;
        sum += x;
        sumsq += x * x;
    }
    let n = n_draws as f64;
    let mean = sum / n;
    let variance = (sumsq - n * mean * mean).max(0.0) / (n - 1.0);
    Ok(McMoments { mean, variance, se_mean: (variance / n).sqrt() })
}

/// Posterior mode with a divergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeResult {
    pub value: f64,
    /// True when the maximizer sits at the search bracket edge, the
    /// all-data-one-signed pathology where the likelihood is monotone.
    pub at_boundary: bool,
}

/// Search bracket for the posterior mode.
pub const MODE_BRACKET: f64 = 200.0;

/// Argmax of the unnormalized log posterior by golden-section search on
/// [-200, 200], to within 1e-6. The posterior is log-concave in alpha, so the
/// search is exact up to that tolerance.
pub fn posterior_mode(prior: &ShapePrior, data: &StandardizedSample) -> ModeResult {
    let f = |a: f64| log_posterior_unnorm(prior, data, a);
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let (mut a, mut b) = (-MODE_BRACKET, MODE_BRACKET);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > 1e-7 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let value = 0.5 * (a + b);
    ModeResult { value, at_boundary: value.abs() > MODE_BRACKET - 1e-3 }
}

/// One posterior draw of the shape given standardized data, constructing the
/// SUN posterior and applying the additive-representation sampler.
pub fn sample_shape_posterior<R: Rng + ?Sized>(
    prior: &ShapePrior,
    data: &StandardizedSample,
    n_sweeps: usize,
    rng: &mut R,
) -> Result<f64> {
    build_posterior(prior, data)?.sample_d1(n_sweeps, rng)
}

/// A draw from the prior itself, used when no data rows are available.
pub fn sample_shape_prior<R: Rng + ?Sized>(prior: &ShapePrior, rng: &mut R) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    match *prior {
        ShapePrior::Normal { alpha0, psi0 } => alpha0 + psi0 * z,
        ShapePrior::SkewNormal { .. } => prior.sample_one(rng),
    }
}
