//! Informative Bayesian inference for the skew-normal distribution.
//!
//! The skew-normal family extends the normal with a shape parameter whose
//! likelihood is a product of Gaussian cdf factors; with all observations of
//! one sign it is monotone, so the maximum-likelihood route degenerates.
//! This crate takes the conjugate-style Bayesian route instead:
//!
//! - [`distributions`]: skew-normal densities, samplers, and the maps
//!   between direct parameters and central moments;
//! - [`sun`]: the unified skew-normal (SUN) family, whose rank-one latent
//!   structure gives a closed-form precision and an O(m)-per-sweep truncated
//!   normal kernel, plus exact truncated-normal draws;
//! - [`posterior`]: closed-form SUN posteriors for the shape under normal,
//!   skew-normal, and per-component multivariate priors, with Monte Carlo
//!   moments and a mode search;
//! - [`gibbs`]: the full Gibbs sampler for (location, scale, shape) with
//!   half-normal data augmentation, chain summaries, density bands, and
//!   Geweke diagnostics (including a successive-conditional kernel test);
//! - [`elicitation`]: hyperparameters from moment statements or from a
//!   skewness-direction belief;
//! - [`oracle`]: quadrature references used by the test suites;
//! - [`norm`], [`mvn`], [`stats`]: numeric underpinnings.
//!
//! Every sampler takes an explicit random stream and is a deterministic
//! function of it; nothing in the crate holds shared mutable state, so
//! chains can run concurrently with one stream per thread.

pub use nalgebra;

pub mod distributions;
pub mod elicitation;
pub mod error;
pub mod gibbs;
pub mod mvn;
pub mod norm;
pub mod oracle;
pub mod posterior;
pub mod stats;
pub mod sun;

pub use distributions::{
    alpha_of_delta, delta_of_alpha, CentralMoments, MvSkewNormalParams, SkewNormalParams,
};
pub use error::{Error, Result, MAX_ABS_SKEWNESS};
pub use gibbs::{Chain, GibbsConfig, NigPrior};
pub use posterior::{MvShapePrior, ShapePrior, StandardizedSample};
pub use sun::{Rank1Correlation, SunParams, DEFAULT_LTN_SWEEPS};
