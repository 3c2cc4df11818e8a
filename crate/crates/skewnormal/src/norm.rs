//! Standard-normal primitives: density, distribution function, their logs,
//! and the quantile function.
//!
//! Everything downstream (skew-normal densities, truncated-normal draws, the
//! posterior builders) funnels through these. The distribution function is
//! evaluated through the complementary error function, and `log_cdf` switches
//! to an asymptotic Mills-ratio expansion deep in the lower tail so that
//! products of many cdf factors can be accumulated in log space without
//! underflow.

use std::f64::consts::PI;

/// ln sqrt(2 pi)
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_8;

/// sqrt(2/pi), the half-normal mean factor.
pub const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_355_9;

/// Standard normal density.
#[inline]
pub fn pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Log of the standard normal density.
#[inline]
pub fn log_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

/// Standard normal distribution function, computed as erfc(-x/sqrt(2))/2.
#[inline]
pub fn cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Survival function 1 - cdf(x), without cancellation for large x.
#[inline]
pub fn sf(x: f64) -> f64 {
    cdf(-x)
}

/// Log of the distribution function, accurate over the whole real line.
///
/// For x >= -30 the erfc route keeps full precision. Below that, erfc starts
/// to lose accuracy near the underflow boundary, so we use the asymptotic
/// expansion Phi(x) = phi(x)/(-x) * (1 - 1/x^2 + 3/x^4 - ...). Seven terms
/// keep the relative error below 1e-15 for x <= -30.
pub fn log_cdf(x: f64) -> f64 {
    if x >= -30.0 {
        let p = cdf(x);
        if p > 1e-300 {
            return p.ln();
        }
    }
    if x > 0.0 {
        // ln(1 - sf) evaluated stably.
        return (-sf(x)).ln_1p();
    }
    let inv2 = 1.0 / (x * x);
    let series = inv2 * (-1.0 + inv2 * (3.0 + inv2 * (-15.0 + inv2 * (105.0 + inv2 * (-945.0 + inv2 * 10395.0)))));
    log_pdf(x) - (-x).ln() + series.ln_1p()
}

/// Log of the survival function.
#[inline]
pub fn log_sf(x: f64) -> f64 {
    log_cdf(-x)
}

/// Quantile function (inverse of `cdf`).
///
/// Newton iteration on cdf(x) - p (log-space in the tails), started from an
/// asymptotic seed. No rational-approximation coefficient tables; accuracy is
/// limited only by `cdf`/`log_cdf`. Panics if p is outside (0, 1).
pub fn inverse_cdf(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "inverse_cdf requires p in (0,1), got {p}");
    if p > 0.5 {
        return -inverse_cdf(1.0 - p);
    }
    if p >= 0.02 {
        // Central region: Newton on cdf(x) - p from a first-order seed.
        let mut x = (p - 0.5) / pdf(0.0);
        for _ in 0..60 {
            let step = (cdf(x) - p) / pdf(x);
            x -= step;
            if step.abs() <= 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
        x
    } else {
        // Tail: solve log_cdf(x) = ln p. Seed from x^2 = 2L - ln x^2 - ln(2pi).
        let target = p.ln();
        let big_l = -target;
        let mut t = 2.0 * big_l;
        for _ in 0..3 {
            t = 2.0 * big_l - t.ln() - (2.0 * PI).ln();
        }
        let mut x = -t.max(1.0).sqrt();
        for _ in 0..60 {
            // d/dx log Phi = phi/Phi, evaluated in log space.
            let g = log_cdf(x) - target;
            let gp = (log_pdf(x) - log_cdf(x)).exp();
            let step = g / gp;
            x -= step;
            if step.abs() <= 1e-15 * (1.0 + x.abs()) {
                break;
            }
        }
        x
    }
}
