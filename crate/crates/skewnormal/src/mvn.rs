//! Multivariate normal orthant/rectangle probabilities by randomized
//! quasi-Monte Carlo (separation-of-variables with a Richtmyer lattice).
//!
//! Used only by the density oracle paths; the inference path never evaluates
//! a multivariate normal cdf.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;

use crate::norm;

const N_SHIFTS: usize = 12;

/// Square roots of the first 32 primes, the Richtmyer lattice generators.
fn richtmyer_generator(dim: usize) -> Vec<f64> {
    const PRIMES: [u32; 32] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103, 107, 109, 113, 127, 131,
    ];
    (0..dim).map(|i| (PRIMES[i % 32] as f64).sqrt()).collect()
}

/// P(X <= upper) for X ~ N(0, cov), with a standard-error estimate from the
/// spread over random lattice shifts. `budget` caps the total number of
/// integrand evaluations.
pub fn mvn_cdf_qmc<R: Rng + ?Sized>(
    upper: &DVector<f64>,
    cov: &DMatrix<f64>,
    budget: usize,
    rng: &mut R,
) -> (f64, f64) {
    let m = upper.len();
    assert_eq!(cov.nrows(), m);
    assert_eq!(cov.ncols(), m);
    if m == 0 {
        return (1.0, 0.0);
    }
    if m == 1 {
        return (norm::cdf(upper[0] / cov[(0, 0)].sqrt()), 0.0);
    }

    let chol = cholesky_with_jitter(cov);
    let l = chol.l();

    let n_per_shift = (budget / N_SHIFTS).max(32);
    let gen = richtmyer_generator(m - 1);
    let mut shift_means = Vec::with_capacity(N_SHIFTS);
    let mut y = vec![0.0f64; m - 1];

    for _ in 0..N_SHIFTS {
        let shift: Vec<f64> = (0..m - 1).map(|_| rng.random::<f64>()).collect();
        let mut acc = 0.0;
        for k in 0..n_per_shift {
            // Separation of variables: at each stage, y_{i-1} is the quantile
            // of the previous conditional cdf value scaled by the lattice
            // coordinate, and e_i the next conditional cdf factor.
            let mut e = norm::cdf(upper[0] / l[(0, 0)]);
            let mut f = e;
            for i in 1..m {
                let w = (gen[i - 1] * (k + 1) as f64 + shift[i - 1]).fract();
                y[i - 1] = norm::inverse_cdf((w * e).clamp(1e-300, 1.0 - 1e-16));
                let mut t = upper[i];
                for j in 0..i {
                    t -= l[(i, j)] * y[j];
                }
                e = norm::cdf(t / l[(i, i)]);
                f *= e;
            }
            acc += f;
        }
        shift_means.push(acc / n_per_shift as f64);
    }

    let p = crate::stats::mean(&shift_means);
    let se = crate::stats::sd(&shift_means) / (N_SHIFTS as f64).sqrt();
    (p.clamp(0.0, 1.0), se)
}

fn cholesky_with_jitter(cov: &DMatrix<f64>) -> Cholesky<f64, nalgebra::Dyn> {
    let scale = cov.diagonal().max().max(1.0);
    for &eps in &[0.0, 1e-14, 1e-12, 1e-10, 1e-8] {
        let jittered = cov + DMatrix::identity(cov.nrows(), cov.ncols()) * (eps * scale);
        if let Some(c) = Cholesky::new(jittered) {
            return c;
        }
    }
    panic!("covariance matrix is too far from positive definite");
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn bivariate_orthant_anchor() {
        // Phi_2(0,0; rho=0.5) = 1/4 + asin(0.5)/(2 pi) = 1/3.
        let cov = DMatrix::from_vec(2, 2, vec![1.0, 0.5, 0.5, 1.0]);
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let (p, se) = mvn_cdf_qmc(&DVector::zeros(2), &cov, 80_000, &mut rng);
        assert!((p - 1.0 / 3.0).abs() < 5e-5, "p = {p}, se = {se}");
    }

    #[test]
    fn trivariate_equicorrelated_anchor() {
        // Phi_3(0; rho=0.5 equicorrelated) = 1/8 + 3 asin(0.5)/(4 pi) = 1/4.
        let mut cov = DMatrix::identity(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    cov[(i, j)] = 0.5;
                }
            }
        }
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let (p, _) = mvn_cdf_qmc(&DVector::zeros(3), &cov, 120_000, &mut rng);
        assert!((p - 0.25).abs() < 1e-4, "p = {p}");
    }

    #[test]
    fn independent_case_is_a_product() {
        let cov = DMatrix::identity(4, 4) * 2.0;
        let b = DVector::from_vec(vec![0.3, -0.5, 1.0, 0.0]);
        let want: f64 = b.iter().map(|&x| norm::cdf(x / 2.0f64.sqrt())).product();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let (p, _) = mvn_cdf_qmc(&b, &cov, 100_000, &mut rng);
        assert!((p - want).abs() < 2e-4, "p = {p}, want = {want}");
    }

    #[test]
    fn univariate_is_exact() {
        let cov = DMatrix::from_vec(1, 1, vec![4.0]);
        let b = DVector::from_vec(vec![1.0]);
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let (p, se) = mvn_cdf_qmc(&b, &cov, 100, &mut rng);
        assert_eq!(se, 0.0);
        assert!((p - norm::cdf(0.5)).abs() < 1e-15);
    }
}
