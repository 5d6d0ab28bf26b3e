//! Threshold search by bisection, and the scalar erasure recursion used as
//! an independent oracle.

use super::evolution::DensityEvolution;
use crate::error::{Error, Result};
use crate::ldpc::DegreeDistribution;
use crate::source::DiscreteLlrDensity;

/// Erasure probability below which the scalar recursion counts as converged.
const BEC_CONVERGED: f64 = 1e-12;

/// Bisection over a one-parameter family of initial densities. `good` must
/// converge and `bad` must fail; they may be given in either order. Returns
/// the midpoint of the final bracket, whose width is at most `tol`.
pub fn find_threshold<F>(
    family: F,
    dd: &DegreeDistribution,
    good: f64,
    bad: f64,
    tol: f64,
    de: &DensityEvolution,
) -> Result<f64>
where
    F: Fn(f64) -> Result<DiscreteLlrDensity>,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol}")));
    }
    let converges = |param: f64| -> Result<bool> {
        let d0 = de.quantize(&family(param)?);
        Ok(de.run(&d0, dd)?.converged)
    };
    if !converges(good)? {
        return Err(Error::ThresholdPrecondition(format!(
            "density evolution does not converge at {good}"
        )));
    }
    if converges(bad)? {
        return Err(Error::ThresholdPrecondition(format!("density evolution converges at {bad}")));
    }
    let (mut good, mut bad) = (good, bad);
    while (bad - good).abs() > tol {
        let mid = 0.5 * (good + bad);
        if converges(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(0.5 * (good + bad))
}

/// Erasure fractions `x_0 = eps, x_{l+1} = eps lambda(1 - rho(1 - x_l))`,
/// `iterations + 1` entries.
pub fn bec_de_trajectory(epsilon: f64, dd: &DegreeDistribution, iterations: usize) -> Vec<f64> {
    let mut xs = Vec::with_capacity(iterations + 1);
    let mut x = epsilon;
    xs.push(x);
    for _ in 0..iterations {
        x = epsilon * dd.lambda_poly(1.0 - dd.rho_poly(1.0 - x));
        xs.push(x);
    }
    xs
}

/// Iterates the erasure recursion from `x = epsilon`; converged iff the
/// fraction drops below `1e-12` within `max_iter` steps.
pub fn bec_de_oracle(epsilon: f64, dd: &DegreeDistribution, max_iter: usize) -> (bool, f64) {
    let mut x = epsilon;
    for _ in 0..max_iter {
        if x < BEC_CONVERGED {
            break;
        }
        x = epsilon * dd.lambda_poly(1.0 - dd.rho_poly(1.0 - x));
    }
    (x < BEC_CONVERGED, x)
}

/// Erasure threshold of the scalar recursion, by bisection on `[0, 1]`.
pub fn bec_oracle_threshold(dd: &DegreeDistribution, max_iter: usize, tol: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if bec_de_oracle(mid, dd, max_iter).0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_endpoints() {
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        assert_eq!(bec_de_oracle(0.0, &dd, 10), (true, 0.0));
        assert_eq!(bec_de_oracle(1.0, &dd, 100), (false, 1.0));
    }

    #[test]
    fn oracle_thresholds() {
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        let t = bec_oracle_threshold(&dd, 200_000, 1e-7);
        assert!((t - 0.429_439_791_118_829_6).abs() < 1e-5, "{t}");
        let dd = DegreeDistribution::regular(4, 8).unwrap();
        let t = bec_oracle_threshold(&dd, 200_000, 1e-7);
        assert!((t - 0.383_446_559_549_460_3).abs() < 1e-5, "{t}");
    }

    #[test]
    fn one_step_recursion() {
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        let xs = bec_de_trajectory(0.3, &dd, 1);
        assert!((xs[1] - 0.3 * (1.0 - 0.7f64.powi(5)).powi(2)).abs() < 1e-15);
        assert!((xs[1] - 0.207_632_257_47).abs() < 1e-10);
    }
}
