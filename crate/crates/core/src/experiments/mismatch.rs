//! Density evolution with a decoder that assumes the wrong source.

use super::family::{bsc_family_source, BscFamilyPoint};
use crate::de::{find_threshold, DeTrajectory, DensityEvolution};
use crate::error::Result;
use crate::ldpc::DegreeDistribution;
use crate::source::{mismatch_initial_density, JointSource};

#[derive(Debug, Clone, PartialEq)]
pub struct MismatchReport {
    /// DE with initial LLRs from the estimate, weighted by the true source.
    pub mismatched: DeTrajectory,
    /// DE for a decoder that knows the true source.
    pub matched: DeTrajectory,
    /// Whether the two runs produced bit-identical trajectories.
    pub identical: bool,
}

pub fn mismatch_experiment(
    truth: &JointSource,
    est: &JointSource,
    dd: &DegreeDistribution,
    de: &DensityEvolution,
) -> Result<MismatchReport> {
    let mismatched = de.run(&de.quantize(&mismatch_initial_density(truth, est)?), dd)?;
    let matched = de.run(&de.quantize(&truth.initial_density()), dd)?;
    let identical = mismatched.p_e_by_iter == matched.p_e_by_iter;
    Ok(MismatchReport {
        mismatched,
        matched,
        identical,
    })
}

/// Crossover thresholds at prior `p` for the matched decoder and for one
/// that uses channel likelihoods only, as `(matched, channel_llr)`. A
/// threshold of `0.5` means convergence over the whole range.
pub fn bsc_mismatch_thresholds(
    p: f64,
    dd: &DegreeDistribution,
    tol: f64,
    de: &DensityEvolution,
) -> Result<(f64, f64)> {
    let matched = |q: f64| Ok(bsc_family_source(BscFamilyPoint::new(p, q)?)?.initial_density());
    let channel = |q: f64| {
        let s = bsc_family_source(BscFamilyPoint::new(p, q)?)?;
        mismatch_initial_density(&s, &s.uniform_prior_estimate()?)
    };
    let search = |family: &dyn Fn(f64) -> Result<_>| -> Result<f64> {
        if de.run(&de.quantize(&family(0.5)?), dd)?.converged {
            return Ok(0.5);
        }
        find_threshold(family, dd, 0.0, 0.5, tol, de)
    };
    Ok((search(&matched)?, search(&channel)?))
}
