//! Side-by-side density evolution for a source and its equivalent channel.

use crate::de::{DensityEvolution, QuantizedDensity};
use crate::error::{Error, Result};
use crate::ldpc::DegreeDistribution;
use crate::source::{source_to_channel, DiscreteLlrDensity, JointSource};

/// Largest total-variation distance between the two density trajectories
/// over iterations `0..=iters`.
pub fn trajectory_divergence(
    a: &DiscreteLlrDensity,
    b: &DiscreteLlrDensity,
    dd: &DegreeDistribution,
    iters: usize,
    de: &DensityEvolution,
) -> Result<f64> {
    let a0 = de.quantize(a);
    let b0 = de.quantize(b);
    let tv = |x: &QuantizedDensity, y: &QuantizedDensity| x.total_variation(y).ok_or(Error::GridMismatch);
    let (mut da, mut db) = (a0.clone(), b0.clone());
    let mut worst = tv(&da, &db)?;
    for _ in 0..iters {
        da = de.iterate(&a0, &da, dd)?;
        db = de.iterate(&b0, &db, dd)?;
        worst = worst.max(tv(&da, &db)?);
    }
    Ok(worst)
}

/// Divergence between DE started from the source's initial density and from
/// the all-zero-input output density of its equivalent channel.
pub fn correspondence_check(s: &JointSource, dd: &DegreeDistribution, iters: usize, de: &DensityEvolution) -> Result<f64> {
    let channel = source_to_channel(s).initial_density();
    trajectory_divergence(&s.initial_density(), &channel, dd, iters, de)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::de::DeSettings;
    use crate::experiments::erasure_source;
    use crate::source::BiosChannel;

    fn coarse() -> DensityEvolution {
        DensityEvolution::new(DeSettings::with_grid(1.0 / 16.0, 20.0)).unwrap()
    }

    #[test]
    fn source_and_channel_agree() {
        let de = coarse();
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        let s = JointSource::new(vec![0, 1, 2], vec![0.3, 0.1, 0.05], vec![0.05, 0.2, 0.3]).unwrap();
        assert!(correspondence_check(&s, &dd, 20, &de).unwrap() <= 1e-12);
    }

    #[test]
    fn erasure_source_tracks_bec() {
        let de = coarse();
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        let s = erasure_source(0.35, 0.2).unwrap();
        let bec = BiosChannel::bec(0.35).unwrap().initial_density();
        assert!(correspondence_check(&s, &dd, 20, &de).unwrap() <= 1e-12);
        assert!(trajectory_divergence(&s.initial_density(), &bec, &dd, 20, &de).unwrap() <= 1e-12);
    }

    #[test]
    fn different_channel_diverges() {
        let de = coarse();
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        let s = erasure_source(0.35, 0.5).unwrap();
        let other = BiosChannel::bsc(0.05).unwrap().initial_density();
        assert!(trajectory_divergence(&s.initial_density(), &other, &dd, 5, &de).unwrap() > 0.1);
    }
}
