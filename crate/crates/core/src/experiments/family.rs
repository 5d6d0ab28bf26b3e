//! Parameterized source families.

use crate::error::{Error, Result};
use crate::source::{are_equivalent, JointSource};

/// Label of the erasure symbol in `erasure_source`.
pub const ERASURE_LABEL: i64 = 2;

/// `P(x=0) = p` and a symmetric correlation with crossover `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BscFamilyPoint {
    pub p: f64,
    pub q: f64,
}

impl BscFamilyPoint {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !(0.0..=0.5).contains(&v) {
                return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 0.5]")));
            }
        }
        Ok(Self { p, q })
    }
}

/// Joint table `P(0,0) = p(1-q), P(0,1) = pq, P(1,0) = (1-p)q,
/// P(1,1) = (1-p)(1-q)`; zero columns are dropped.
pub fn bsc_family_source(pt: BscFamilyPoint) -> Result<JointSource> {
    let BscFamilyPoint { p, q } = BscFamilyPoint::new(pt.p, pt.q)?;
    JointSource::new_pruned(
        vec![0, 1],
        vec![p * (1.0 - q), p * q],
        vec![(1.0 - p) * q, (1.0 - p) * (1.0 - q)],
    )
}

/// `Y` reveals `X` except with probability `epsilon`, when it is the
/// erasure symbol and `X` is a fair coin. `r` is `P(y=0 | y not erased)`.
pub fn erasure_source(epsilon: f64, r: f64) -> Result<JointSource> {
    if !(0.0..=1.0).contains(&epsilon) || !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("erasure source ({epsilon}, {r})")));
    }
    let seen = 1.0 - epsilon;
    JointSource::new_pruned(
        vec![0, 1, ERASURE_LABEL],
        vec![seen * r, 0.0, 0.5 * epsilon],
        vec![0.0, seen * (1.0 - r), 0.5 * epsilon],
    )
}

/// `X = Y xor Z` with `P(y=0) = py0` and `Z` Bernoulli(`q`).
pub fn xor_source(q: f64, py0: f64) -> Result<JointSource> {
    if !(0.0..=0.5).contains(&q) || !(py0 > 0.0 && py0 < 1.0) {
        return Err(Error::InvalidParameter(format!("xor source (q={q}, P(y=0)={py0})")));
    }
    let py1 = 1.0 - py0;
    JointSource::new_pruned(vec![0, 1], vec![py0 * (1.0 - q), py1 * q], vec![py0 * q, py1 * (1.0 - q)])
}

/// Builds `X = Y xor Z` sources for every `P(y=0)` in `py_list` and checks
/// they are pairwise equivalent.
pub fn example1_equivalence_check(q: f64, py_list: &[f64]) -> Result<bool> {
    let sources = py_list.iter().map(|&py| xor_source(q, py)).collect::<Result<Vec<_>>>()?;
    Ok(sources
        .iter()
        .enumerate()
        .all(|(i, a)| sources[i + 1..].iter().all(|b| are_equivalent(a, b, 1e-12))))
}

/// Pairwise equivalence across sources with differing crossovers.
pub fn xor_sources_equivalent(a: (f64, f64), b: (f64, f64)) -> Result<bool> {
    Ok(are_equivalent(&xor_source(a.0, a.1)?, &xor_source(b.0, b.1)?, 1e-12))
}
