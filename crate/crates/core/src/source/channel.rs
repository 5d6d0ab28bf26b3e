//! Binary-input output-symmetric channels and the source-to-channel map.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::source::density::DiscreteLlrDensity;
use crate::source::joint::{log_ratio, JointSource};

/// Pairing check tolerance for LLR partners `m` and `-m`.
const PAIR_TOL: f64 = 1e-9;

/// A BIOS channel given by `p(y|0)` and an involution `sigma` on the outputs;
/// `p(y|1) = p(sigma(y)|0)`.
///
/// Each output is labelled by its LLR `ln(p(y|0)/p(y|1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiosChannel {
    p_given_0: Vec<f64>,
    pairing: Vec<usize>,
    llrs: Vec<f64>,
}

impl BiosChannel {
    pub fn new(p_given_0: Vec<f64>, pairing: Vec<usize>) -> Result<Self> {
        let n = p_given_0.len();
        if n == 0 || pairing.len() != n {
            return Err(Error::InvalidChannel("pairing length differs from output count".into()));
        }
        if p_given_0.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidChannel("negative transition probability".into()));
        }
        let total: f64 = p_given_0.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidChannel(format!("p(.|0) sums to {total}")));
        }
        for (y, &s) in pairing.iter().enumerate() {
            if s >= n || pairing[s] != y {
                return Err(Error::InvalidChannel(format!("pairing is not an involution at {y}")));
            }
        }
        let llrs = (0..n)
            .map(|y| log_ratio(p_given_0[y], p_given_0[pairing[y]]))
            .collect();
        Ok(Self {
            p_given_0,
            pairing,
            llrs,
        })
    }

    /// Binary symmetric channel with crossover `q`.
    pub fn bsc(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::InvalidChannel(format!("crossover {q} out of range")));
        }
        Self::new(vec![1.0 - q, q], vec![1, 0])
    }

    /// Binary erasure channel with outputs `{0, e, 1}`.
    pub fn bec(eps: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::InvalidChannel(format!("erasure probability {eps} out of range")));
        }
        Self::new(vec![1.0 - eps, eps, 0.0], vec![2, 1, 0])
    }

    /// The unique BIOS channel whose initial message density (input 0) is the
    /// symmetric density `d`.
    ///
    /// Outputs are ordered by LLR: `-inf` (if any infinite mass), the finite
    /// atoms ascending, `+inf`. Output `i` pairs with output `N-1-i`.
    pub fn from_symmetric_density(d: &DiscreteLlrDensity) -> Result<Self> {
        let with_inf = d.mass_pos_inf() > 0.0 || d.mass_neg_inf() > 0.0;
        let mut llrs = Vec::new();
        let mut probs = Vec::new();
        if with_inf {
            llrs.push(f64::NEG_INFINITY);
            probs.push(d.mass_neg_inf());
        }
        for &(m, q) in d.atoms() {
            llrs.push(m);
            probs.push(q);
        }
        if with_inf {
            llrs.push(f64::INFINITY);
            probs.push(d.mass_pos_inf());
        }
        let n = llrs.len();
        for i in 0..n {
            let (a, b) = (llrs[i], llrs[n - 1 - i]);
            let ok = if a.is_infinite() { a == -b } else { (a + b).abs() <= PAIR_TOL };
            if !ok {
                return Err(Error::AsymmetricDensity);
            }
        }
        let pairing = (0..n).rev().collect();
        Self::new(probs, pairing)
    }

    pub fn num_outputs(&self) -> usize {
        self.p_given_0.len()
    }

    pub fn p_given_0(&self) -> &[f64] {
        &self.p_given_0
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// Output LLR labels `ln(p(y|0)/p(y|1))`.
    pub fn output_llrs(&self) -> &[f64] {
        &self.llrs
    }

    /// `p(y|x)`.
    pub fn transition(&self, x: u8, y: usize) -> f64 {
        if x == 0 {
            self.p_given_0[y]
        } else {
            self.p_given_0[self.pairing[y]]
        }
    }

    /// Capacity in bits; the uniform input is optimal for BIOS channels.
    pub fn capacity(&self) -> f64 {
        let mut c = 0.0;
        for y in 0..self.num_outputs() {
            let (a, b) = (self.transition(0, y), self.transition(1, y));
            let avg = 0.5 * (a + b);
            for p in [a, b] {
                if p > 0.0 {
                    c += 0.5 * p * (p / avg).log2();
                }
            }
        }
        c
    }

    /// Density of the initial LLR `ln(p(y|0)/p(y|1))` given input 0,
    /// recomputed from the transition probabilities.
    pub fn initial_density(&self) -> DiscreteLlrDensity {
        let entries = (0..self.num_outputs()).map(|y| {
            let llr = log_ratio(self.transition(0, y), self.transition(1, y));
            (llr, self.p_given_0[y])
        });
        DiscreteLlrDensity::from_weighted(entries).expect("channel probabilities are valid")
    }

    /// Text table: one line `index llr p(y|0) p(y|1) pair` per output.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# output llr p(y|0) p(y|1) pair\n");
        for y in 0..self.num_outputs() {
            let _ = writeln!(
                out,
                "{y} {} {:.17e} {:.17e} {}",
                fmt_llr(self.llrs[y]),
                self.transition(0, y),
                self.transition(1, y),
                self.pairing[y]
            );
        }
        out
    }
}

fn fmt_llr(m: f64) -> String {
    if m == f64::INFINITY {
        "+inf".into()
    } else if m == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{m:.17e}")
    }
}

/// The channel `Ch(P)` whose initial message density equals the source's.
pub fn source_to_channel(source: &JointSource) -> BiosChannel {
    BiosChannel::from_symmetric_density(&source.initial_density())
        .expect("source densities are symmetric")
}
