//! Joint distributions `P(x, y)` on `{0,1} x Y`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::source::density::DiscreteLlrDensity;

/// Accepted deviation of the table sum from one.
pub const SUM_TOL: f64 = 1e-9;

/// Binary entropy in bits with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

/// A joint distribution of a binary source `X` and side information `Y`.
///
/// Columns are kept in ascending label order. Every column has positive
/// total probability.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSource {
    labels: Vec<i64>,
    p0: Vec<f64>,
    p1: Vec<f64>,
}

impl JointSource {
    /// Builds a source from its two rows `P(x=0, y)` and `P(x=1, y)`.
    ///
    /// Fails on negative entries, duplicate labels, zero-probability columns
    /// or a total that misses one by more than [`SUM_TOL`].
    pub fn new(labels: Vec<i64>, p0: Vec<f64>, p1: Vec<f64>) -> Result<Self> {
        if labels.len() != p0.len() || labels.len() != p1.len() {
            return Err(Error::InvalidSource("row lengths differ from label count".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidSource("empty alphabet".into()));
        }
        for (k, (&a, &b)) in p0.iter().zip(&p1).enumerate() {
            if !(a >= 0.0 && b >= 0.0) || !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidSource(format!("negative probability at y={}", labels[k])));
            }
            if a + b <= 0.0 {
                return Err(Error::InvalidSource(format!("symbol y={} has zero probability", labels[k])));
            }
        }
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by_key(|&k| labels[k]);
        if order.windows(2).any(|w| labels[w[0]] == labels[w[1]]) {
            return Err(Error::InvalidSource("duplicate y label".into()));
        }
        let total: f64 = p0.iter().chain(&p1).sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidSource(format!("probabilities sum to {total}")));
        }
        let scale = if (total - 1.0).abs() > 1e-12 { 1.0 / total } else { 1.0 };
        Ok(Self {
            labels: order.iter().map(|&k| labels[k]).collect(),
            p0: order.iter().map(|&k| p0[k] * scale).collect(),
            p1: order.iter().map(|&k| p1[k] * scale).collect(),
        })
    }

    /// Like [`JointSource::new`] but silently drops zero-probability columns.
    /// Used for parametric families whose boundary points lose a symbol.
    pub fn new_pruned(labels: Vec<i64>, p0: Vec<f64>, p1: Vec<f64>) -> Result<Self> {
        if labels.len() != p0.len() || labels.len() != p1.len() {
            return Err(Error::InvalidSource("row lengths differ from label count".into()));
        }
        let keep: Vec<usize> = (0..labels.len()).filter(|&k| p0[k] + p1[k] > 0.0).collect();
        Self::new(
            keep.iter().map(|&k| labels[k]).collect(),
            keep.iter().map(|&k| p0[k]).collect(),
            keep.iter().map(|&k| p1[k]).collect(),
        )
    }

    /// Parses `x y prob` lines. `#` starts a comment line. Pairs that never
    /// appear have probability zero.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table: BTreeMap<i64, [Option<f64>; 2]> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err(format!("expected `x y prob`, got {line:?}")));
            }
            let x: u8 = match fields[0] {
                "0" => 0,
                "1" => 1,
                other => return Err(err(format!("x must be 0 or 1, got {other:?}"))),
            };
            let y: i64 = fields[1]
                .parse()
                .map_err(|_| err(format!("y must be an integer label, got {:?}", fields[1])))?;
            let p: f64 = fields[2]
                .parse()
                .map_err(|_| err(format!("bad probability {:?}", fields[2])))?;
            if !(p >= 0.0) || !p.is_finite() {
                return Err(err(format!("negative probability {p}")));
            }
            let slot = &mut table.entry(y).or_default()[x as usize];
            if slot.is_some() {
                return Err(err(format!("duplicate entry for x={x} y={y}")));
            }
            *slot = Some(p);
        }
        let labels = table.keys().copied().collect();
        let p0 = table.values().map(|v| v[0].unwrap_or(0.0)).collect();
        let p1 = table.values().map(|v| v[1].unwrap_or(0.0)).collect();
        Self::new(labels, p0, p1)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for x in 0..2 {
            for (k, &y) in self.labels.iter().enumerate() {
                let _ = writeln!(out, "{x} {y} {:.17e}", self.joint(x, k));
            }
        }
        out
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn num_symbols(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, y: i64) -> Result<usize> {
        self.labels.binary_search(&y).map_err(|_| Error::UnknownSymbol(y))
    }

    /// `P(x, y)` for the column at index `k`.
    pub fn joint(&self, x: u8, k: usize) -> f64 {
        if x == 0 {
            self.p0[k]
        } else {
            self.p1[k]
        }
    }

    /// `P(x)`.
    pub fn marginal_x(&self, x: u8) -> f64 {
        if x == 0 {
            self.p0.iter().sum()
        } else {
            self.p1.iter().sum()
        }
    }

    /// `P(y)` for the column at index `k`.
    pub fn marginal_y(&self, k: usize) -> f64 {
        self.p0[k] + self.p1[k]
    }

    /// `ln(P(x=0, y) / P(x=1, y))` for the column at index `k`, infinite when
    /// one of the joints vanishes.
    pub fn llr_at(&self, k: usize) -> f64 {
        log_ratio(self.p0[k], self.p1[k])
    }

    /// Initial belief-propagation message for side-information symbol `y`.
    pub fn initial_llr(&self, y: i64) -> Result<f64> {
        Ok(self.llr_at(self.index_of(y)?))
    }

    /// Density of the initial message averaged over `x` with the
    /// parity-reversal applied for `x = 1`: an atom at `+m(y)` with mass
    /// `P(0, y)` and one at `-m(y)` with mass `P(1, y)`.
    pub fn initial_density(&self) -> DiscreteLlrDensity {
        let entries = (0..self.num_symbols()).flat_map(|k| {
            let m = self.llr_at(k);
            [(m, self.p0[k]), (-m, self.p1[k])]
        });
        DiscreteLlrDensity::from_weighted(entries).expect("a valid source yields a valid density")
    }

    /// `H(X|Y)` in bits.
    pub fn conditional_entropy(&self) -> f64 {
        (0..self.num_symbols())
            .map(|k| {
                let py = self.marginal_y(k);
                py * binary_entropy(self.p0[k] / py)
            })
            .sum()
    }

    /// `H(X)` in bits.
    pub fn entropy_x(&self) -> f64 {
        binary_entropy(self.marginal_x(0))
    }

    /// The source seen by a decoder that ignores the prior on `X`: the same
    /// channel `P(y|x)` driven by a uniform `X`. Its initial LLRs are the
    /// channel likelihood ratios `ln(P(y|0) / P(y|1))`.
    pub fn uniform_prior_estimate(&self) -> Result<Self> {
        let (q0, q1) = (self.marginal_x(0), self.marginal_x(1));
        if q0 == 0.0 || q1 == 0.0 {
            return Err(Error::InvalidSource(
                "channel likelihoods undefined when one value of X has zero probability".into(),
            ));
        }
        Self::new_pruned(
            self.labels.clone(),
            self.p0.iter().map(|&a| 0.5 * a / q0).collect(),
            self.p1.iter().map(|&b| 0.5 * b / q1).collect(),
        )
    }
}

pub(crate) fn log_ratio(a: f64, b: f64) -> f64 {
    match (a > 0.0, b > 0.0) {
        (true, true) => (a / b).ln(),
        (true, false) => f64::INFINITY,
        (false, true) => f64::NEG_INFINITY,
        (false, false) => 0.0,
    }
}

/// Density of the mismatched initial message: LLRs come from `est`, masses
/// from `truth`. The result is symmetric only when the estimate is right
/// (or differs only in ways that leave the posterior unchanged).
pub fn mismatch_initial_density(
    truth: &JointSource,
    est: &JointSource,
) -> Result<DiscreteLlrDensity> {
    if truth.labels != est.labels {
        return Err(Error::AlphabetMismatch);
    }
    let entries = (0..truth.num_symbols()).flat_map(|k| {
        let m = est.llr_at(k);
        [(m, truth.p0[k]), (-m, truth.p1[k])]
    });
    DiscreteLlrDensity::from_weighted(entries)
}
