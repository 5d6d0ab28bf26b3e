//! Syndrome encoding and memoryless source sampling.

use rand::Rng;

use crate::error::{Error, Result};
use crate::ldpc::graph::TannerGraph;
use crate::rng::seeded;
use crate::source::JointSource;

/// Parses an ASCII `0`/`1` string, ignoring whitespace.
pub fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse {
                line: 1,
                msg: format!("character {i} is {c:?}, expected 0 or 1"),
            }),
        })
        .collect()
}

pub fn format_bits(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

/// The syndrome `s = H x` of a word, one bit per check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syndrome(pub Vec<u8>);

impl Syndrome {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        Syndrome(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }
}

pub fn syndrome_encode(g: &TannerGraph, x: &[u8]) -> Result<Syndrome> {
    if x.len() != g.num_variables() {
        return Err(Error::DimensionMismatch {
            what: "word length vs variable count",
            expected: g.num_variables(),
            got: x.len(),
        });
    }
    Ok(Syndrome(
        (0..g.num_checks())
            .map(|c| g.check_neighbors(c).fold(0u8, |acc, v| acc ^ (x[v] & 1)))
            .collect(),
    ))
}

/// `n` i.i.d. draws of `(x, y)` from the joint table; `y` holds labels.
pub fn sample_source_pairs(source: &JointSource, n: usize, seed: u64) -> (Vec<u8>, Vec<i64>) {
    let k = source.num_symbols();
    let mut cells = Vec::with_capacity(2 * k);
    let mut acc = 0.0;
    for x in 0..2u8 {
        for j in 0..k {
            acc += source.joint(x, j);
            cells.push((acc, x, source.labels()[j]));
        }
    }
    let mut rng = seeded(seed);
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.gen::<f64>() * acc;
        // first cell whose cumulative mass exceeds u; empty cells never match
        let idx = cells.partition_point(|c| c.0 <= u).min(cells.len() - 1);
        let (_, x, y) = cells[idx];
        xs.push(x);
        ys.push(y);
    }
    (xs, ys)
}
