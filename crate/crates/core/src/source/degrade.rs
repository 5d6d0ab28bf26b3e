//! Stochastic maps, degraded sources and the channel degradation order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::source::channel::BiosChannel;
use crate::source::joint::JointSource;
use crate::source::lp;

/// Slack applied to every equality constraint of the degradation test.
pub const DEGRADE_TOL: f64 = 1e-9;

const MAX_PIVOTS: usize = 200_000;

/// A row-stochastic matrix from labels `Y` to labels `Y'`.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMap {
    in_labels: Vec<i64>,
    out_labels: Vec<i64>,
    rows: Vec<Vec<f64>>,
}

impl StochasticMap {
    pub fn new(in_labels: Vec<i64>, out_labels: Vec<i64>, mut rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != in_labels.len() {
            return Err(Error::InvalidMap("row count differs from input alphabet".into()));
        }
        let distinct = |v: &[i64]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
        if !distinct(&in_labels) || !distinct(&out_labels) {
            return Err(Error::InvalidMap("duplicate label".into()));
        }
        for (i, row) in rows.iter_mut().enumerate() {
            if row.len() != out_labels.len() {
                return Err(Error::InvalidMap(format!("row {i} has wrong length")));
            }
            if row.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                return Err(Error::InvalidMap(format!("row {i} has a negative entry")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidMap(format!("row {i} sums to {s}")));
            }
            if (s - 1.0).abs() > 1e-12 {
                row.iter_mut().for_each(|p| *p /= s);
            }
        }
        Ok(Self {
            in_labels,
            out_labels,
            rows,
        })
    }

    pub fn identity(labels: &[i64]) -> Self {
        let n = labels.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self {
            in_labels: labels.to_vec(),
            out_labels: labels.to_vec(),
            rows,
        }
    }

    /// Parses `y y' prob` lines; missing pairs are zero.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<(i64, i64), f64> = BTreeMap::new();
        let mut ins = BTreeSet::new();
        let mut outs = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(err("expected `y y' prob`"));
            }
            let y: i64 = f[0].parse().map_err(|_| err("bad input label"))?;
            let yp: i64 = f[1].parse().map_err(|_| err("bad output label"))?;
            let p: f64 = f[2].parse().map_err(|_| err("bad probability"))?;
            if entries.insert((y, yp), p).is_some() {
                return Err(err("duplicate entry"));
            }
            ins.insert(y);
            outs.insert(yp);
        }
        let in_labels: Vec<i64> = ins.into_iter().collect();
        let out_labels: Vec<i64> = outs.into_iter().collect();
        let rows = in_labels
            .iter()
            .map(|&y| {
                out_labels
                    .iter()
                    .map(|&yp| entries.get(&(y, yp)).copied().unwrap_or(0.0))
                    .collect()
            })
            .collect();
        Self::new(in_labels, out_labels, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, &y) in self.in_labels.iter().enumerate() {
            for (j, &yp) in self.out_labels.iter().enumerate() {
                if self.rows[i][j] > 0.0 {
                    let _ = writeln!(out, "{y} {yp} {:.17e}", self.rows[i][j]);
                }
            }
        }
        out
    }

    pub fn in_labels(&self) -> &[i64] {
        &self.in_labels
    }

    pub fn out_labels(&self) -> &[i64] {
        &self.out_labels
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// `P'(x, y') = sum_y P(x, y) M[y][y']`. Output symbols that receive no
/// probability are dropped.
pub fn degrade_source(source: &JointSource, map: &StochasticMap) -> Result<JointSource> {
    if map.in_labels() != source.labels() {
        return Err(Error::DimensionMismatch {
            what: "map input alphabet vs source alphabet",
            expected: source.num_symbols(),
            got: map.in_labels().len(),
        });
    }
    let m = map.out_labels().len();
    let mut p0 = vec![0.0; m];
    let mut p1 = vec![0.0; m];
    for (k, row) in map.rows().iter().enumerate() {
        for j in 0..m {
            p0[j] += source.joint(0, k) * row[j];
            p1[j] += source.joint(1, k) * row[j];
        }
    }
    JointSource::new_pruned(map.out_labels().to_vec(), p0, p1)
}

/// Whether `b` is physically degraded with respect to `a`: some
/// row-stochastic `W` gives `p_b(.|x) = p_a(.|x) W` for both inputs, with
/// every equality relaxed by `tol`.
pub fn is_degraded(a: &BiosChannel, b: &BiosChannel, tol: f64) -> Result<bool> {
    let (na, nb) = (a.num_outputs(), b.num_outputs());
    let var = |i: usize, j: usize| i * nb + j;
    let mut rows = Vec::new();
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for i in 0..na {
        let mut r = vec![0.0; na * nb];
        for j in 0..nb {
            r[var(i, j)] = 1.0;
        }
        rows.push(r);
        lo.push(1.0 - tol);
        hi.push(1.0 + tol);
    }
    for x in 0..2u8 {
        for j in 0..nb {
            let mut r = vec![0.0; na * nb];
            for i in 0..na {
                r[var(i, j)] = a.transition(x, i);
            }
            rows.push(r);
            let target = b.transition(x, j);
            lo.push(target - tol);
            hi.push(target + tol);
        }
    }
    lp::range_feasible(&rows, &lo, &hi, MAX_PIVOTS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::channel::source_to_channel;
    use crate::source::joint::binary_entropy;

    fn bsc_source(q: f64) -> JointSource {
        JointSource::new(vec![0, 1], vec![0.5 * (1.0 - q), 0.5 * q], vec![0.5 * q, 0.5 * (1.0 - q)])
            .unwrap()
    }

    fn flip_map(q: f64) -> StochasticMap {
        StochasticMap::new(vec![0, 1], vec![0, 1], vec![vec![1.0 - q, q], vec![q, 1.0 - q]]).unwrap()
    }

    #[test]
    fn identity_degradation() {
        let s = bsc_source(0.1);
        assert_eq!(degrade_source(&s, &StochasticMap::identity(s.labels())).unwrap(), s);
    }

    #[test]
    fn bsc_composition() {
        let d = degrade_source(&bsc_source(0.1), &flip_map(0.1)).unwrap();
        let expect = bsc_source(0.18);
        for x in 0..2 {
            for k in 0..2 {
                assert!((d.joint(x, k) - expect.joint(x, k)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn collapse_destroys_side_information() {
        let s = JointSource::new(vec![0, 1], vec![0.36, 0.04], vec![0.06, 0.54]).unwrap();
        let m = StochasticMap::new(vec![0, 1], vec![7], vec![vec![1.0], vec![1.0]]).unwrap();
        let d = degrade_source(&s, &m).unwrap();
        assert_eq!(d.num_symbols(), 1);
        assert!((d.conditional_entropy() - binary_entropy(0.4)).abs() < 1e-12);
        assert!((d.conditional_entropy() - s.entropy_x()).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let s = bsc_source(0.1);
        let m = StochasticMap::identity(&[0, 1, 2]);
        assert!(matches!(degrade_source(&s, &m), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn degradation_order() {
        let s = bsc_source(0.1);
        let a = source_to_channel(&s);
        let b = source_to_channel(&degrade_source(&s, &flip_map(0.1)).unwrap());
        assert!(is_degraded(&a, &b, DEGRADE_TOL).unwrap());
        assert!(!is_degraded(&b, &a, DEGRADE_TOL).unwrap());
        assert!(is_degraded(&a, &a, DEGRADE_TOL).unwrap());

        let bec3 = BiosChannel::bec(0.3).unwrap();
        let bec2 = BiosChannel::bec(0.2).unwrap();
        assert!(!is_degraded(&bec3, &bec2, DEGRADE_TOL).unwrap());
        assert!(is_degraded(&bec2, &bec3, DEGRADE_TOL).unwrap());
    }

    #[test]
    fn map_parse() {
        let m = StochasticMap::parse("0 0 0.9\n0 1 0.1\n1 0 0.1\n1 1 0.9\n").unwrap();
        assert_eq!(m, flip_map(0.1));
        assert!(StochasticMap::parse("0 0 0.5\n").is_err());
        assert_eq!(StochasticMap::parse(&m.to_text()).unwrap(), m);
    }
}
