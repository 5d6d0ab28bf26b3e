//! Discrete log-likelihood-ratio densities.
//!
//! A density is a finite set of atoms at finite LLR values plus two point
//! masses at `+inf` and `-inf`. Atoms closer than [`MERGE_TOL`] are merged at
//! construction so that two symbols with the same likelihood ratio always
//! produce the same atom.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// LLR values closer than this are treated as the same atom.
pub const MERGE_TOL: f64 = 1e-12;

/// Accepted deviation of the total mass from one before construction fails.
pub const MASS_TOL: f64 = 1e-9;

/// Atoms at `m` and `-m` are considered partners if their LLRs agree to this.
const PAIR_TOL: f64 = 1e-9;

/// Masses below this are in the subnormal regime where relative comparisons
/// carry no information.
const MASS_FLOOR: f64 = 1e-280;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLlrDensity {
    atoms: Vec<(f64, f64)>,
    mass_neg_inf: f64,
    mass_pos_inf: f64,
}

impl DiscreteLlrDensity {
    /// Builds a density from weighted LLR values. Infinite LLRs go to the
    /// infinity masses, zero-mass entries are dropped and nearby atoms merged.
    pub fn from_weighted<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut atoms = Vec::new();
        let mut pos = 0.0;
        let mut neg = 0.0;
        for (llr, mass) in entries {
            if !(mass >= 0.0) || !mass.is_finite() {
                return Err(Error::InvalidDensity(format!("bad mass {mass} at llr {llr}")));
            }
            if llr.is_nan() {
                return Err(Error::InvalidDensity("NaN llr".into()));
            }
            if mass == 0.0 {
                continue;
            }
            if llr == f64::INFINITY {
                pos += mass;
            } else if llr == f64::NEG_INFINITY {
                neg += mass;
            } else {
                atoms.push((llr, mass));
            }
        }
        Self::new(atoms, neg, pos)
    }

    /// Builds a density from finite atoms and the two infinity masses.
    ///
    /// Atoms are sorted and merged; the merged atom sits at the LLR of the
    /// cluster's heaviest member. A total mass within [`MASS_TOL`] of one is
    /// rescaled to exactly one.
    pub fn new(mut atoms: Vec<(f64, f64)>, mass_neg_inf: f64, mass_pos_inf: f64) -> Result<Self> {
        for &(llr, mass) in &atoms {
            if !llr.is_finite() {
                return Err(Error::InvalidDensity(format!("non-finite atom llr {llr}")));
            }
            if !(mass >= 0.0) || !mass.is_finite() {
                return Err(Error::InvalidDensity(format!("bad mass {mass}")));
            }
        }
        for m in [mass_neg_inf, mass_pos_inf] {
            if !(m >= 0.0) || !m.is_finite() {
                return Err(Error::InvalidDensity(format!("bad infinity mass {m}")));
            }
        }
        atoms.retain(|a| a.1 > 0.0);
        for a in &mut atoms {
            a.0 += 0.0; // -0.0 -> 0.0
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        let mut heaviest = 0.0;
        let mut last_llr = f64::NEG_INFINITY;
        for (llr, mass) in atoms {
            match merged.last_mut() {
                Some(top) if llr - last_llr < MERGE_TOL => {
                    top.1 += mass;
                    if mass > heaviest {
                        heaviest = mass;
                        top.0 = llr;
                    }
                }
                _ => {
                    merged.push((llr, mass));
                    heaviest = mass;
                }
            }
            last_llr = llr;
        }

        let total: f64 = merged.iter().map(|a| a.1).sum::<f64>() + mass_neg_inf + mass_pos_inf;
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDensity(format!("total mass {total} != 1")));
        }
        let mut d = Self {
            atoms: merged,
            mass_neg_inf,
            mass_pos_inf,
        };
        if (total - 1.0).abs() > 1e-12 {
            d.scale(1.0 / total);
        }
        Ok(d)
    }

    fn scale(&mut self, f: f64) {
        for a in &mut self.atoms {
            a.1 *= f;
        }
        self.mass_neg_inf *= f;
        self.mass_pos_inf *= f;
    }

    /// All finite atoms, sorted by LLR.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn mass_pos_inf(&self) -> f64 {
        self.mass_pos_inf
    }

    pub fn mass_neg_inf(&self) -> f64 {
        self.mass_neg_inf
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum::<f64>() + self.mass_neg_inf + self.mass_pos_inf
    }

    /// Mass on strictly negative LLRs plus half the mass at zero.
    pub fn error_probability(&self) -> f64 {
        let mut pe = self.mass_neg_inf;
        for &(llr, mass) in &self.atoms {
            if llr.abs() < MERGE_TOL {
                pe += 0.5 * mass;
            } else if llr < 0.0 {
                pe += mass;
            }
        }
        pe
    }

    /// The image under the parity-reversing map `m -> -m`.
    pub fn reversed(&self) -> Self {
        let mut atoms: Vec<(f64, f64)> = self.atoms.iter().map(|&(m, q)| (-m, q)).collect();
        atoms.reverse();
        Self {
            atoms,
            mass_neg_inf: self.mass_pos_inf,
            mass_pos_inf: self.mass_neg_inf,
        }
    }

    /// Tests `Q(-m) = e^{-m} Q(m)` atom by atom.
    ///
    /// For every atom at `m > 0` with mass `q` the atom at `-m` must carry
    /// `q e^{-m}` up to a relative error `tol`; a negative atom without a
    /// positive partner fails. Mass at `-inf` must vanish (`e^{-inf} = 0`)
    /// unless it is within `tol` of the `+inf` mass scale.
    pub fn check_symmetry(&self, tol: f64) -> bool {
        if self.mass_neg_inf > tol * self.mass_pos_inf && self.mass_neg_inf > MASS_FLOOR {
            return false;
        }
        let n = self.atoms.len();
        let mut matched = vec![false; n];
        for i in 0..n {
            let (m, q) = self.atoms[i];
            if m.abs() <= PAIR_TOL {
                matched[i] = true;
                continue;
            }
            if m < 0.0 {
                continue;
            }
            let expected = q * (-m).exp();
            match self.find_atom(-m) {
                Some(j) => {
                    matched[j] = true;
                    let qn = self.atoms[j].1;
                    if q > MASS_FLOOR && (qn - expected).abs() > tol * q {
                        return false;
                    }
                }
                None => {
                    if expected > MASS_FLOOR && expected > tol * q {
                        return false;
                    }
                }
            }
            matched[i] = true;
        }
        // negative atoms that no positive atom claimed
        self.atoms
            .iter()
            .zip(&matched)
            .all(|(&(_, q), &ok)| ok || q <= MASS_FLOOR)
    }

    fn find_atom(&self, llr: f64) -> Option<usize> {
        let idx = self.atoms.partition_point(|a| a.0 < llr - PAIR_TOL);
        (idx < self.atoms.len() && (self.atoms[idx].0 - llr).abs() <= PAIR_TOL).then_some(idx)
    }

    /// Atom-by-atom comparison: same atom count, LLRs and masses within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.atoms.len() == other.atoms.len()
            && (self.mass_pos_inf - other.mass_pos_inf).abs() <= tol
            && (self.mass_neg_inf - other.mass_neg_inf).abs() <= tol
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|(a, b)| (a.0 - b.0).abs() <= tol && (a.1 - b.1).abs() <= tol)
    }

    /// Total variation distance between two discrete densities (atoms matched
    /// at [`MERGE_TOL`]).
    pub fn total_variation(&self, other: &Self) -> f64 {
        let mut dist = (self.mass_pos_inf - other.mass_pos_inf).abs()
            + (self.mass_neg_inf - other.mass_neg_inf).abs();
        let (a, b) = (&self.atoms, &other.atoms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0 - MERGE_TOL) {
                dist += a[i].1;
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 - MERGE_TOL {
                dist += b[j].1;
                j += 1;
            } else {
                dist += (a[i].1 - b[j].1).abs();
                i += 1;
                j += 1;
            }
        }
        0.5 * dist
    }

    /// Parses `llr mass` lines plus optional `+inf mass` / `-inf mass` lines.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(err("expected `llr mass`"));
            };
            let llr = match a {
                "+inf" | "inf" => f64::INFINITY,
                "-inf" => f64::NEG_INFINITY,
                _ => a.parse::<f64>().map_err(|_| err("bad llr"))?,
            };
            let mass: f64 = b.parse().map_err(|_| err("bad mass"))?;
            if mass < 0.0 {
                return Err(err("negative mass"));
            }
            entries.push((llr, mass));
        }
        Self::from_weighted(entries)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(m, q) in &self.atoms {
            let _ = writeln!(out, "{m:.17e} {q:.17e}");
        }
        if self.mass_pos_inf > 0.0 {
            let _ = writeln!(out, "+inf {:.17e}", self.mass_pos_inf);
        }
        if self.mass_neg_inf > 0.0 {
            let _ = writeln!(out, "-inf {:.17e}", self.mass_neg_inf);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_close_atoms() {
        let d = DiscreteLlrDensity::new(vec![(1.0, 0.25), (1.0 + 1e-14, 0.25), (-1.0, 0.5)], 0.0, 0.0)
            .unwrap();
        assert_eq!(d.atoms().len(), 2);
        assert!((d.atoms()[1].1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_total() {
        assert!(DiscreteLlrDensity::new(vec![(0.0, 0.9)], 0.0, 0.0).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let flat = DiscreteLlrDensity::new(vec![(-1.0, 0.5), (1.0, 0.5)], 0.0, 0.0).unwrap();
        assert!(!flat.check_symmetry(1e-9));
        let zero = DiscreteLlrDensity::new(vec![(0.0, 1.0)], 0.0, 0.0).unwrap();
        assert!(zero.check_symmetry(1e-9));
        let l9 = 9f64.ln();
        let bsc = DiscreteLlrDensity::new(vec![(-l9, 0.1), (l9, 0.9)], 0.0, 0.0).unwrap();
        assert!(bsc.check_symmetry(1e-12));
        let bec = DiscreteLlrDensity::new(vec![(0.0, 0.3)], 0.0, 0.7).unwrap();
        assert!(bec.check_symmetry(1e-12));
        let bad_inf = DiscreteLlrDensity::new(vec![(0.0, 0.3)], 0.7, 0.0).unwrap();
        assert!(!bad_inf.check_symmetry(1e-9));
        let orphan = DiscreteLlrDensity::new(vec![(-2.0, 0.1), (0.0, 0.9)], 0.0, 0.0).unwrap();
        assert!(!orphan.check_symmetry(1e-9));
    }

    #[test]
    fn error_probability_half_weight() {
        let d = DiscreteLlrDensity::new(vec![(0.0, 0.5), (2.0, 0.5)], 0.0, 0.0).unwrap();
        assert!((d.error_probability() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn text_round_trip() {
        let d = DiscreteLlrDensity::new(vec![(-0.5, 0.2), (0.0, 0.1)], 0.0, 0.7).unwrap();
        let back = DiscreteLlrDensity::parse(&d.to_text()).unwrap();
        assert!(d.approx_eq(&back, 1e-15));
    }

    #[test]
    fn total_variation_disjoint() {
        let a = DiscreteLlrDensity::new(vec![(1.0, 1.0)], 0.0, 0.0).unwrap();
        let b = DiscreteLlrDensity::new(vec![(2.0, 1.0)], 0.0, 0.0).unwrap();
        assert!((a.total_variation(&b) - 1.0).abs() < 1e-15);
        assert_eq!(a.total_variation(&a), 0.0);
    }
}
