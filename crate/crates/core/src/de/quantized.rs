use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::source::DiscreteLlrDensity;

/// A density on the uniform LLR grid `{-K step, ..., +K step}` plus point
/// masses at `+-inf`. `masses[i]` sits at `(i - K) * step`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedDensity {
    step: f64,
    half_range: usize,
    masses: Vec<f64>,
    mass_neg_inf: f64,
    mass_pos_inf: f64,
}

/// Grid index offset (from the centre) of the point nearest to `llr`; exact
/// ties go toward zero.
pub(crate) fn nearest_index(llr: f64, step: f64) -> i64 {
    let r = llr / step;
    let k = (r.abs() - 0.5).ceil().max(0.0);
    if r < 0.0 {
        -(k as i64)
    } else {
        k as i64
    }
}

/// How a positive LLR `x` is shared between grid points so that `e^{-m}`
/// pairs stay exact: positive mass puts `plus` at `k` and the rest at `k+1`
/// (or `+inf` when saturated); the mirrored negative mass puts `minus` at
/// `-k` and the rest at `-(k+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SymmetricSplit {
    pub k: usize,
    pub plus: f64,
    pub minus: f64,
    pub saturated: bool,
}

pub(crate) fn symmetric_split(x: f64, step: f64, half_range: usize) -> SymmetricSplit {
    let edge = half_range as f64 * step;
    if x >= edge {
        return SymmetricSplit {
            k: half_range,
            plus: (edge - x).exp(),
            minus: 1.0,
            saturated: true,
        };
    }
    let k = ((x / step).floor() as usize).min(half_range - 1);
    let k1 = k as f64 * step;
    let t = ((k1 + step - x).exp_m1() / step.exp_m1()).clamp(0.0, 1.0);
    SymmetricSplit {
        k,
        plus: t,
        minus: (t * (x - k1).exp()).clamp(0.0, 1.0),
        saturated: false,
    }
}

impl QuantizedDensity {
    pub fn new(
        step: f64,
        half_range: usize,
        masses: Vec<f64>,
        mass_neg_inf: f64,
        mass_pos_inf: f64,
    ) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidParameter(format!("grid step {step}")));
        }
        if masses.len() != 2 * half_range + 1 {
            return Err(Error::DimensionMismatch {
                what: "mass vector vs grid size",
                expected: 2 * half_range + 1,
                got: masses.len(),
            });
        }
        if masses
            .iter()
            .chain([&mass_neg_inf, &mass_pos_inf])
            .any(|&q| !(q >= 0.0) || !q.is_finite())
        {
            return Err(Error::InvalidDensity("negative or non-finite mass".into()));
        }
        let d = Self {
            step,
            half_range,
            masses,
            mass_neg_inf,
            mass_pos_inf,
        };
        let total = d.total_mass();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDensity(format!("total mass {total}")));
        }
        Ok(d)
    }

    /// Internal constructor for already-validated parts.
    pub(crate) fn from_parts(step: f64, half_range: usize, masses: Vec<f64>, neg: f64, pos: f64) -> Self {
        Self {
            step,
            half_range,
            masses,
            mass_neg_inf: neg,
            mass_pos_inf: pos,
        }
    }

    /// Maps every atom to its nearest grid point (ties toward zero). Finite
    /// atoms beyond the range land on `+-K step`; infinities stay infinite.
    pub fn quantize(d: &DiscreteLlrDensity, step: f64, half_range: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidParameter(format!("grid step {step}")));
        }
        let k = half_range as i64;
        let mut masses = vec![0.0; 2 * half_range + 1];
        for &(llr, q) in d.atoms() {
            let i = nearest_index(llr, step).clamp(-k, k);
            masses[(i + k) as usize] += q;
        }
        Ok(Self::from_parts(step, half_range, masses, d.mass_neg_inf(), d.mass_pos_inf()))
    }

    /// Like `quantize`, but each atom is shared between its two neighbouring
    /// grid points so that a symmetric density stays exactly symmetric.
    /// Atoms beyond `+K step` split between the edge and `+inf`.
    pub fn quantize_symmetric(d: &DiscreteLlrDensity, step: f64, half_range: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || half_range == 0 {
            return Err(Error::InvalidParameter(format!("grid step {step}, half-range {half_range}")));
        }
        let k_max = half_range;
        let mut masses = vec![0.0; 2 * k_max + 1];
        let mut pos = d.mass_pos_inf();
        for &(llr, q) in d.atoms() {
            if llr == 0.0 {
                masses[k_max] += q;
                continue;
            }
            let sp = symmetric_split(llr.abs(), step, k_max);
            if llr > 0.0 {
                masses[k_max + sp.k] += sp.plus * q;
                if sp.saturated {
                    pos += (1.0 - sp.plus) * q;
                } else {
                    masses[k_max + sp.k + 1] += (1.0 - sp.plus) * q;
                }
            } else if sp.saturated {
                masses[0] += q;
            } else {
                masses[k_max - sp.k] += sp.minus * q;
                masses[k_max - sp.k - 1] += (1.0 - sp.minus) * q;
            }
        }
        Ok(Self::from_parts(step, half_range, masses, d.mass_neg_inf(), pos))
    }

    /// All mass at `+inf`.
    pub fn certain(step: f64, half_range: usize) -> Self {
        Self::from_parts(step, half_range, vec![0.0; 2 * half_range + 1], 0.0, 1.0)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn half_range(&self) -> usize {
        self.half_range
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mass_neg_inf(&self) -> f64 {
        self.mass_neg_inf
    }

    pub fn mass_pos_inf(&self) -> f64 {
        self.mass_pos_inf
    }

    /// LLR of grid slot `i`.
    pub fn llr_at(&self, i: usize) -> f64 {
        (i as f64 - self.half_range as f64) * self.step
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum::<f64>() + self.mass_neg_inf + self.mass_pos_inf
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.step == other.step && self.half_range == other.half_range
    }

    /// Mass on negative grid points and `-inf`, plus half the mass at zero.
    pub fn error_probability(&self) -> f64 {
        let k = self.half_range;
        self.masses[..k].iter().sum::<f64>() + self.mass_neg_inf + 0.5 * self.masses[k]
    }

    /// Total variation distance; `None` if the grids differ.
    pub fn total_variation(&self, other: &Self) -> Option<f64> {
        if !self.same_grid(other) {
            return None;
        }
        let body: f64 = self.masses.iter().zip(&other.masses).map(|(a, b)| (a - b).abs()).sum();
        Some(
            0.5 * (body
                + (self.mass_neg_inf - other.mass_neg_inf).abs()
                + (self.mass_pos_inf - other.mass_pos_inf).abs()),
        )
    }

    pub fn to_discrete(&self) -> DiscreteLlrDensity {
        let atoms = self
            .masses
            .iter()
            .enumerate()
            .filter(|(_, &q)| q > 0.0)
            .map(|(i, &q)| (self.llr_at(i), q))
            .collect();
        DiscreteLlrDensity::new(atoms, self.mass_neg_inf, self.mass_pos_inf)
            .expect("quantized densities hold unit mass")
    }

    pub(crate) fn scale(&mut self, f: f64) {
        self.masses.iter_mut().for_each(|q| *q *= f);
        self.mass_neg_inf *= f;
        self.mass_pos_inf *= f;
    }

    /// Dump format: `step K mass_neg_inf mass_pos_inf`, then `2K+1` masses.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:.17e} {} {:.17e} {:.17e}\n",
            self.step, self.half_range, self.mass_neg_inf, self.mass_pos_inf
        );
        for q in &self.masses {
            let _ = writeln!(out, "{q:.17e}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let err = |line: usize, msg: &str| Error::Parse {
            line: line + 1,
            msg: msg.to_string(),
        };
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 {
            return Err(err(hl, "header must be `step K mass_neg_inf mass_pos_inf`"));
        }
        let step: f64 = h[0].parse().map_err(|_| err(hl, "bad step"))?;
        let k: usize = h[1].parse().map_err(|_| err(hl, "bad K"))?;
        let neg: f64 = h[2].parse().map_err(|_| err(hl, "bad mass_neg_inf"))?;
        let pos: f64 = h[3].parse().map_err(|_| err(hl, "bad mass_pos_inf"))?;
        let masses = lines
            .map(|(i, l)| l.trim().parse::<f64>().map_err(|_| err(i, "bad mass")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(step, k, masses, neg, pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_index_ties_toward_zero() {
        assert_eq!(nearest_index(2.5, 1.0), 2);
        assert_eq!(nearest_index(-2.5, 1.0), -2);
        assert_eq!(nearest_index(2.51, 1.0), 3);
        assert_eq!(nearest_index(0.4, 1.0), 0);
        assert_eq!(nearest_index(-0.6, 1.0), -1);
    }

    #[test]
    fn quantize_examples() {
        let zero = DiscreteLlrDensity::new(vec![(0.0, 1.0)], 0.0, 0.0).unwrap();
        let q = QuantizedDensity::quantize(&zero, 1.0 / 16.0, 10).unwrap();
        assert_eq!(q.masses()[10], 1.0);

        let l9 = 9f64.ln();
        let bsc = DiscreteLlrDensity::new(vec![(-l9, 0.1), (l9, 0.9)], 0.0, 0.0).unwrap();
        let q = QuantizedDensity::quantize(&bsc, 1.0 / 16.0, 480).unwrap();
        let hi = q.masses().iter().position(|&m| m == 0.9).unwrap();
        let lo = q.masses().iter().position(|&m| m == 0.1).unwrap();
        assert_eq!(q.llr_at(hi), 2.1875);
        assert_eq!(q.llr_at(lo), -2.1875);

        let bec = DiscreteLlrDensity::new(vec![(0.0, 0.3)], 0.0, 0.7).unwrap();
        let q = QuantizedDensity::quantize(&bec, 1.0 / 64.0, 1920).unwrap();
        assert_eq!(q.masses()[1920], 0.3);
        assert_eq!(q.mass_pos_inf(), 0.7);
        assert_eq!(q.to_discrete(), bec);

        // out of range accrues to the edge
        let far = DiscreteLlrDensity::new(vec![(-100.0, 0.5), (100.0, 0.5)], 0.0, 0.0).unwrap();
        let q = QuantizedDensity::quantize(&far, 1.0, 5).unwrap();
        assert_eq!((q.masses()[0], q.masses()[10]), (0.5, 0.5));
    }

    #[test]
    fn error_probability_examples() {
        let d = DiscreteLlrDensity::new(
            vec![(-2.602_689_685, 0.04), (-1.791_759, 0.06), (1.791_759, 0.36), (2.602_689_685, 0.54)],
            0.0,
            0.0,
        )
        .unwrap();
        let q = QuantizedDensity::quantize(&d, 1.0 / 64.0, 1920).unwrap();
        assert!((q.error_probability() - 0.10).abs() < 1e-15);

        let half = DiscreteLlrDensity::new(vec![(0.0, 0.5), (2.0, 0.5)], 0.0, 0.0).unwrap();
        let q = QuantizedDensity::quantize(&half, 0.5, 8).unwrap();
        assert_eq!(q.error_probability(), 0.25);

        assert_eq!(QuantizedDensity::certain(0.5, 8).error_probability(), 0.0);
    }

    #[test]
    fn symmetric_quantization_keeps_pairs() {
        let l9 = 9f64.ln();
        let bsc = DiscreteLlrDensity::new(vec![(-l9, 0.1), (l9, 0.9)], 0.0, 0.0).unwrap();
        let q = QuantizedDensity::quantize_symmetric(&bsc, 1.0 / 16.0, 480).unwrap();
        assert!((q.total_mass() - 1.0).abs() < 1e-15);
        assert!(q.to_discrete().check_symmetry(1e-12));
        // grid-exact atoms are left alone
        let bec = DiscreteLlrDensity::new(vec![(0.0, 0.3)], 0.0, 0.7).unwrap();
        assert_eq!(
            QuantizedDensity::quantize_symmetric(&bec, 0.25, 8).unwrap(),
            QuantizedDensity::quantize(&bec, 0.25, 8).unwrap()
        );
        // beyond the edge: e^{-1} of the positive atom stays at +2, the rest
        // becomes certain
        let w = 0.3;
        let inf = 1.0 - w * (1.0 + (-3f64).exp());
        let far = DiscreteLlrDensity::new(vec![(-3.0, w * (-3f64).exp()), (3.0, w)], 0.0, inf).unwrap();
        let q = QuantizedDensity::quantize_symmetric(&far, 0.5, 4).unwrap();
        assert!((q.mass_pos_inf() - inf - w * (1.0 - (-1f64).exp())).abs() < 1e-15);
        assert!(q.to_discrete().check_symmetry(1e-12));
    }

    #[test]
    fn dump_round_trip() {
        let d = DiscreteLlrDensity::new(vec![(-1.0, 0.2), (0.5, 0.3)], 0.0, 0.5).unwrap();
        let q = QuantizedDensity::quantize(&d, 0.25, 8).unwrap();
        assert_eq!(QuantizedDensity::parse(&q.to_text()).unwrap(), q);
        assert!(QuantizedDensity::parse("0.25 8 0 0\n1.0\n").is_err());
    }
}
