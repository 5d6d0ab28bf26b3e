//! Finite-length simulations: message-error concentration and end-to-end
//! Slepian-Wolf coding.

use rayon::prelude::*;

use super::report::{render_csv, Preamble};
use crate::bp::{count_incorrect_messages, decode, BpDecoder};
use crate::de::DensityEvolution;
use crate::error::{Error, Result};
use crate::ldpc::{sample_graph, sample_source_pairs, syndrome_encode, DegreeDistribution, TannerGraph};
use crate::rng::derive_seed;
use crate::source::JointSource;

/// Deviation radii reported by the concentration experiment.
pub const CONCENTRATION_EPS: [f64; 3] = [0.005, 0.01, 0.02];

/// 95% normal-approximation half-width for a proportion.
fn normal_radius(p: f64, n: f64) -> f64 {
    if n == 0.0 {
        return f64::NAN;
    }
    1.96 * (p * (1.0 - p) / n).sqrt()
}

fn initial_llrs(source: &JointSource, ys: &[i64]) -> Result<Vec<f64>> {
    ys.iter().map(|&y| source.initial_llr(y)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationRow {
    pub n: usize,
    /// Fraction of incorrect variable-to-check messages, one per trial.
    pub values: Vec<f64>,
    pub mean: f64,
    pub max_abs_deviation: f64,
    /// `(eps, fraction of trials farther than eps from the DE value)`.
    pub outside: Vec<(f64, f64)>,
}

impl ConcentrationRow {
    pub fn fraction_outside(&self, eps: f64) -> Option<f64> {
        self.outside.iter().find(|(e, _)| *e == eps).map(|&(_, f)| f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub de_p_e: f64,
    pub iterations: usize,
    pub rows: Vec<ConcentrationRow>,
    pub seed: u64,
}

impl ConcentrationReport {
    /// Whether the fraction outside every radius is non-increasing in `n`.
    pub fn outliers_non_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| {
            w[0].outside
                .iter()
                .zip(&w[1].outside)
                .all(|(a, b)| b.1 <= a.1)
        })
    }

    pub fn to_csv(&self, preamble: &Preamble) -> String {
        let mut pre = preamble.clone();
        pre.push("de_p_e", format!("{:.12e}", self.de_p_e));
        pre.push("iterations", self.iterations);
        pre.push("seed", self.seed);
        let mut header = vec!["n".to_string(), "trials".into(), "mean".into(), "max_abs_dev".into()];
        header.extend(CONCENTRATION_EPS.iter().map(|e| format!("outside_{e}")));
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows = self.rows.iter().map(|r| {
            let mut row = vec![
                r.n.to_string(),
                r.values.len().to_string(),
                format!("{:.8e}", r.mean),
                format!("{:.8e}", r.max_abs_deviation),
            ];
            row.extend(r.outside.iter().map(|(_, f)| f.to_string()));
            row
        });
        render_csv(&pre, &header, rows)
    }
}

/// Fraction of incorrect variable-to-check messages after `l` iterations on
/// one sampled graph and source realization.
pub fn message_error_fraction(
    source: &JointSource,
    dd: &DegreeDistribution,
    n: usize,
    l: usize,
    seed: u64,
) -> Result<f64> {
    let g = sample_graph(n, dd, derive_seed(seed, 0))?;
    let (x, y) = sample_source_pairs(source, n, derive_seed(seed, 1));
    let s = syndrome_encode(&g, &x)?;
    let init = initial_llrs(source, &y)?;
    let mut dec = BpDecoder::new(&g, &s, &init)?;
    for _ in 0..l {
        dec.step();
    }
    Ok(count_incorrect_messages(dec.state(), &g, &x)? / g.num_edges() as f64)
}

/// Samples `trials` graph and source realizations per block length and
/// compares the incorrect-message fraction after `l` iterations with the DE
/// error probability.
pub fn concentration_experiment(
    dd: &DegreeDistribution,
    n_list: &[usize],
    l: usize,
    trials: usize,
    source: &JointSource,
    seed: u64,
    de: &DensityEvolution,
) -> Result<ConcentrationReport> {
    if !dd.is_regular() {
        return Err(Error::InvalidParameter(
            "concentration experiment expects a regular degree distribution".into(),
        ));
    }
    let (traj, _) = de.run_fixed(&de.quantize(&source.initial_density()), dd, l)?;
    let de_p_e = traj.final_error_probability();
    let rows = n_list
        .iter()
        .enumerate()
        .map(|(ni, &n)| {
            let values = (0..trials)
                .into_par_iter()
                .map(|t| message_error_fraction(source, dd, n, l, derive_seed(seed, (ni * trials + t) as u64)))
                .collect::<Result<Vec<_>>>()?;
            let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
            let max_abs_deviation = values.iter().map(|v| (v - de_p_e).abs()).fold(0.0, f64::max);
            let outside = CONCENTRATION_EPS
                .iter()
                .map(|&e| {
                    let k = values.iter().filter(|v| (*v - de_p_e).abs() > e).count();
                    (e, k as f64 / values.len().max(1) as f64)
                })
                .collect();
            Ok(ConcentrationRow {
                n,
                values,
                mean,
                max_abs_deviation,
                outside,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcentrationReport {
        de_p_e,
        iterations: l,
        rows,
        seed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloReport {
    pub n: usize,
    pub trials: usize,
    pub bit_errors: usize,
    pub frame_errors: usize,
    pub ber: f64,
    pub fer: f64,
    pub ber_radius: f64,
    pub fer_radius: f64,
}

impl MonteCarloReport {
    pub fn to_csv(&self, preamble: &Preamble) -> String {
        render_csv(
            preamble,
            &["n", "trials", "bit_errors", "frame_errors", "ber", "ber_radius", "fer", "fer_radius"],
            [vec![
                self.n.to_string(),
                self.trials.to_string(),
                self.bit_errors.to_string(),
                self.frame_errors.to_string(),
                format!("{:.6e}", self.ber),
                format!("{:.6e}", self.ber_radius),
                format!("{:.6e}", self.fer),
                format!("{:.6e}", self.fer_radius),
            ]],
        )
    }
}

/// Number of wrong bits after one encode/decode round on a given graph.
pub fn simulate_block(g: &TannerGraph, source: &JointSource, max_iter: usize, seed: u64) -> Result<usize> {
    let (x, y) = sample_source_pairs(source, g.num_variables(), seed);
    let s = syndrome_encode(g, &x)?;
    let init = initial_llrs(source, &y)?;
    let r = decode(g, &s, &init, max_iter)?;
    Ok(r.x_hat.iter().zip(&x).filter(|(a, b)| a != b).count())
}

/// Bit and frame error rates of syndrome coding with BP decoding; every
/// trial samples a fresh graph.
pub fn monte_carlo_ber(
    source: &JointSource,
    dd: &DegreeDistribution,
    n: usize,
    trials: usize,
    max_iter: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    let errors = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = derive_seed(seed, t as u64);
            let g = sample_graph(n, dd, derive_seed(trial_seed, 0))?;
            simulate_block(&g, source, max_iter, derive_seed(trial_seed, 1))
        })
        .collect::<Result<Vec<_>>>()?;
    let bit_errors: usize = errors.iter().sum();
    let frame_errors = errors.iter().filter(|&&e| e > 0).count();
    let bits = (n * trials) as f64;
    let ber = if trials == 0 { 0.0 } else { bit_errors as f64 / bits };
    let fer = if trials == 0 { 0.0 } else { frame_errors as f64 / trials as f64 };
    Ok(MonteCarloReport {
        n,
        trials,
        bit_errors,
        frame_errors,
        ber,
        fer,
        ber_radius: normal_radius(ber, bits),
        fer_radius: normal_radius(fer, trials as f64),
    })
}
