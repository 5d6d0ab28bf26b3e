//! Feasible-domain sweeps over the binary symmetric family.

use rayon::prelude::*;

use super::family::{bsc_family_source, BscFamilyPoint};
use super::report::{render_csv, Preamble};
use crate::de::{find_threshold, DensityEvolution};
use crate::error::Result;
use crate::ldpc::DegreeDistribution;

/// Slack above the syndrome rate before a converged point counts as a
/// converse violation.
pub const CONVERSE_SLACK: f64 = 0.005;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub q: f64,
    pub converged: bool,
    pub conditional_entropy: f64,
    pub final_p_e: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub grid: Vec<SweepRow>,
    pub dd_label: String,
    pub syndrome_rate: f64,
    pub settings: String,
}

impl SweepReport {
    /// Converged rows whose conditional entropy exceeds the syndrome rate by
    /// more than the slack.
    pub fn violations(&self) -> Vec<&SweepRow> {
        self.grid
            .iter()
            .filter(|r| r.converged && r.conditional_entropy > self.syndrome_rate + CONVERSE_SLACK)
            .collect()
    }

    pub fn preamble(&self) -> Preamble {
        Preamble::new()
            .with("experiment", "feasible-domain sweep")
            .with("dd", &self.dd_label)
            .with("syndrome_rate", self.syndrome_rate)
            .with("de", &self.settings)
    }

    pub fn to_csv(&self) -> String {
        let rows = self.grid.iter().map(|r| {
            vec![
                r.p.to_string(),
                r.q.to_string(),
                u8::from(r.converged).to_string(),
                format!("{:.12}", r.conditional_entropy),
                format!("{:.6e}", r.final_p_e),
                r.iterations.to_string(),
            ]
        });
        render_csv(
            &self.preamble(),
            &["p", "q", "converged", "h_x_given_y", "final_p_e", "iterations"],
            rows,
        )
    }
}

/// `n` evenly spaced points on `[0, 0.5]`.
pub fn unit_half_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| 0.5 * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Runs density evolution at every `(p, q)` pair. Rows are ordered by `p`,
/// then `q`, whatever order the parallel workers finish in.
pub fn feasible_domain_sweep(
    dd: &DegreeDistribution,
    p_grid: &[f64],
    q_grid: &[f64],
    de: &DensityEvolution,
) -> Result<SweepReport> {
    let points: Vec<(f64, f64)> = p_grid.iter().flat_map(|&p| q_grid.iter().map(move |&q| (p, q))).collect();
    let grid = points
        .par_iter()
        .map(|&(p, q)| {
            let s = bsc_family_source(BscFamilyPoint::new(p, q)?)?;
            let t = de.run(&de.quantize(&s.initial_density()), dd)?;
            Ok(SweepRow {
                p,
                q,
                converged: t.converged,
                conditional_entropy: s.conditional_entropy(),
                final_p_e: t.final_error_probability(),
                iterations: t.iterations,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        grid,
        dd_label: dd.label(),
        syndrome_rate: dd.design_rates().1,
        settings: de.settings().describe(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub p: f64,
    /// Largest convergent crossover, `None` when density evolution converges
    /// all the way to `q = 0.5`.
    pub q_star: Option<f64>,
}

/// The crossover threshold `q*(p)` at each `p`, by bisection on `[0, 0.5]`.
pub fn feasible_boundary(
    dd: &DegreeDistribution,
    p_grid: &[f64],
    tol: f64,
    de: &DensityEvolution,
) -> Result<Vec<BoundaryPoint>> {
    p_grid
        .par_iter()
        .map(|&p| {
            let family = |q: f64| Ok(bsc_family_source(BscFamilyPoint::new(p, q)?)?.initial_density());
            let top = de.run(&de.quantize(&family(0.5)?), dd)?;
            let q_star = if top.converged {
                None
            } else {
                Some(find_threshold(family, dd, 0.0, 0.5, tol, de)?)
            };
            Ok(BoundaryPoint { p, q_star })
        })
        .collect()
}

pub fn boundary_to_csv(points: &[BoundaryPoint], preamble: &Preamble) -> String {
    let rows = points.iter().map(|b| {
        vec![
            b.p.to_string(),
            b.q_star.map_or_else(|| "none".to_string(), |q| format!("{q:.6}")),
        ]
    });
    render_csv(preamble, &["p", "q_star"], rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacing() {
        let g = unit_half_grid(26);
        assert_eq!(g.len(), 26);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[25], 0.5);
        assert!((g[1] - 0.02).abs() < 1e-15);
    }
}
