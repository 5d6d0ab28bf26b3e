//! Phase-one simplex for small dense feasibility problems.
//!
//! Decides whether some `w >= 0` satisfies `lo <= A w <= hi` row-wise. The
//! tableau is dense and pivots follow Bland's rule, so the routine terminates
//! on degenerate problems; a pivot cap guards against numerical stalling.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;
const FEASIBLE_EPS: f64 = 1e-10;

/// Returns `Ok(true)` if the range system is feasible.
pub fn range_feasible(a: &[Vec<f64>], lo: &[f64], hi: &[f64], max_pivots: usize) -> Result<bool> {
    let nvars = a.first().map_or(0, |r| r.len());
    let rows = 2 * a.len();
    // column layout: [w (nvars) | slack (rows) | artificial (k)] + rhs
    let mut body: Vec<(Vec<f64>, f64, bool)> = Vec::with_capacity(rows);
    for (r, row) in a.iter().enumerate() {
        // A w + s = hi  and  A w - t = lo
        for (bound, slack_sign) in [(hi[r], 1.0), (lo[r], -1.0)] {
            let mut coeffs = row.clone();
            let mut rhs = bound;
            let mut s = slack_sign;
            if rhs < 0.0 {
                coeffs.iter_mut().for_each(|c| *c = -*c);
                rhs = -rhs;
                s = -s;
            }
            // a +1 slack can start in the basis; a -1 slack needs an artificial
            body.push((coeffs, rhs, s > 0.0));
        }
    }
    let n_art = body.iter().filter(|b| !b.2).count();
    let width = nvars + rows + n_art + 1;
    let mut t = vec![vec![0.0; width]; rows];
    let mut basis = vec![0usize; rows];
    let mut art = 0;
    for (r, (coeffs, rhs, slack_basic)) in body.iter().enumerate() {
        t[r][..nvars].copy_from_slice(coeffs);
        t[r][nvars + r] = if *slack_basic { 1.0 } else { -1.0 };
        if *slack_basic {
            basis[r] = nvars + r;
        } else {
            let col = nvars + rows + art;
            t[r][col] = 1.0;
            basis[r] = col;
            art += 1;
        }
        t[r][width - 1] = *rhs;
    }
    if n_art == 0 {
        return Ok(true);
    }

    // objective: minimize sum of artificials; reduced costs c_j - c_B B^-1 A_j
    let art_start = nvars + rows;
    let mut cost = vec![0.0; width];
    for c in cost.iter_mut().take(width - 1).skip(art_start) {
        *c = 1.0;
    }
    for r in 0..rows {
        if basis[r] >= art_start {
            for j in 0..width {
                cost[j] -= t[r][j];
            }
        }
    }

    for _ in 0..max_pivots {
        let Some(enter) = (0..width - 1).find(|&j| cost[j] < -PIVOT_EPS) else {
            // cost[rhs] holds minus the objective
            return Ok(-cost[width - 1] <= FEASIBLE_EPS);
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for r in 0..rows {
            let c = t[r][enter];
            if c > PIVOT_EPS {
                let ratio = t[r][width - 1] / c;
                let better = ratio < best - 1e-15
                    || (ratio <= best + 1e-15 && leave.is_some_and(|l| basis[r] < basis[l]));
                if leave.is_none() || better {
                    best = ratio;
                    leave = Some(r);
                }
            }
        }
        let Some(pr) = leave else {
            // unbounded direction in phase one cannot happen: objective >= 0
            return Err(Error::SolverNonConvergence(0));
        };
        pivot(&mut t, &mut cost, pr, enter);
        basis[pr] = enter;
    }
    Err(Error::SolverNonConvergence(max_pivots))
}

fn pivot(t: &mut [Vec<f64>], cost: &mut [f64], pr: usize, pc: usize) {
    let p = t[pr][pc];
    for v in t[pr].iter_mut() {
        *v /= p;
    }
    let prow = t[pr].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r != pr {
            let f = row[pc];
            if f != 0.0 {
                for (v, &pv) in row.iter_mut().zip(&prow) {
                    *v -= f * pv;
                }
            }
        }
    }
    let f = cost[pc];
    if f != 0.0 {
        for (v, &pv) in cost.iter_mut().zip(&prow) {
            *v -= f * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_systems() {
        // w0 + w1 = 1, w0 - w1 = 0.5  -> w = (0.75, 0.25)
        let a = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
        assert!(range_feasible(&a, &[1.0, 0.5], &[1.0, 0.5], 1000).unwrap());
        // w0 + w1 = 1, w0 + w1 = 2 -> infeasible
        let a = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        assert!(!range_feasible(&a, &[1.0, 2.0], &[1.0, 2.0], 1000).unwrap());
        // w0 = -1 with w >= 0 -> infeasible
        assert!(!range_feasible(&[vec![1.0]], &[-1.0], &[-1.0], 1000).unwrap());
        // range slack admits a near-miss
        assert!(range_feasible(&[vec![1.0]], &[-1e-9], &[1e-9], 1000).unwrap());
    }
}
