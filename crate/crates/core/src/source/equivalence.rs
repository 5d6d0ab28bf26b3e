//! Equivalence classes of sources: all sources inducing one initial density.

use crate::error::{Error, Result};
use crate::source::density::DiscreteLlrDensity;
use crate::source::joint::JointSource;

const SYMMETRY_TOL: f64 = 1e-9;
const ALPHA_TOL: f64 = 1e-9;

/// Mass points of a symmetric density in pairing order: `-inf` first when
/// the density has infinite mass, then the finite atoms, then `+inf`.
/// Point `i` pairs with point `n-1-i`.
pub fn paired_masses(q: &DiscreteLlrDensity) -> Result<Vec<(f64, f64)>> {
    if !q.check_symmetry(SYMMETRY_TOL) {
        return Err(Error::AsymmetricDensity);
    }
    let with_inf = q.mass_pos_inf() > 0.0 || q.mass_neg_inf() > 0.0;
    let mut pts = Vec::with_capacity(q.atoms().len() + 2);
    if with_inf {
        pts.push((f64::NEG_INFINITY, q.mass_neg_inf()));
    }
    pts.extend_from_slice(q.atoms());
    if with_inf {
        pts.push((f64::INFINITY, q.mass_pos_inf()));
    }
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i].0, pts[n - 1 - i].0);
        let paired = if a.is_infinite() { a == -b } else { (a + b).abs() <= 1e-9 };
        if !paired {
            return Err(Error::AsymmetricDensity);
        }
    }
    Ok(pts)
}

/// A member of the equivalence class of `q` selected by `alphas`:
/// `P(y=i) = alpha_i (a_i + a_{n-1-i})`, `P(x=0|y=i) = a_i / (a_i + a_{n-1-i})`.
///
/// `alphas` is indexed like [`paired_masses`] and must satisfy
/// `alpha_i + alpha_{n-1-i} = 1`, which forces 1/2 on a self-paired atom.
/// Symbols with zero probability are dropped; labels are the point indices.
pub fn equivalence_class_source(q: &DiscreteLlrDensity, alphas: &[f64]) -> Result<JointSource> {
    let pts = paired_masses(q)?;
    let n = pts.len();
    if alphas.len() != n {
        return Err(Error::InvalidAlphas(format!("expected {n} alphas, got {}", alphas.len())));
    }
    for i in 0..n {
        let a = alphas[i];
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::InvalidAlphas(format!("alpha_{i} = {a} outside [0, 1]")));
        }
        if (a + alphas[n - 1 - i] - 1.0).abs() > ALPHA_TOL {
            return Err(Error::InvalidAlphas(format!(
                "alpha_{i} + alpha_{} != 1",
                n - 1 - i
            )));
        }
    }
    let labels = (0..n as i64).collect();
    let p0 = (0..n).map(|i| alphas[i] * pts[i].1).collect();
    let p1 = (0..n).map(|i| alphas[i] * pts[n - 1 - i].1).collect();
    JointSource::new_pruned(labels, p0, p1)
}

/// Number of free parameters of the class: one per unordered pair of
/// distinct mass points.
pub fn class_degrees_of_freedom(q: &DiscreteLlrDensity) -> Result<usize> {
    Ok(paired_masses(q)?.len() / 2)
}

/// Whether two sources induce the same initial message density.
pub fn are_equivalent(a: &JointSource, b: &JointSource, tol: f64) -> bool {
    a.initial_density().approx_eq(&b.initial_density(), tol)
}
