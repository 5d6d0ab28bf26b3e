//! Random instances shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use swldpc_core::bp::BpDecoder;
use swldpc_core::ldpc::{Syndrome, TannerGraph};
use swldpc_core::source::{JointSource, StochasticMap};

/// A random joint source with between 1 and `max_symbols` side-information
/// symbols. About one entry in eight is exactly zero so that certain
/// messages show up.
pub fn random_source<R: Rng>(rng: &mut R, max_symbols: usize) -> JointSource {
    loop {
        let k = rng.gen_range(1..=max_symbols);
        let mut draw = || if rng.gen_bool(0.125) { 0.0 } else { rng.gen_range(0.01..1.0) };
        let mut p0: Vec<f64> = (0..k).map(|_| draw()).collect();
        let mut p1: Vec<f64> = (0..k).map(|_| draw()).collect();
        let total: f64 = p0.iter().chain(&p1).sum();
        if total == 0.0 {
            continue;
        }
        p0.iter_mut().chain(p1.iter_mut()).for_each(|p| *p /= total);
        if let Ok(s) = JointSource::new_pruned((0..k as i64).collect(), p0, p1) {
            return s;
        }
    }
}

/// A random source with `P(x=0) = P(x=1) = 1/2`.
pub fn uniform_x_source<R: Rng>(rng: &mut R, max_symbols: usize) -> JointSource {
    let k = rng.gen_range(1..=max_symbols);
    let half = |rng: &mut R| {
        let v: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
        let t: f64 = v.iter().sum();
        v.into_iter().map(|x| 0.5 * x / t).collect::<Vec<_>>()
    };
    let p0 = half(rng);
    let p1 = half(rng);
    JointSource::new((0..k as i64).collect(), p0, p1).unwrap()
}

/// A random row-stochastic map from the labels of `s` onto `out` labels.
pub fn random_map<R: Rng>(rng: &mut R, s: &JointSource, out: usize) -> StochasticMap {
    let rows = s
        .labels()
        .iter()
        .map(|_| {
            let r: Vec<f64> = (0..out).map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..1.0) }).collect();
            let t: f64 = r.iter().sum();
            if t == 0.0 {
                let mut r = vec![0.0; out];
                r[rng.gen_range(0..out)] = 1.0;
                r
            } else {
                r.into_iter().map(|x| x / t).collect()
            }
        })
        .collect();
    StochasticMap::new(s.labels().to_vec(), (0..out as i64).collect(), rows).unwrap()
}

/// A random Tanner graph without cycles on `n` variables. Every new variable
/// joins an existing check or opens a check shared with an older variable;
/// a few single-variable checks are added at the end.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> TannerGraph {
    let mut checks: Vec<Vec<usize>> = Vec::new();
    for v in 1..n {
        if !checks.is_empty() && rng.gen_bool(0.5) {
            let c = rng.gen_range(0..checks.len());
            checks[c].push(v);
        } else {
            checks.push(vec![rng.gen_range(0..v), v]);
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        checks.push(vec![rng.gen_range(0..n)]);
    }
    TannerGraph::from_checks(n, &checks).unwrap()
}

/// Exact posterior LLRs of every bit given `Hx = s` and independent priors
/// with LLRs `llrs`, by enumerating all `2^n` words.
pub fn brute_force_posteriors(g: &TannerGraph, s: &Syndrome, llrs: &[f64]) -> Vec<f64> {
    let n = g.num_variables();
    let mut num = vec![0.0; n];
    let mut den = vec![0.0; n];
    for word in 0u32..(1 << n) {
        let bit = |v: usize| (word >> v) & 1 == 1;
        let ok = (0..g.num_checks()).all(|c| {
            let parity = g.check_neighbors(c).filter(|&v| bit(v)).count() % 2;
            parity == s.bits()[c] as usize
        });
        if !ok {
            continue;
        }
        // weight relative to the all-zero word
        let w: f64 = (0..n).filter(|&v| bit(v)).map(|v| -llrs[v]).sum::<f64>().exp();
        for v in 0..n {
            if bit(v) {
                den[v] += w;
            } else {
                num[v] += w;
            }
        }
    }
    num.iter().zip(&den).map(|(a, b)| (a / b).ln()).collect()
}

/// BP beliefs after `iters` flooding iterations.
pub fn beliefs_after(g: &TannerGraph, s: &Syndrome, llrs: &[f64], iters: usize) -> Vec<f64> {
    let mut dec = BpDecoder::new(g, s, llrs).unwrap();
    for _ in 0..iters {
        dec.step();
    }
    dec.beliefs()
}
