//! Linear convolution kernels used by density evolution.

use std::sync::Mutex;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// Exact linear convolution; zero entries of `a` are skipped, so keep the
/// sparser operand first.
pub(crate) fn direct(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o += x * y;
        }
    }
    out
}

/// Drops trailing zeros.
pub(crate) fn trim_end(v: &mut Vec<f64>) {
    while v.last() == Some(&0.0) {
        v.pop();
    }
}

/// Repeated squaring: entry `i` holds `base^(2^i)` under `mul`, up to the
/// highest bit of `max_exp`.
pub(crate) fn square_ladder<T: Clone>(base: T, max_exp: usize, mul: impl Fn(&T, &T) -> T) -> Vec<T> {
    let mut ladder = vec![base];
    let mut e = 2;
    while e <= max_exp {
        let last = ladder.last().unwrap();
        ladder.push(mul(last, last));
        e *= 2;
    }
    ladder
}

/// `base^n` assembled from a ladder built by `square_ladder`.
pub(crate) fn ladder_power<T: Clone>(ladder: &[T], n: usize, mul: impl Fn(&T, &T) -> T) -> T {
    assert!(n >= 1);
    let mut acc: Option<T> = None;
    for (bit, p) in ladder.iter().enumerate() {
        if n >> bit & 1 == 1 {
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => mul(&a, p),
            });
        }
    }
    acc.expect("ladder covers the exponent")
}

/// Shared FFT plans; planning is cached per length.
pub(crate) struct FftEngine {
    planner: Mutex<FftPlanner<f64>>,
}

impl Default for FftEngine {
    fn default() -> Self {
        Self {
            planner: Mutex::new(FftPlanner::new()),
        }
    }
}

impl FftEngine {
    pub(crate) fn forward(&self, data: &[f64], len: usize) -> Vec<Complex64> {
        let fft = self.planner.lock().unwrap().plan_fft_forward(len);
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        for (b, &x) in buf.iter_mut().zip(data) {
            b.re = x;
        }
        fft.process(&mut buf);
        buf
    }

    /// Inverse transform, scaled, real part only.
    pub(crate) fn inverse(&self, mut spec: Vec<Complex64>) -> Vec<f64> {
        let len = spec.len();
        let fft = self.planner.lock().unwrap().plan_fft_inverse(len);
        fft.process(&mut spec);
        let s = 1.0 / len as f64;
        spec.into_iter().map(|c| c.re * s).collect()
    }
}

impl std::fmt::Debug for FftEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("FftEngine")
    }
}
