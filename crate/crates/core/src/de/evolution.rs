//! One step of quantized density evolution and the iteration driver.
//!
//! The check stage moves the message density into the `(sign, magnitude)`
//! domain of the gamma transform on its own uniform magnitude grid, where the
//! check-node rule becomes a convolution with sign bookkeeping. The variable
//! stage convolves on the LLR grid. Whenever a value has to be put back on a
//! grid, its mass is split between the two neighbouring grid points with
//! weights chosen so that a symmetric density stays exactly symmetric; plain
//! nearest-point rounding would break symmetry at the quantization scale.
//!
//! Certain messages (`+-inf`) never touch the grids. Their masses are carried
//! in closed form, with `+inf` meeting `-inf` at a variable node treated as a
//! conflict that cancels to 0.

use std::fmt::Write as _;

use rustfft::num_complex::Complex64;

use super::convolve::{direct, ladder_power, square_ladder, trim_end, FftEngine};
use super::quantized::{symmetric_split, QuantizedDensity, SymmetricSplit};
use crate::bp::phi;
use crate::error::{Error, Result};
use crate::ldpc::DegreeDistribution;
use crate::source::DiscreteLlrDensity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConvolutionMode {
    /// Pairwise products along a power-of-two ladder; exact up to rounding
    /// and never negative. Cost grows quadratically with the support.
    Direct,
    /// Powers taken pointwise in the frequency domain. Round-off can leave
    /// tiny negative masses, which are clamped to zero.
    #[default]
    Fft,
}

impl std::str::FromStr for ConvolutionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Self::Direct),
            "fft" => Ok(Self::Fft),
            _ => Err(Error::InvalidParameter(format!("convolution mode {s:?} (expected direct or fft)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeSettings {
    /// LLR grid step.
    pub step: f64,
    /// Grid half-width in steps; the grid covers `+-half_range * step`.
    pub half_range: usize,
    /// The magnitude grid step is `step / mag_divisor`.
    pub mag_divisor: usize,
    /// Largest magnitude on the magnitude grid; larger ones collapse onto it.
    pub mag_cap: f64,
    pub max_iter: usize,
    /// Convergence target for the error probability.
    pub target: f64,
    pub mode: ConvolutionMode,
    pub stall_window: usize,
    pub stall_tol: f64,
    /// Largest tolerated mass defect before renormalization.
    pub max_mass_defect: f64,
}

impl Default for DeSettings {
    fn default() -> Self {
        Self {
            step: 1.0 / 64.0,
            half_range: 1920,
            mag_divisor: 4,
            mag_cap: 50.0,
            max_iter: 2000,
            target: 1e-6,
            mode: ConvolutionMode::Fft,
            stall_window: 50,
            stall_tol: 1e-6,
            max_mass_defect: 1e-6,
        }
    }
}

impl DeSettings {
    /// Default settings on the grid of step `step` covering `+-range`.
    pub fn with_grid(step: f64, range: f64) -> Self {
        Self {
            step,
            half_range: (range / step).round() as usize,
            ..Self::default()
        }
    }

    pub fn range(&self) -> f64 {
        self.half_range as f64 * self.step
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if !(self.step > 0.0) || !self.step.is_finite() {
            return bad("step must be positive");
        }
        if self.half_range == 0 {
            return bad("grid half-range must be at least one step");
        }
        if self.mag_divisor == 0 {
            return bad("magnitude divisor must be positive");
        }
        if !(self.mag_cap > 0.0) || !self.mag_cap.is_finite() {
            return bad("magnitude cap must be positive");
        }
        if !(self.target > 0.0) {
            return bad("target must be positive");
        }
        if self.stall_window == 0 || !(self.stall_tol >= 0.0) {
            return bad("stall window must be positive and tolerance non-negative");
        }
        if !(self.max_mass_defect > 0.0) {
            return bad("mass defect limit must be positive");
        }
        Ok(())
    }

    /// One-line summary for logs and CSV preambles.
    pub fn describe(&self) -> String {
        format!(
            "step={} range={} mag_step={} mag_cap={} max_iter={} target={:e} mode={:?} stall={}x{:e}",
            self.step,
            self.range(),
            self.step / self.mag_divisor as f64,
            self.mag_cap,
            self.max_iter,
            self.target,
            self.mode,
            self.stall_window,
            self.stall_tol,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeTrajectory {
    /// Entry `l` is the error probability after `l` iterations (entry 0 is
    /// the initial density).
    pub p_e_by_iter: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// Largest mass defect removed by renormalization along the run.
    pub max_mass_defect: f64,
}

impl DeTrajectory {
    pub fn final_error_probability(&self) -> f64 {
        *self.p_e_by_iter.last().expect("trajectory holds the initial point")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,p_e\n");
        for (l, p) in self.p_e_by_iter.iter().enumerate() {
            let _ = writeln!(out, "{l},{p:.17e}");
        }
        out
    }
}

/// Where one LLR grid magnitude lands on the magnitude grid.
#[derive(Debug, Clone, Copy)]
struct ToMag {
    bin: usize,
    /// Share of positive mass kept at `bin` (the rest goes to `bin + 1`).
    plus: f64,
    /// Same for negative mass.
    minus: f64,
}

/// `1 - tanh(g/2)`, accurate for large `g`.
fn one_minus_h(g: f64) -> f64 {
    2.0 / (g.exp() + 1.0)
}

/// Finite masses on a contiguous range of LLR indices.
#[derive(Debug, Clone, Default)]
struct Span {
    offset: i64,
    data: Vec<f64>,
}

impl Span {
    fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn upper(&self) -> i64 {
        self.offset + self.data.len() as i64 - 1
    }

    fn conv(&self, other: &Span) -> Span {
        if self.is_empty() || other.is_empty() {
            return Span::default();
        }
        let nz = |s: &Span| s.data.iter().filter(|&&x| x != 0.0).count();
        let data = if nz(self) <= nz(other) {
            direct(&self.data, &other.data)
        } else {
            direct(&other.data, &self.data)
        };
        Span {
            offset: self.offset + other.offset,
            data,
        }
    }

    fn add_scaled(&mut self, other: &Span, w: f64) {
        if other.is_empty() {
            return;
        }
        if self.is_empty() {
            self.offset = other.offset;
            self.data = other.data.iter().map(|x| x * w).collect();
            return;
        }
        let lo = self.offset.min(other.offset);
        let hi = self.upper().max(other.upper());
        if lo < self.offset {
            let pad = (self.offset - lo) as usize;
            self.data.splice(0..0, std::iter::repeat(0.0).take(pad));
            self.offset = lo;
        }
        self.data.resize((hi - lo + 1) as usize, 0.0);
        let start = (other.offset - self.offset) as usize;
        for (o, x) in self.data[start..].iter_mut().zip(&other.data) {
            *o += w * x;
        }
    }

    fn sum(&self) -> f64 {
        self.data.iter().sum()
    }
}

/// A density-evolution engine with precomputed grid maps for one setting.
#[derive(Debug)]
pub struct DensityEvolution {
    settings: DeSettings,
    mag_step: f64,
    mag_bins: usize,
    to_mag: Vec<ToMag>,
    from_mag: Vec<SymmetricSplit>,
    fft: FftEngine,
}

impl DensityEvolution {
    pub fn new(settings: DeSettings) -> Result<Self> {
        settings.validate()?;
        let step = settings.step;
        let k_max = settings.half_range;
        let mag_step = step / settings.mag_divisor as f64;
        let mag_bins = (settings.mag_cap / mag_step).round().max(1.0) as usize;
        let cap = mag_bins as f64 * mag_step;

        // index 0 is unused: the zero LLR is an erasure, handled separately
        let mut to_mag = vec![
            ToMag {
                bin: 0,
                plus: 1.0,
                minus: 1.0
            };
            k_max + 1
        ];
        for (k, entry) in to_mag.iter_mut().enumerate().skip(1) {
            let g = phi(k as f64 * step);
            if g >= cap {
                *entry = ToMag {
                    bin: mag_bins,
                    plus: 1.0,
                    minus: 1.0,
                };
                continue;
            }
            let b = ((g / mag_step).floor() as usize).min(mag_bins - 1);
            let (g1, g2) = (b as f64 * mag_step, (b + 1) as f64 * mag_step);
            let (r, r1, r2) = (one_minus_h(g), one_minus_h(g1), one_minus_h(g2));
            let plus = ((r - r2) / (r1 - r2)).clamp(0.0, 1.0);
            let minus = if b == 0 {
                0.0
            } else {
                (plus * (g1 / 2.0).tanh() / (g / 2.0).tanh()).clamp(0.0, 1.0)
            };
            *entry = ToMag { bin: b, plus, minus };
        }

        let mut from_mag = vec![symmetric_split(f64::INFINITY, step, k_max); mag_bins + 1];
        for (b, entry) in from_mag.iter_mut().enumerate().skip(1) {
            *entry = symmetric_split(phi(b as f64 * mag_step), step, k_max);
        }

        Ok(Self {
            settings,
            mag_step,
            mag_bins,
            to_mag,
            from_mag,
            fft: FftEngine::default(),
        })
    }

    /// Engine on the grid of `d` with otherwise default settings.
    pub fn for_grid_of(d: &QuantizedDensity) -> Result<Self> {
        Self::new(DeSettings {
            step: d.step(),
            half_range: d.half_range(),
            ..DeSettings::default()
        })
    }

    pub fn settings(&self) -> &DeSettings {
        &self.settings
    }

    pub fn mag_step(&self) -> f64 {
        self.mag_step
    }

    pub fn quantize(&self, d: &DiscreteLlrDensity) -> QuantizedDensity {
        QuantizedDensity::quantize(d, self.settings.step, self.settings.half_range)
            .expect("settings were validated")
    }

    pub fn quantize_symmetric(&self, d: &DiscreteLlrDensity) -> QuantizedDensity {
        QuantizedDensity::quantize_symmetric(d, self.settings.step, self.settings.half_range)
            .expect("settings were validated")
    }

    fn check_grid(&self, d: &QuantizedDensity) -> Result<()> {
        if d.step() != self.settings.step || d.half_range() != self.settings.half_range {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// One iteration; returns the renormalized density and the mass defect
    /// that was removed.
    pub fn iterate_with_defect(
        &self,
        d0: &QuantizedDensity,
        d_prev: &QuantizedDensity,
        dd: &DegreeDistribution,
    ) -> Result<(QuantizedDensity, f64)> {
        self.check_grid(d0)?;
        self.check_grid(d_prev)?;
        let checked = self.check_stage(d_prev, dd);
        let mut out = self.variable_stage(d0, &checked, dd);
        let total = out.total_mass();
        let defect = (total - 1.0).abs();
        if total > 0.0 {
            out.scale(1.0 / total);
        }
        Ok((out, defect))
    }

    /// One iteration. Fails if more mass than the configured limit leaked.
    pub fn iterate(
        &self,
        d0: &QuantizedDensity,
        d_prev: &QuantizedDensity,
        dd: &DegreeDistribution,
    ) -> Result<QuantizedDensity> {
        let (d, defect) = self.iterate_with_defect(d0, d_prev, dd)?;
        if defect > self.settings.max_mass_defect {
            return Err(Error::MassDefect { iteration: 1, defect });
        }
        Ok(d)
    }

    /// Iterates until the target, the iteration limit or a stall.
    pub fn run(&self, d0: &QuantizedDensity, dd: &DegreeDistribution) -> Result<DeTrajectory> {
        self.run_with_density(d0, dd).map(|(t, _)| t)
    }

    /// Like `run`, also returning the last density.
    pub fn run_with_density(
        &self,
        d0: &QuantizedDensity,
        dd: &DegreeDistribution,
    ) -> Result<(DeTrajectory, QuantizedDensity)> {
        self.drive(d0, dd, self.settings.max_iter, true)
    }

    /// Exactly `iterations` steps with no early exit; `converged` reports
    /// whether the final error probability is within the target.
    pub fn run_fixed(
        &self,
        d0: &QuantizedDensity,
        dd: &DegreeDistribution,
        iterations: usize,
    ) -> Result<(DeTrajectory, QuantizedDensity)> {
        self.drive(d0, dd, iterations, false)
    }

    fn drive(
        &self,
        d0: &QuantizedDensity,
        dd: &DegreeDistribution,
        max_iter: usize,
        early_exit: bool,
    ) -> Result<(DeTrajectory, QuantizedDensity)> {
        self.check_grid(d0)?;
        let s = &self.settings;
        let mut pe = vec![d0.error_probability()];
        let mut d = d0.clone();
        let mut max_defect: f64 = 0.0;
        let done = |pe: &[f64]| {
            let l = pe.len() - 1;
            let p = pe[l];
            if p <= s.target {
                return true;
            }
            l >= s.stall_window && {
                let prev = pe[l - s.stall_window];
                prev - p < s.stall_tol * prev
            }
        };
        if !(early_exit && done(&pe)) {
            for l in 1..=max_iter {
                let (next, defect) = self.iterate_with_defect(d0, &d, dd)?;
                if defect > s.max_mass_defect {
                    return Err(Error::MassDefect { iteration: l, defect });
                }
                max_defect = max_defect.max(defect);
                d = next;
                pe.push(d.error_probability().clamp(0.0, 1.0));
                if early_exit && done(&pe) {
                    break;
                }
            }
        }
        let converged = *pe.last().unwrap() <= s.target;
        let trajectory = DeTrajectory {
            iterations: pe.len() - 1,
            p_e_by_iter: pe,
            converged,
            max_mass_defect: max_defect,
        };
        Ok((trajectory, d))
    }

    /// Check-node stage: returns the check-to-variable density.
    fn check_stage(&self, d: &QuantizedDensity, dd: &DegreeDistribution) -> QuantizedDensity {
        let k_max = self.settings.half_range;
        let g_max = self.mag_bins;
        let m = d.masses();

        let mut plus = vec![0.0; g_max + 2];
        let mut minus = vec![0.0; g_max + 2];
        plus[0] = d.mass_pos_inf();
        minus[0] = d.mass_neg_inf();
        for k in 1..=k_max {
            let (wp, wm) = (m[k_max + k], m[k_max - k]);
            if wp == 0.0 && wm == 0.0 {
                continue;
            }
            let e = self.to_mag[k];
            plus[e.bin] += e.plus * wp;
            plus[e.bin + 1] += (1.0 - e.plus) * wp;
            minus[e.bin] += e.minus * wm;
            minus[e.bin + 1] += (1.0 - e.minus) * wm;
        }
        fold_cap(&mut plus, g_max);
        fold_cap(&mut minus, g_max);
        let len = plus
            .iter()
            .zip(&minus)
            .rposition(|(p, q)| *p != 0.0 || *q != 0.0)
            .map_or(0, |i| i + 1);
        plus.truncate(len);
        minus.truncate(len);

        let not_erased = 1.0 - m[k_max];
        let erased: f64 = dd
            .rho()
            .iter()
            .map(|&(j, r)| r * (1.0 - not_erased.powi(j as i32 - 1)))
            .sum();

        let (p, q) = if len == 0 {
            (Vec::new(), Vec::new())
        } else {
            match self.settings.mode {
                ConvolutionMode::Direct => self.check_powers_direct(plus, minus, dd),
                ConvolutionMode::Fft => self.check_powers_fft(&plus, &minus, dd),
            }
        };

        // back to the LLR grid
        let mut out = vec![0.0; 2 * k_max + 1];
        out[k_max] += erased;
        let mut pos_inf = p.first().copied().unwrap_or(0.0);
        let mut neg_inf = q.first().copied().unwrap_or(0.0);
        for b in 1..p.len().max(q.len()) {
            let wp = p.get(b).copied().unwrap_or(0.0);
            let wm = q.get(b).copied().unwrap_or(0.0);
            if wp == 0.0 && wm == 0.0 {
                continue;
            }
            let e = self.from_mag[b];
            if e.saturated {
                out[2 * k_max] += e.plus * wp;
                pos_inf += (1.0 - e.plus) * wp;
                out[0] += wm;
            } else {
                out[k_max + e.k] += e.plus * wp;
                out[k_max + e.k + 1] += (1.0 - e.plus) * wp;
                out[k_max - e.k] += e.minus * wm;
                out[k_max - e.k - 1] += (1.0 - e.minus) * wm;
            }
        }
        // erasure and certainty both live off-grid here, so the sign of zero
        // never matters
        neg_inf = neg_inf.max(0.0);
        pos_inf = pos_inf.max(0.0);
        QuantizedDensity::from_parts(self.settings.step, k_max, out, neg_inf, pos_inf)
    }

    fn check_powers_direct(&self, plus: Vec<f64>, minus: Vec<f64>, dd: &DegreeDistribution) -> (Vec<f64>, Vec<f64>) {
        let cap = self.mag_bins;
        let mul = |a: &(Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>)| {
            let mut p = direct(&a.0, &b.0);
            add_into(&mut p, &direct(&a.1, &b.1));
            let mut q = direct(&a.0, &b.1);
            add_into(&mut q, &direct(&a.1, &b.0));
            fold_cap(&mut p, cap);
            fold_cap(&mut q, cap);
            trim_end(&mut p);
            trim_end(&mut q);
            (p, q)
        };
        let n_max = dd.max_check_degree() - 1;
        let ladder = square_ladder((plus, minus), n_max, mul);
        let mut acc_p = Vec::new();
        let mut acc_q = Vec::new();
        for &(j, r) in dd.rho() {
            let (p, q) = ladder_power(&ladder, j - 1, mul);
            add_scaled_into(&mut acc_p, &p, r);
            add_scaled_into(&mut acc_q, &q, r);
        }
        (acc_p, acc_q)
    }

    fn check_powers_fft(&self, plus: &[f64], minus: &[f64], dd: &DegreeDistribution) -> (Vec<f64>, Vec<f64>) {
        let n_max = dd.max_check_degree() - 1;
        let span = n_max * (plus.len() - 1) + 1;
        let len = span.next_power_of_two();
        let s: Vec<f64> = plus.iter().zip(minus).map(|(a, b)| a + b).collect();
        let d: Vec<f64> = plus.iter().zip(minus).map(|(a, b)| a - b).collect();
        let fs = self.fft.forward(&s, len);
        let fd = self.fft.forward(&d, len);
        let mut acc_s = vec![Complex64::new(0.0, 0.0); len];
        let mut acc_d = acc_s.clone();
        for &(j, r) in dd.rho() {
            let n = (j - 1) as u32;
            for i in 0..len {
                acc_s[i] += fs[i].powu(n) * r;
                acc_d[i] += fd[i].powu(n) * r;
            }
        }
        let s = self.fft.inverse(acc_s);
        let d = self.fft.inverse(acc_d);
        let mut p: Vec<f64> = (0..span).map(|i| (0.5 * (s[i] + d[i])).max(0.0)).collect();
        let mut q: Vec<f64> = (0..span).map(|i| (0.5 * (s[i] - d[i])).max(0.0)).collect();
        fold_cap(&mut p, self.mag_bins);
        fold_cap(&mut q, self.mag_bins);
        (p, q)
    }

    /// Variable-node stage: combines `d0` with the check output.
    fn variable_stage(&self, d0: &QuantizedDensity, c: &QuantizedDensity, dd: &DegreeDistribution) -> QuantizedDensity {
        let k_max = self.settings.half_range as i64;
        let base = finite_span(c, k_max);
        let init = finite_span(d0, k_max);

        // infinities in closed form
        let (f, a, b) = (base.sum(), c.mass_pos_inf(), c.mass_neg_inf());
        let total = f + a + b;
        let (mut fm, mut pos, mut neg, mut conflict) = (0.0, 0.0, 0.0, 0.0);
        for &(i, l) in dd.lambda() {
            let n = i as i32 - 1;
            let (fnn, fa, fb) = (f.powi(n), (f + a).powi(n), (f + b).powi(n));
            fm += l * fnn;
            pos += l * (fa - fnn);
            neg += l * (fb - fnn);
            conflict += l * (total.powi(n) - fa - fb + fnn).max(0.0);
        }
        let (f0, a0, b0) = (init.sum(), d0.mass_pos_inf(), d0.mass_neg_inf());
        let out_pos = pos * (a0 + f0) + fm * a0;
        let out_neg = neg * (b0 + f0) + fm * b0;
        let out_conflict = conflict * (f0 + a0 + b0) + pos * b0 + neg * a0;

        let finite = if base.is_empty() || init.is_empty() {
            Span::default()
        } else {
            match self.settings.mode {
                ConvolutionMode::Direct => self.variable_powers_direct(base, dd).conv(&init),
                ConvolutionMode::Fft => self.variable_powers_fft(&base, &init, dd),
            }
        };

        // fold onto the grid; positive overflow splits between the edge and
        // +inf so that symmetry survives
        let step = self.settings.step;
        let mut out = vec![0.0; 2 * k_max as usize + 1];
        let mut out_pos = out_pos;
        out[k_max as usize] += out_conflict;
        for (i, &w) in finite.data.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let k = finite.offset + i as i64;
            if k > k_max {
                let t = ((k_max - k) as f64 * step).exp();
                out[2 * k_max as usize] += t * w;
                out_pos += (1.0 - t) * w;
            } else if k < -k_max {
                out[0] += w;
            } else {
                out[(k + k_max) as usize] += w;
            }
        }
        QuantizedDensity::from_parts(step, k_max as usize, out, out_neg, out_pos)
    }

    fn variable_powers_direct(&self, base: Span, dd: &DegreeDistribution) -> Span {
        let n_max = dd.max_variable_degree() - 1;
        let mul = |x: &Span, y: &Span| x.conv(y);
        let ladder = square_ladder(base, n_max, mul);
        let mut acc = Span::default();
        for &(i, l) in dd.lambda() {
            acc.add_scaled(&ladder_power(&ladder, i - 1, mul), l);
        }
        acc
    }

    fn variable_powers_fft(&self, base: &Span, init: &Span, dd: &DegreeDistribution) -> Span {
        let n_max = dd.max_variable_degree() as i64 - 1;
        // every power's support lies in [lower, upper]; wrap-around indexing
        // keeps negative LLRs in place
        let lower = (n_max * base.offset).min(base.offset) + init.offset;
        let upper = (n_max * base.upper().max(0)).max(base.upper()) + init.upper();
        let len = ((upper - lower + 1) as usize).next_power_of_two();
        let wrap = |s: &Span| {
            let mut buf = vec![0.0; len];
            for (i, &x) in s.data.iter().enumerate() {
                buf[(s.offset + i as i64).rem_euclid(len as i64) as usize] = x;
            }
            buf
        };
        let fb = self.fft.forward(&wrap(base), len);
        let fi = self.fft.forward(&wrap(init), len);
        let mut acc = vec![Complex64::new(0.0, 0.0); len];
        for &(i, l) in dd.lambda() {
            let n = (i - 1) as u32;
            for (a, x) in acc.iter_mut().zip(&fb) {
                *a += x.powu(n) * l;
            }
        }
        for (a, x) in acc.iter_mut().zip(&fi) {
            *a *= x;
        }
        let res = self.fft.inverse(acc);
        Span {
            offset: lower,
            data: (lower..=upper)
                .map(|k| res[k.rem_euclid(len as i64) as usize].max(0.0))
                .collect(),
        }
    }
}

fn finite_span(d: &QuantizedDensity, k_max: i64) -> Span {
    let m = d.masses();
    match (m.iter().position(|&x| x != 0.0), m.iter().rposition(|&x| x != 0.0)) {
        (Some(lo), Some(hi)) => Span {
            offset: lo as i64 - k_max,
            data: m[lo..=hi].to_vec(),
        },
        _ => Span::default(),
    }
}

/// Moves every entry beyond index `cap` onto `cap`.
fn fold_cap(v: &mut Vec<f64>, cap: usize) {
    if v.len() > cap + 1 {
        let tail: f64 = v[cap + 1..].iter().sum();
        v.truncate(cap + 1);
        v[cap] += tail;
    }
}

fn add_into(acc: &mut Vec<f64>, x: &[f64]) {
    add_scaled_into(acc, x, 1.0);
}

fn add_scaled_into(acc: &mut Vec<f64>, x: &[f64], w: f64) {
    if acc.len() < x.len() {
        acc.resize(x.len(), 0.0);
    }
    for (a, b) in acc.iter_mut().zip(x) {
        *a += w * b;
    }
}

/// One density-evolution step on the grid shared by `d0` and `d_prev`, with
/// default engine settings.
pub fn de_iterate(d0: &QuantizedDensity, d_prev: &QuantizedDensity, dd: &DegreeDistribution) -> Result<QuantizedDensity> {
    DensityEvolution::for_grid_of(d0)?.iterate(d0, d_prev, dd)
}

/// Runs density evolution from `d0` on its own grid with default settings.
pub fn run_de(d0: &QuantizedDensity, dd: &DegreeDistribution, max_iter: usize, target: f64) -> Result<DeTrajectory> {
    DensityEvolution::new(DeSettings {
        step: d0.step(),
        half_range: d0.half_range(),
        max_iter,
        target,
        ..DeSettings::default()
    })?
    .run(d0, dd)
}
