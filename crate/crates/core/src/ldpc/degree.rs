use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Edge-perspective degree distribution pair `(lambda, rho)`.
///
/// `lambda` lists `(degree, fraction of edges on variable nodes of that
/// degree)`, `rho` the same for check nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    lambda: Vec<(usize, f64)>,
    rho: Vec<(usize, f64)>,
}

fn validate(side: &str, mut terms: Vec<(usize, f64)>) -> Result<Vec<(usize, f64)>> {
    terms.retain(|t| t.1 != 0.0);
    terms.sort_by_key(|t| t.0);
    if terms.is_empty() {
        return Err(Error::InvalidDegreeDistribution(format!("{side} is empty")));
    }
    if terms.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InvalidDegreeDistribution(format!("{side} repeats a degree")));
    }
    for &(d, c) in &terms {
        if d < 2 {
            return Err(Error::InvalidDegreeDistribution(format!("{side} degree {d} < 2")));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidDegreeDistribution(format!("{side} coefficient {c} < 0")));
        }
    }
    let s: f64 = terms.iter().map(|t| t.1).sum();
    if (s - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDegreeDistribution(format!("{side} sums to {s}")));
    }
    if (s - 1.0).abs() > 1e-15 {
        terms.iter_mut().for_each(|t| t.1 /= s);
    }
    Ok(terms)
}

impl DegreeDistribution {
    pub fn new(lambda: Vec<(usize, f64)>, rho: Vec<(usize, f64)>) -> Result<Self> {
        Ok(Self {
            lambda: validate("lambda", lambda)?,
            rho: validate("rho", rho)?,
        })
    }

    /// `(dv, dc)`-regular ensemble.
    pub fn regular(dv: usize, dc: usize) -> Result<Self> {
        Self::new(vec![(dv, 1.0)], vec![(dc, 1.0)])
    }

    /// Rate one-half irregular pair optimized for the binary-input AWGN
    /// channel (variable degrees up to 20, checks of degree 8 and 9).
    pub fn awgn_rate_half() -> Self {
        Self::new(
            vec![
                (2, 0.234029),
                (3, 0.212425),
                (6, 0.146898),
                (7, 0.102840),
                (20, 0.303808),
            ],
            vec![(8, 0.71875), (9, 0.28125)],
        )
        .expect("coefficients are valid")
    }

    /// Resolves `"dv,dc"` (regular) or the preset name `code2`.
    pub fn preset(name: &str) -> Option<Self> {
        if name.eq_ignore_ascii_case("code2") {
            return Some(Self::awgn_rate_half());
        }
        let (a, b) = name.split_once(',')?;
        Self::regular(a.trim().parse().ok()?, b.trim().parse().ok()?).ok()
    }

    /// Parses `L degree coeff` / `R degree coeff` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lambda = Vec::new();
        let mut rho = Vec::new();
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
                return Err(err("expected `L|R degree coeff`"));
            }
            let d: usize = f[1].parse().map_err(|_| err("bad degree"))?;
            let c: f64 = f[2].parse().map_err(|_| err("bad coefficient"))?;
            match f[0] {
                "L" | "l" => lambda.push((d, c)),
                "R" | "r" => rho.push((d, c)),
                _ => return Err(err("line must start with L or R")),
            }
        }
        Self::new(lambda, rho)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(d, c) in &self.lambda {
            let _ = writeln!(out, "L {d} {c}");
        }
        for &(d, c) in &self.rho {
            let _ = writeln!(out, "R {d} {c}");
        }
        out
    }

    /// Short identifier for report metadata.
    pub fn label(&self) -> String {
        if self.is_regular() {
            format!("({},{})-regular", self.lambda[0].0, self.rho[0].0)
        } else {
            let fmt = |t: &[(usize, f64)]| {
                t.iter().map(|(d, c)| format!("{c}x^{}", d - 1)).collect::<Vec<_>>().join("+")
            };
            format!("lambda={} rho={}", fmt(&self.lambda), fmt(&self.rho))
        }
    }

    pub fn lambda(&self) -> &[(usize, f64)] {
        &self.lambda
    }

    pub fn rho(&self) -> &[(usize, f64)] {
        &self.rho
    }

    pub fn is_regular(&self) -> bool {
        self.lambda.len() == 1 && self.rho.len() == 1
    }

    pub fn max_variable_degree(&self) -> usize {
        self.lambda.last().map_or(0, |t| t.0)
    }

    pub fn max_check_degree(&self) -> usize {
        self.rho.last().map_or(0, |t| t.0)
    }

    /// `lambda(x) = sum_i lambda_i x^{i-1}`.
    pub fn lambda_poly(&self, x: f64) -> f64 {
        self.lambda.iter().map(|&(d, c)| c * x.powi(d as i32 - 1)).sum()
    }

    /// `rho(x) = sum_j rho_j x^{j-1}`.
    pub fn rho_poly(&self, x: f64) -> f64 {
        self.rho.iter().map(|&(d, c)| c * x.powi(d as i32 - 1)).sum()
    }

    /// `(code rate, syndrome rate)` with syndrome rate
    /// `(sum_j rho_j / j) / (sum_i lambda_i / i)`.
    pub fn design_rates(&self) -> (f64, f64) {
        let inv = |t: &[(usize, f64)]| t.iter().map(|&(d, c)| c / d as f64).sum::<f64>();
        let syndrome = inv(&self.rho) / inv(&self.lambda);
        (1.0 - syndrome, syndrome)
    }
}
