//! Belief-propagation decoding of LDPC coset codes.
//!
//! Messages are LLRs `ln(P(x=0|.)/P(x=1|.))`. The initial message of each
//! variable is the posterior LLR given its side information, so the source
//! prior enters the decoder there; check nodes flip the sign of their output
//! when their syndrome bit is 1. Messages may be `+inf`/`-inf` (certain) or
//! exactly `0` (erased).

use crate::error::{Error, Result};
use crate::ldpc::{syndrome_encode, Syndrome, TannerGraph};

/// Clamp range for summed check magnitudes before inversion. Magnitudes that
/// are exactly zero (all inputs certain) bypass the clamp.
pub const MAG_MIN: f64 = 1e-12;
pub const MAG_MAX: f64 = 50.0;

/// `ln coth(x/2)` for `x > 0`; its own inverse on `(0, inf)`.
pub fn phi(x: f64) -> f64 {
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x == f64::INFINITY {
        return 0.0;
    }
    let e = (-x).exp();
    if x > 1.0 {
        e.ln_1p() - (-e).ln_1p()
    } else {
        e.ln_1p() - (-(-x).exp_m1()).ln()
    }
}

/// The `(sign, magnitude)` transform `(sgn m, -ln tanh|m/2|)`.
///
/// Zero maps to sign 0 with infinite magnitude; `+-inf` to magnitude 0.
pub fn gamma(m: f64) -> (i8, f64) {
    let sign = if m > 0.0 {
        1
    } else if m < 0.0 {
        -1
    } else {
        0
    };
    (sign, phi(m.abs()))
}

/// Inverse of [`gamma`].
pub fn gamma_inverse(sign: i8, mag: f64) -> f64 {
    if sign == 0 {
        return 0.0;
    }
    f64::from(sign) * phi(mag)
}

fn combine_magnitudes(sum: f64) -> f64 {
    if sum == 0.0 {
        f64::INFINITY
    } else {
        phi(sum.clamp(MAG_MIN, MAG_MAX))
    }
}

/// Check-node output `(-1)^s gamma^{-1}(sum gamma(m_i))`. An erased input
/// erases the output.
pub fn check_node_op(msgs: &[f64], s: u8) -> f64 {
    let mut negative = false;
    let mut sum = 0.0;
    for &m in msgs {
        if m == 0.0 {
            return 0.0;
        }
        negative ^= m < 0.0;
        sum += phi(m.abs());
    }
    let mag = combine_magnitudes(sum);
    if negative ^ (s & 1 == 1) {
        -mag
    } else {
        mag
    }
}

/// Running sum of LLRs with the infinity convention: `+inf` and `-inf`
/// together cancel to 0 regardless of the finite terms.
#[derive(Debug, Clone, Copy, Default)]
struct LlrSum {
    finite: f64,
    pos_inf: u32,
    neg_inf: u32,
}

impl LlrSum {
    fn add(&mut self, m: f64) {
        if m == f64::INFINITY {
            self.pos_inf += 1;
        } else if m == f64::NEG_INFINITY {
            self.neg_inf += 1;
        } else {
            self.finite += m;
        }
    }

    fn without(mut self, m: f64) -> Self {
        if m == f64::INFINITY {
            self.pos_inf -= 1;
        } else if m == f64::NEG_INFINITY {
            self.neg_inf -= 1;
        } else {
            self.finite -= m;
        }
        self
    }

    fn value(self) -> f64 {
        match (self.pos_inf > 0, self.neg_inf > 0) {
            (true, true) => 0.0,
            (true, false) => f64::INFINITY,
            (false, true) => f64::NEG_INFINITY,
            (false, false) => self.finite,
        }
    }
}

/// Variable-node output `m0 + sum(incoming)`, with conflicting certainties
/// cancelling to 0.
pub fn variable_node_op(m0: f64, incoming: &[f64]) -> f64 {
    let mut acc = LlrSum::default();
    acc.add(m0);
    incoming.iter().for_each(|&m| acc.add(m));
    acc.value()
}

/// Per-edge messages at some point of the flooding schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct MessageState {
    /// Variable-to-check messages, indexed by edge.
    pub v2c: Vec<f64>,
    /// Check-to-variable messages, indexed by edge.
    pub c2v: Vec<f64>,
    pub iteration: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub x_hat: Vec<u8>,
    pub iterations_used: usize,
    pub syndrome_satisfied: bool,
    pub beliefs: Vec<f64>,
}

/// Flooding-schedule decoder bound to one graph, syndrome and set of
/// initial LLRs.
pub struct BpDecoder<'g> {
    graph: &'g TannerGraph,
    syndrome: &'g Syndrome,
    init: &'g [f64],
    state: MessageState,
    scratch: Vec<f64>,
}

impl<'g> BpDecoder<'g> {
    pub fn new(graph: &'g TannerGraph, syndrome: &'g Syndrome, init: &'g [f64]) -> Result<Self> {
        if init.len() != graph.num_variables() {
            return Err(Error::DimensionMismatch {
                what: "initial LLRs vs variable count",
                expected: graph.num_variables(),
                got: init.len(),
            });
        }
        if syndrome.len() != graph.num_checks() {
            return Err(Error::DimensionMismatch {
                what: "syndrome vs check count",
                expected: graph.num_checks(),
                got: syndrome.len(),
            });
        }
        if init.iter().any(|m| m.is_nan()) {
            return Err(Error::InvalidParameter("NaN initial LLR".into()));
        }
        let v2c = graph.edges().iter().map(|&(v, _)| init[v]).collect();
        Ok(Self {
            graph,
            syndrome,
            init,
            state: MessageState {
                v2c,
                c2v: vec![0.0; graph.num_edges()],
                iteration: 0,
            },
            scratch: Vec::new(),
        })
    }

    pub fn state(&self) -> &MessageState {
        &self.state
    }

    pub fn iteration(&self) -> usize {
        self.state.iteration
    }

    /// One flooding iteration: every check, then every variable.
    pub fn step(&mut self) {
        let g = self.graph;
        let st = &mut self.state;
        let prefix = &mut self.scratch;
        for c in 0..g.num_checks() {
            let edges = g.check_edges(c);
            let flip = self.syndrome.bits()[c] & 1 == 1;
            let mut zeros = 0usize;
            let mut negatives = 0usize;
            for &e in edges {
                let m = st.v2c[e];
                zeros += usize::from(m == 0.0);
                negatives += usize::from(m < 0.0);
            }
            // prefix sums of magnitudes; the suffix is accumulated backwards
            prefix.clear();
            let mut run = 0.0;
            for &e in edges {
                prefix.push(run);
                let m = st.v2c[e];
                if m != 0.0 {
                    run += phi(m.abs());
                }
            }
            let mut suffix = 0.0;
            for (k, &e) in edges.iter().enumerate().rev() {
                let m = st.v2c[e];
                let own_zero = m == 0.0;
                let out = if zeros > usize::from(own_zero) {
                    0.0
                } else {
                    let neg = (negatives - usize::from(m < 0.0)) % 2 == 1;
                    let mag = combine_magnitudes(prefix[k] + suffix);
                    if neg ^ flip {
                        -mag
                    } else {
                        mag
                    }
                };
                st.c2v[e] = out;
                if !own_zero {
                    suffix += phi(m.abs());
                }
            }
        }
        for v in 0..g.num_variables() {
            let mut acc = LlrSum::default();
            acc.add(self.init[v]);
            for &e in g.var_edges(v) {
                acc.add(st.c2v[e]);
            }
            for &e in g.var_edges(v) {
                st.v2c[e] = acc.without(st.c2v[e]).value();
            }
        }
        st.iteration += 1;
    }

    /// `m0 + sum of all incoming check messages` per variable.
    pub fn beliefs(&self) -> Vec<f64> {
        let g = self.graph;
        (0..g.num_variables())
            .map(|v| {
                let mut acc = LlrSum::default();
                acc.add(self.init[v]);
                for &e in g.var_edges(v) {
                    acc.add(self.state.c2v[e]);
                }
                acc.value()
            })
            .collect()
    }
}

/// Hard decision: bit 0 iff belief >= 0 (a zero belief decides 0).
pub fn hard_decision(beliefs: &[f64]) -> Vec<u8> {
    beliefs.iter().map(|&b| u8::from(b < 0.0)).collect()
}

/// Decodes until the hard decision satisfies the syndrome or `max_iter`
/// iterations have run.
pub fn decode(g: &TannerGraph, s: &Syndrome, init_llrs: &[f64], max_iter: usize) -> Result<DecodeResult> {
    let mut dec = BpDecoder::new(g, s, init_llrs)?;
    loop {
        let beliefs = dec.beliefs();
        let x_hat = hard_decision(&beliefs);
        let ok = syndrome_encode(g, &x_hat)? == *s;
        if ok || dec.iteration() >= max_iter {
            return Ok(DecodeResult {
                x_hat,
                iterations_used: dec.iteration(),
                syndrome_satisfied: ok,
                beliefs,
            });
        }
        dec.step();
    }
}

/// Number of variable-to-check messages that favour the wrong value of
/// their variable; zero messages count one half.
pub fn count_incorrect_messages(state: &MessageState, g: &TannerGraph, x_true: &[u8]) -> Result<f64> {
    if x_true.len() != g.num_variables() {
        return Err(Error::DimensionMismatch {
            what: "true word vs variable count",
            expected: g.num_variables(),
            got: x_true.len(),
        });
    }
    if state.v2c.len() != g.num_edges() {
        return Err(Error::DimensionMismatch {
            what: "message state vs edge count",
            expected: g.num_edges(),
            got: state.v2c.len(),
        });
    }
    Ok(g.edges()
        .iter()
        .zip(&state.v2c)
        .map(|(&(v, _), &m)| {
            let signed = if x_true[v] == 0 { m } else { -m };
            if signed < 0.0 {
                1.0
            } else if signed == 0.0 {
                0.5
            } else {
                0.0
            }
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        let (s, m) = gamma(2.0);
        assert_eq!(s, 1);
        // -ln tanh(1)
        assert!((m - 0.272_341_468_911_831_6).abs() < 1e-14);
        let (s, m) = gamma(-2.0);
        assert_eq!(s, -1);
        assert!((m - 0.272_341_468_911_831_6).abs() < 1e-14);
        assert_eq!(gamma(0.0), (0, f64::INFINITY));
        assert_eq!(gamma(f64::INFINITY), (1, 0.0));
        assert_eq!(gamma_inverse(-1, 0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn phi_is_an_involution() {
        for &x in &[1e-9, 1e-3, 0.3, 1.0, 2.5, 10.0, 25.0, 35.0] {
            let back = phi(phi(x));
            assert!((back - x).abs() <= 1e-9 * x.max(1.0), "{x} -> {back}");
        }
    }

    #[test]
    fn check_node_examples() {
        // 2 artanh(tanh(0.75) tanh(-0.4))
        let expect = -0.492_359_415_712_505_1;
        assert!((check_node_op(&[1.5, -0.8], 0) - expect).abs() < 1e-12);
        assert!((check_node_op(&[1.5, -0.8], 1) + expect).abs() < 1e-12);
        assert_eq!(check_node_op(&[1.5, 0.0, 3.0], 0), 0.0);
        assert_eq!(check_node_op(&[f64::INFINITY, f64::NEG_INFINITY], 0), f64::NEG_INFINITY);
        assert!((check_node_op(&[f64::INFINITY, 0.7], 1) + 0.7).abs() < 1e-12);
    }

    #[test]
    fn variable_node_examples() {
        assert_eq!(variable_node_op(2.19722, &[]), 2.19722);
        assert_eq!(variable_node_op(1.0, &[-0.5, 0.25]), 0.75);
        assert_eq!(variable_node_op(f64::INFINITY, &[f64::NEG_INFINITY]), 0.0);
        assert_eq!(variable_node_op(f64::INFINITY, &[-3.0]), f64::INFINITY);
    }

    #[test]
    fn perfect_side_information() {
        let g = TannerGraph::from_checks(4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let x = [1u8, 0, 1, 1];
        let s = syndrome_encode(&g, &x).unwrap();
        let init: Vec<f64> = x.iter().map(|&b| if b == 0 { f64::INFINITY } else { f64::NEG_INFINITY }).collect();
        let r = decode(&g, &s, &init, 10).unwrap();
        assert_eq!(r.x_hat, x);
        assert_eq!(r.iterations_used, 0);
        assert!(r.syndrome_satisfied);

        let dec = BpDecoder::new(&g, &s, &init).unwrap();
        assert_eq!(count_incorrect_messages(dec.state(), &g, &x).unwrap(), 0.0);
    }

    #[test]
    fn zero_messages_count_half() {
        let g = TannerGraph::from_checks(4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let s = Syndrome(vec![0, 0]);
        let init = vec![0.0; 4];
        let dec = BpDecoder::new(&g, &s, &init).unwrap();
        assert_eq!(count_incorrect_messages(dec.state(), &g, &[0, 1, 0, 1]).unwrap(), 3.0);
    }

    #[test]
    fn erasure_recovery() {
        // one erased bit is recovered from the syndrome
        let g = TannerGraph::from_checks(3, &[vec![0, 1, 2]]).unwrap();
        let x = [1u8, 1, 1];
        let s = syndrome_encode(&g, &x).unwrap();
        let init = [f64::NEG_INFINITY, f64::NEG_INFINITY, 0.0];
        let r = decode(&g, &s, &init, 5).unwrap();
        assert_eq!(r.x_hat, x);
        assert_eq!(r.beliefs[2], f64::NEG_INFINITY);
    }

    #[test]
    fn dimension_checks() {
        let g = TannerGraph::from_checks(3, &[vec![0, 1, 2]]).unwrap();
        let s = Syndrome(vec![0]);
        assert!(decode(&g, &s, &[0.0; 2], 5).is_err());
        assert!(decode(&g, &Syndrome(vec![0, 1]), &[0.0; 3], 5).is_err());
    }
}
