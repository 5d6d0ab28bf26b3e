//! LDPC coset codes for Slepian-Wolf coding.
//!
//! The crate covers the full loop from a joint source `P(x, y)` to a decoded
//! sequence: syndrome encoding over sampled Tanner graphs, belief-propagation
//! decoding with the source prior folded into the initial messages, and
//! quantized density evolution to predict the asymptotic behaviour. The
//! `source` module maps every source to the binary-input output-symmetric
//! channel with the same initial message density, so thresholds for source
//! coding can be read off channel-coding machinery and vice versa.

pub mod bp;
pub mod de;
pub mod error;
pub mod experiments;
pub mod ldpc;
pub mod rng;
pub mod source;

pub use error::{Error, Result};
