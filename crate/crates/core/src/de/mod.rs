//! Quantized density evolution and threshold search.

mod convolve;
mod evolution;
mod quantized;
mod threshold;

pub use evolution::{de_iterate, run_de, ConvolutionMode, DeSettings, DeTrajectory, DensityEvolution};
pub use quantized::QuantizedDensity;
pub use threshold::{bec_de_oracle, bec_de_trajectory, bec_oracle_threshold, find_threshold};
