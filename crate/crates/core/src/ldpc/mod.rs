//! LDPC ensembles: degree distributions, sampled Tanner graphs and
//! syndrome encoding.

pub mod coding;
pub mod degree;
pub mod graph;

pub use coding::{format_bits, parse_bits, sample_source_pairs, syndrome_encode, Syndrome};
pub use degree::DegreeDistribution;
pub use graph::{sample_graph, TannerGraph};
