//! Reproducible experiments built on the library: feasible-domain sweeps,
//! source/channel correspondence, concentration, Monte-Carlo coding runs and
//! decoder mismatch.

mod correspondence;
mod family;
mod mismatch;
mod report;
mod simulation;
mod sweep;

pub use correspondence::{correspondence_check, trajectory_divergence};
pub use family::{
    bsc_family_source, erasure_source, example1_equivalence_check, xor_source, xor_sources_equivalent,
    BscFamilyPoint, ERASURE_LABEL,
};
pub use mismatch::{bsc_mismatch_thresholds, mismatch_experiment, MismatchReport};
pub use report::{render_csv, Preamble};
pub use simulation::{
    concentration_experiment, message_error_fraction, monte_carlo_ber, simulate_block, ConcentrationReport,
    ConcentrationRow, MonteCarloReport, CONCENTRATION_EPS,
};
pub use sweep::{
    boundary_to_csv, feasible_boundary, feasible_domain_sweep, unit_half_grid, BoundaryPoint, SweepReport, SweepRow,
    CONVERSE_SLACK,
};
