//! Joint source distributions, their LLR densities and the correspondence
//! with binary-input output-symmetric channels.

pub mod channel;
pub mod degrade;
pub mod density;
pub mod equivalence;
pub mod joint;
mod lp;

pub use channel::{source_to_channel, BiosChannel};
pub use degrade::{degrade_source, is_degraded, StochasticMap, DEGRADE_TOL};
pub use density::DiscreteLlrDensity;
pub use equivalence::{are_equivalent, class_degrees_of_freedom, equivalence_class_source};
pub use joint::{binary_entropy, mismatch_initial_density, JointSource};
