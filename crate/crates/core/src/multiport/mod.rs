//! Constructors for the beamsplitter, the two tritter families, the
//! symmetric tritters, and helpers to compose and compare them.

mod beamsplitter;
mod compose;
mod descriptor;
mod phases;
mod tritter;

pub use beamsplitter::{beamsplitter, beamsplitter_matrix_complex, BeamsplitterParams};
pub use compose::{compose, direct_sum, tau_s, transposition_construction, Composite, Part, TranspositionCheck};
pub use descriptor::{load_matrix_csv, parse_angle, parse_matrix_csv, MultiportSpec};
pub use phases::{phase_fit, PhaseFit, PhaseSides};
pub use tritter::{fourier_tritter, real_symmetric_tritter, symmetric_tritter, tritter, TritterFamily, TritterParams};
