//! Multiphoton Fock-state transition amplitudes on small linear-optical
//! multiports, suppression laws on beamsplitters and tritters, their
//! classification against the permutation-symmetry principle, and their
//! breaking by partial distinguishability.
//!
//! ```
//! use bosonlaw::{amplitude, beamsplitter, BeamsplitterParams, Method, OccupationVector};
//!
//! let bs = beamsplitter(BeamsplitterParams { tau: 0.5, phi: 0.0 }).unwrap();
//! let m = OccupationVector::from([1, 1]);
//! let a = amplitude(&bs, &m, &m, Method::Permanent).unwrap();
//! assert!(a.norm() < 1e-15);
//! ```

pub mod amplitude;
pub mod distinguish;
pub mod error;
pub mod fock;
pub mod multiport;
pub mod random;
pub mod suppression;
pub mod symmetry;
pub mod tolerance;

pub use amplitude::{amp_permanent, amp_recurrence, amp_tables, amplitude, Amplitude, Method};
pub use distinguish::{law_survives, partial_probability, PartialProbability, PartialSource, Survival};
pub use error::{Error, Result};
pub use fock::{permanent, ContingencyTable, Interferometer, OccupationVector};
pub use multiport::{beamsplitter, tritter, BeamsplitterParams, MultiportSpec, TritterFamily, TritterParams};
pub use symmetry::{classify, Classification, Permutation};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
