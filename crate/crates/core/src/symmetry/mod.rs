//! Permutation-symmetry suppression: factor P_σU = ZUΛ (or the output-side
//! analogue), predict which transitions vanish, and classify known laws.

mod classify;
mod factorization;
mod permutation;
mod table_b;

pub use classify::{classify, symmetry_witnesses, Classification, SymmetryWitness};
pub use factorization::{
    complete_with_lambda, predict_suppressed, solve_phase_factorization, Component, PhasePair, Side,
};
pub use permutation::Permutation;
pub use table_b::{table_b_rows, Parity, TableBClaim, TableBDevice, TableBInstance, TableBReport, TableBRow};
