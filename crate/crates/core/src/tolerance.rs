//! Numerical thresholds shared across the crate.

/// Unitarity check `‖UU† − I‖_max` at construction.
pub const UNITARITY: f64 = 1e-12;
/// An amplitude below this magnitude counts as suppressed.
pub const ZERO_AMPLITUDE: f64 = 1e-10;
/// Algebraic identities (matrix equalities, closed-form comparisons).
pub const IDENTITY: f64 = 1e-12;
/// Roots this close to τ = 0 or τ = 1 are trivial.
pub const TRIVIAL_ENDPOINT: f64 = 1e-9;
/// Residual accepted for a refined zero of a suppression function.
pub const CURVE_RESIDUAL: f64 = 1e-8;
/// Smallest |U_kl| used as a phase anchor in symmetry factorization.
pub const PHASE_ANCHOR: f64 = 1e-8;
/// Consistency of the propagated phase factorization.
pub const PHASE_CONSISTENCY: f64 = 1e-9;
/// An eigenvalue product farther than this from 1 predicts suppression.
pub const PREDICTION: f64 = 1e-8;
/// Derivative magnitude below which a slice root counts as double.
pub const DOUBLE_ROOT_DERIVATIVE: f64 = 1e-6;
/// Bisection bracket width for real zeros.
pub const BISECTION: f64 = 1e-12;

/// True if `tau` is within [`TRIVIAL_ENDPOINT`] of 0 or 1.
pub fn is_trivial_tau(tau: f64) -> bool {
    tau.abs() < TRIVIAL_ENDPOINT || (1.0 - tau).abs() < TRIVIAL_ENDPOINT
}
