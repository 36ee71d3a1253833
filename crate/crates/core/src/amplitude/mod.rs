//! Fock transition amplitudes ⟨n|m⟩ by three independent routes, and the
//! factorization that isolates the suppression function.

mod factorize;
mod recurrence;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{
    expand_submatrix, factorial, fisher_yates, for_each_table, permanent, Interferometer, OccupationVector,
};

pub use factorize::{generalized_suppression, suppression_factorize, suppression_prefactor};
pub use recurrence::{amp_recurrence_with_order, RecurrenceState};

/// Evaluation route for an amplitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Permanent,
    Tables,
    Recurrence,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Permanent, Method::Tables, Method::Recurrence];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Permanent => "permanent",
            Method::Tables => "tables",
            Method::Recurrence => "recurrence",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "permanent" | "perm" => Ok(Method::Permanent),
            "tables" | "table" => Ok(Method::Tables),
            "recurrence" | "rec" => Ok(Method::Recurrence),
            other => Err(Error::Parse(format!("unknown amplitude method '{other}'"))),
        }
    }
}

/// A transition amplitude ⟨n|m⟩ with the route that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Amplitude {
    pub value: Complex64,
    pub method: Method,
}

impl Amplitude {
    fn new(value: Complex64, method: Method) -> Self {
        debug_assert!(value.norm() <= 1.0 + 1e-9, "amplitude {value} exceeds 1");
        Self { value, method }
    }

    pub fn norm(&self) -> f64 {
        self.value.norm()
    }
}

/// per(U[m, n]) / √(m!·n!).
pub fn amp_permanent(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> Result<Amplitude> {
    let sub = expand_submatrix(u, m, n)?;
    let per = permanent(&sub)?;
    let norm = (m.factorial_product() * n.factorial_product()).sqrt();
    Ok(Amplitude::new(per / norm, Method::Permanent))
}

/// (N!/√(m!·n!)) Σ_S P(S | m, n) Π_kl U_kl^{S_kl}, summed over contingency tables.
pub fn amp_tables(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> Result<Amplitude> {
    let total = u.check_configs(m, n)?;
    let dim = u.dim();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut failure = None;
    for_each_table(m, n, |s| {
        let w = match fisher_yates(s, m, n) {
            Ok(w) => w,
            Err(e) => {
                failure.get_or_insert(e);
                return;
            }
        };
        let mut prod = Complex64::new(w, 0.0);
        for k in 0..dim {
            for l in 0..dim {
                let e = s.get(k, l);
                if e > 0 {
                    prod *= u.entry(k, l).powu(e as u32);
                }
            }
        }
        sum += prod;
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let scale = factorial(total) / (m.factorial_product() * n.factorial_product()).sqrt();
    Ok(Amplitude::new(sum * scale, Method::Tables))
}

/// Generating-function recurrence: output modes M..2 are eliminated one photon
/// at a time, then the single-output-mode closed form finishes the job.
pub fn amp_recurrence(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> Result<Amplitude> {
    u.check_configs(m, n)?;
    let order: Vec<usize> = (1..u.dim()).rev().collect();
    amp_recurrence_with_order(u, m, n, &order)
}

/// Dispatch on `method`.
pub fn amplitude(u: &Interferometer, m: &OccupationVector, n: &OccupationVector, method: Method) -> Result<Amplitude> {
    match method {
        Method::Permanent => amp_permanent(u, m, n),
        Method::Tables => amp_tables(u, m, n),
        Method::Recurrence => amp_recurrence(u, m, n),
    }
}
