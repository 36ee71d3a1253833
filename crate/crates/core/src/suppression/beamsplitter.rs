use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::OccupationVector;
use crate::suppression::{Device, Provenance, SuppressionLaw};

/// Which output mode carries the few reflected photons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputOrder {
    /// Output (n₁, k): k photons in mode 2.
    N1First,
    /// Output (k, n₂): k photons in mode 1.
    N2First,
}

/// Integer polynomial in τ, coefficients in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsPolynomial {
    pub coefficients: Vec<i64>,
}

impl BsPolynomial {
    pub fn eval(&self, tau: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * tau + c as f64)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    /// Real roots with multiplicity, for degree 1 or 2.
    pub fn real_roots(&self) -> Vec<(f64, u32)> {
        let c = |i: usize| self.coefficients.get(i).copied().unwrap_or(0);
        match self.degree() {
            1 => vec![(-(c(0) as f64) / c(1) as f64, 1)],
            2 => {
                let (a, b, k) = (c(2), c(1), c(0));
                let disc = b * b - 4 * a * k;
                if disc < 0 {
                    Vec::new()
                } else if disc == 0 {
                    vec![(-(b as f64) / (2 * a) as f64, 2)]
                } else {
                    // stable form avoids cancellation
                    let s = (disc as f64).sqrt();
                    let q = -0.5 * (b as f64 + (b as f64).signum() * s);
                    let q = if b == 0 { -0.5 * s } else { q };
                    let mut r = vec![q / a as f64, if q != 0.0 { k as f64 / q } else { 0.0 }];
                    r.sort_by(f64::total_cmp);
                    r.into_iter().map(|x| (x, 1)).collect()
                }
            }
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for BsPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", terms.join(", "))
    }
}

fn check_photons(m1: usize, m2: usize, at_least: usize) -> Result<()> {
    if m1 + m2 < at_least {
        return Err(Error::Contract(format!("input ({m1},{m2}) needs at least {at_least} photon(s)")));
    }
    Ok(())
}

/// Suppression polynomial for `k` ∈ {1, 2} photons in the minority output mode.
///
/// With p photons in the input mode paired with the majority output
/// (p = m₁ for N1First, m₂ for N2First) and N = m₁ + m₂:
/// k = 1: Nτ − p; k = 2: N(N−1)τ² − 2p(N−1)τ + p(p−1).
pub fn bs_suppression_poly(m1: usize, m2: usize, order: OutputOrder, k: usize) -> Result<BsPolynomial> {
    check_photons(m1, m2, k.max(1))?;
    let n = (m1 + m2) as i64;
    let p = match order {
        OutputOrder::N1First => m1,
        OutputOrder::N2First => m2,
    } as i64;
    let coefficients = match k {
        1 => vec![-p, n],
        2 => vec![p * (p - 1), -2 * p * (n - 1), n * (n - 1)],
        _ => {
            return Err(Error::NotImplemented(format!(
                "closed-form beamsplitter polynomial for {k} minority photons (use the numeric path)"
            )))
        }
    };
    Ok(BsPolynomial { coefficients })
}

fn output_for(m1: usize, m2: usize, order: OutputOrder, k: usize) -> OccupationVector {
    let rest = m1 + m2 - k;
    match order {
        OutputOrder::N1First => OccupationVector::from([rest, k]),
        OutputOrder::N2First => OccupationVector::from([k, rest]),
    }
}

fn law(m1: usize, m2: usize, order: OutputOrder, k: usize, name: &str) -> Result<SuppressionLaw> {
    let poly = bs_suppression_poly(m1, m2, order, k)?;
    SuppressionLaw::verified(
        Device::Beamsplitter { phi: 0.0 },
        OccupationVector::from([m1, m2]),
        output_for(m1, m2, order, k),
        &poly.real_roots(),
        Provenance::ClosedForm { formula: format!("{name}:{poly}") },
    )
}

/// One reflected photon: τ = m₁/N for (n₁, 1), τ = m₂/N for (1, n₂).
pub fn bs_law_single(m1: usize, m2: usize, order: OutputOrder) -> Result<SuppressionLaw> {
    law(m1, m2, order, 1, "bs-one-reflected")
}

/// Two reflected photons: τ = (m₁/N)(1 ± √(m₂/(m₁(N−1)))) for (n₁, 2), m₁ ↔ m₂ for (2, n₂).
pub fn bs_law_double(m1: usize, m2: usize, order: OutputOrder) -> Result<SuppressionLaw> {
    check_photons(m1, m2, 2)?;
    law(m1, m2, order, 2, "bs-two-reflected")
}
