use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fock::{Interferometer, OccupationVector};
use crate::symmetry::{solve_phase_factorization, Permutation, Side};

/// Whether a suppression law follows from permutation symmetry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Classification {
    CoveredBySymmetry { sigma: Permutation, side: Side },
    BeyondSymmetry,
    Unclassified,
}

impl Classification {
    pub fn is_covered(&self) -> bool {
        matches!(self, Classification::CoveredBySymmetry { .. })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::CoveredBySymmetry { sigma, side } => write!(f, "covered:{sigma}:{side}"),
            Classification::BeyondSymmetry => f.write_str("beyond"),
            Classification::Unclassified => f.write_str("unclassified"),
        }
    }
}

/// A σ whose symmetry relation forces ⟨n|m⟩ = 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryWitness {
    pub sigma: Permutation,
    pub side: Side,
    /// Transition phase; `None` when a block structure leaves it gauge-dependent.
    pub phase: Option<Complex64>,
    pub lambda: Vec<Complex64>,
    pub z: Vec<Complex64>,
}

/// Every non-identity σ and side that forces the transition to vanish.
/// Input side needs σ(m) = m, output side σ(n) = n.
pub fn symmetry_witnesses(
    u: &Interferometer,
    m: &OccupationVector,
    n: &OccupationVector,
) -> Result<Vec<SymmetryWitness>> {
    u.check_configs(m, n)?;
    let mut out = Vec::new();
    for sigma in Permutation::all(u.dim()).into_iter().filter(|s| !s.is_identity()) {
        for side in [Side::Input, Side::Output] {
            let fixed = match side {
                Side::Input => sigma.fixes(m),
                Side::Output => sigma.fixes(n),
            };
            if !fixed {
                continue;
            }
            if let Some(pair) = solve_phase_factorization(u, &sigma, side) {
                if pair.forces_zero(m, n) {
                    out.push(SymmetryWitness {
                        phase: pair.transition_phase(m, n),
                        sigma: sigma.clone(),
                        side,
                        lambda: pair.lambda,
                        z: pair.z,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// First witness in σ order (input side before output side), else beyond.
pub fn classify(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> Result<Classification> {
    Ok(match symmetry_witnesses(u, m, n)?.into_iter().next() {
        Some(w) => Classification::CoveredBySymmetry { sigma: w.sigma, side: w.side },
        None => Classification::BeyondSymmetry,
    })
}
