use std::fmt;

use serde::{Deserialize, Serialize};

use crate::amplitude::amp_permanent;
use crate::error::{Error, Result};
use crate::fock::{Interferometer, OccupationVector};
use crate::multiport::{beamsplitter, tritter, BeamsplitterParams, TritterFamily, TritterParams};
use crate::symmetry::{classify, Classification};
use crate::tolerance;

/// A device family with everything but τ fixed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Device {
    Beamsplitter { phi: f64 },
    Tritter { family: TritterFamily, theta: f64 },
}

impl Device {
    pub fn at(&self, tau: f64) -> Result<Interferometer> {
        match *self {
            Device::Beamsplitter { phi } => beamsplitter(BeamsplitterParams::new(tau, phi)?),
            Device::Tritter { family, theta } => tritter(TritterParams::new(family, tau, theta)?),
        }
    }

    pub fn modes(&self) -> usize {
        match self {
            Device::Beamsplitter { .. } => 2,
            Device::Tritter { .. } => 3,
        }
    }
}

impl fmt::Display for Device {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Device::Beamsplitter { phi } => write!(f, "bs(phi={phi})"),
            Device::Tritter { family, theta } => write!(f, "{family}(theta={theta})"),
        }
    }
}

/// How a law's roots were obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    ClosedForm { formula: String },
    NumericRoot { residual: f64 },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ClosedForm { formula } => write!(f, "closed-form:{formula}"),
            Provenance::NumericRoot { residual } => write!(f, "numeric:{residual:.1e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawRoot {
    pub tau: f64,
    pub multiplicity: u32,
    /// |⟨n|m⟩| at the root, by the permanent.
    pub amplitude: f64,
    pub classification: Classification,
}

/// A verified family of zeros of ⟨output|input⟩ in τ ∈ (0, 1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuppressionLaw {
    pub device: Device,
    pub input: OccupationVector,
    pub output: OccupationVector,
    pub roots: Vec<LawRoot>,
    /// Candidate roots dropped as trivial (τ ≈ 0 or 1) or outside [0, 1].
    pub excluded: Vec<f64>,
    pub provenance: Provenance,
}

impl SuppressionLaw {
    /// Keep the nontrivial candidates and check each against the permanent.
    /// Any candidate in (0, 1) that is not a zero is a contract error.
    pub fn verified(
        device: Device,
        input: OccupationVector,
        output: OccupationVector,
        candidates: &[(f64, u32)],
        provenance: Provenance,
    ) -> Result<Self> {
        if input.modes() != device.modes() || output.modes() != device.modes() {
            return Err(Error::DimensionMismatch {
                expected: device.modes(),
                found: input.modes().max(output.modes()),
            });
        }
        let mut roots: Vec<LawRoot> = Vec::new();
        let mut excluded = Vec::new();
        for &(tau, multiplicity) in candidates {
            if !(0.0..=1.0).contains(&tau) || tolerance::is_trivial_tau(tau) {
                excluded.push(tau);
                continue;
            }
            if let Some(r) = roots.iter_mut().find(|r| (r.tau - tau).abs() < 1e-12) {
                r.multiplicity += multiplicity;
                continue;
            }
            let amplitude = amp_permanent(&device.at(tau)?, &input, &output)?.norm();
            if amplitude.is_nan() || amplitude >= tolerance::ZERO_AMPLITUDE {
                return Err(Error::Contract(format!(
                    "claimed root tau = {tau} of <{output}|{input}> on {device} has amplitude {amplitude:.3e}"
                )));
            }
            roots.push(LawRoot { tau, multiplicity, amplitude, classification: Classification::Unclassified });
        }
        roots.sort_by(|a, b| a.tau.total_cmp(&b.tau));
        Ok(Self { device, input, output, roots, excluded, provenance })
    }

    /// Fill in the symmetry classification of every root.
    pub fn classified(mut self) -> Result<Self> {
        let cls = classify_law(&self)?;
        for (r, c) in self.roots.iter_mut().zip(cls) {
            r.classification = c;
        }
        Ok(self)
    }

    pub fn taus(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.tau).collect()
    }
}

/// Classification of each root of a law, in root order.
pub fn classify_law(law: &SuppressionLaw) -> Result<Vec<Classification>> {
    law.roots.iter().map(|r| classify(&law.device.at(r.tau)?, &law.input, &law.output)).collect()
}
