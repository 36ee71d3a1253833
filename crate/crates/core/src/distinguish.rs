//! Detection probabilities with one partially distinguishable photon.
//!
//! The photon entering at `port` carries the internal state
//! cos α |1⟩ + sin α |2⟩ while all others are in |1⟩. The interferometer
//! does not touch the internal state, so the probability splits into an
//! indistinguishable part and a part where the odd photon is traced out.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::amplitude::amp_permanent;
use crate::error::{Error, Result};
use crate::fock::{Interferometer, OccupationVector};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialSource {
    /// Input mode (0-based) of the partially distinguishable photon.
    pub port: usize,
    /// Mixing angle in [0, π/2].
    pub alpha: f64,
}

impl PartialSource {
    pub fn new(port: usize, alpha: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::Domain(format!("mixing angle {alpha} outside [0, pi/2]")));
        }
        Ok(Self { port, alpha })
    }
}

/// P(α) = A cos²α + B sin²α.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialProbability {
    /// |⟨n|m⟩|²
    pub indistinguishable: f64,
    /// Σ_l |U_kl|² |⟨n − 1_l | m − 1_k⟩|²
    pub distinguishable: f64,
    pub alpha: f64,
    pub probability: f64,
}

impl PartialProbability {
    pub fn at(&self, alpha: f64) -> f64 {
        let (s, c) = alpha.sin_cos();
        c * c * self.indistinguishable + s * s * self.distinguishable
    }
}

pub fn partial_probability(
    u: &Interferometer,
    m: &OccupationVector,
    n: &OccupationVector,
    src: PartialSource,
) -> Result<PartialProbability> {
    u.check_configs(m, n)?;
    let k = src.port;
    let reduced_in = (k < m.modes())
        .then(|| m.decrement(k))
        .flatten()
        .ok_or_else(|| Error::Contract(format!("input {m} has no photon at port {}", k + 1)))?;
    let a = amp_permanent(u, m, n)?.value.norm_sqr();
    let mut b = 0.0;
    for l in 0..n.modes() {
        if let Some(reduced_out) = n.decrement(l) {
            b += u.entry(k, l).norm_sqr() * amp_permanent(u, &reduced_in, &reduced_out)?.value.norm_sqr();
        }
    }
    let mut p = PartialProbability { indistinguishable: a, distinguishable: b, alpha: src.alpha, probability: 0.0 };
    p.probability = p.at(src.alpha);
    Ok(p)
}

/// Outcome of testing a suppression law against partial distinguishability.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Survival {
    pub survives: bool,
    pub alpha: f64,
    pub probability: f64,
}

/// Evaluate the law at α = π/4. Since P(α) is a positive combination of
/// cos²α and sin²α, one interior angle decides the whole open range.
pub fn law_survives(u: &Interferometer, m: &OccupationVector, n: &OccupationVector, port: usize) -> Result<Survival> {
    let p0 = partial_probability(u, m, n, PartialSource { port, alpha: 0.0 })?;
    if p0.indistinguishable.sqrt() >= tolerance::ZERO_AMPLITUDE {
        return Err(Error::Contract(format!(
            "{m} -> {n} is not suppressed for indistinguishable photons (|amplitude| = {:.3e})",
            p0.indistinguishable.sqrt()
        )));
    }
    let probability = p0.at(FRAC_PI_4);
    Ok(Survival { survives: probability < tolerance::ZERO_AMPLITUDE, alpha: FRAC_PI_4, probability })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiport::{beamsplitter, BeamsplitterParams};

    #[test]
    fn hom_dip() {
        let u = beamsplitter(BeamsplitterParams { tau: 0.5, phi: 0.0 }).unwrap();
        let m = OccupationVector::from([1, 1]);
        for i in 0..=16 {
            let alpha = i as f64 * std::f64::consts::FRAC_PI_2 / 16.0;
            let p = partial_probability(&u, &m, &m, PartialSource::new(0, alpha).unwrap()).unwrap();
            assert!((p.probability - 0.5 * alpha.sin().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn bs_law_breaks() {
        let u = beamsplitter(BeamsplitterParams { tau: 2.0 / 5.0, phi: 0.0 }).unwrap();
        let s = law_survives(&u, &OccupationVector::from([2, 3]), &OccupationVector::from([4, 1]), 0).unwrap();
        assert!(!s.survives);
        assert!(s.probability > 1e-6);
    }

    #[test]
    fn contracts() {
        let u = Interferometer::identity(2);
        let m = OccupationVector::from([1, 1]);
        assert!(matches!(law_survives(&u, &m, &m, 0), Err(Error::Contract(_))));
        let m = OccupationVector::from([0, 2]);
        assert!(matches!(
            partial_probability(&u, &m, &m, PartialSource { port: 0, alpha: 0.3 }),
            Err(Error::Contract(_))
        ));
        assert!(PartialSource::new(0, 2.0).is_err());
    }
}
