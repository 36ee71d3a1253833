use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::amplitude::{Amplitude, Method};
use crate::error::{Error, Result};
use crate::fock::{factorial, Interferometer, OccupationVector};

/// Coefficients of reduced inputs m′ left after removing output photons.
///
/// Removing one photon from output mode l maps the coefficient c of m′ onto
/// m′ − 1_k with weight c·√m′_k·U_kl. Identical reduced inputs share one
/// entry, so the map stays polynomial in N for fixed M.
#[derive(Clone, Debug)]
pub struct RecurrenceState {
    coefficients: BTreeMap<OccupationVector, Complex64>,
    /// (output mode, photons still to remove), processed from the back.
    pending_outputs: Vec<(usize, usize)>,
    kept_mode: usize,
    kept_photons: usize,
    normalization: f64,
}

impl RecurrenceState {
    /// Start from {m: 1}; `order` lists the output modes to eliminate, first
    /// to last. The one mode absent from `order` is closed in form at the end.
    pub fn new(u: &Interferometer, m: &OccupationVector, n: &OccupationVector, order: &[usize]) -> Result<Self> {
        u.check_configs(m, n)?;
        let dim = u.dim();
        let mut seen = vec![false; dim];
        for &l in order {
            if l >= dim || seen[l] {
                return Err(Error::Contract(format!(
                    "elimination order {order:?} is not a set of distinct modes below {dim}"
                )));
            }
            seen[l] = true;
        }
        let kept: Vec<usize> = (0..dim).filter(|&l| !seen[l]).collect();
        if kept.len() != 1 {
            return Err(Error::Contract(format!("elimination order {order:?} must leave exactly one output mode")));
        }
        let mut coefficients = BTreeMap::new();
        coefficients.insert(m.clone(), Complex64::new(1.0, 0.0));
        let pending_outputs = order.iter().rev().filter(|&&l| n[l] > 0).map(|&l| (l, n[l])).collect();
        let normalization = order.iter().map(|&l| factorial(n[l]).sqrt().recip()).product();
        Ok(Self { coefficients, pending_outputs, kept_mode: kept[0], kept_photons: n[kept[0]], normalization })
    }

    pub fn coefficients(&self) -> &BTreeMap<OccupationVector, Complex64> {
        &self.coefficients
    }

    pub fn pending_outputs(&self) -> &[(usize, usize)] {
        &self.pending_outputs
    }

    /// Remove one photon from the next pending output mode. Returns false
    /// once nothing is pending.
    pub fn eliminate_one(&mut self, u: &Interferometer) -> bool {
        let Some(last) = self.pending_outputs.last_mut() else {
            return false;
        };
        let l = last.0;
        last.1 -= 1;
        if last.1 == 0 {
            self.pending_outputs.pop();
        }
        let mut next: BTreeMap<OccupationVector, Complex64> = BTreeMap::new();
        for (key, c) in &self.coefficients {
            for k in 0..key.modes() {
                if let Some(reduced) = key.decrement(k) {
                    let w = *c * (key[k] as f64).sqrt() * u.entry(k, l);
                    *next.entry(reduced).or_insert(Complex64::new(0.0, 0.0)) += w;
                }
            }
        }
        self.coefficients = next;
        true
    }

    /// Close with ⟨n_kept·1_kept | m′⟩ = √(n_kept!/m′!) Π_k U_{k,kept}^{m′_k}.
    pub fn finish(&self, u: &Interferometer) -> Result<Complex64> {
        if !self.pending_outputs.is_empty() {
            return Err(Error::Contract("recurrence finished with photons still pending".into()));
        }
        let lead = factorial(self.kept_photons).sqrt();
        let mut sum = Complex64::new(0.0, 0.0);
        for (key, c) in &self.coefficients {
            debug_assert_eq!(key.total(), self.kept_photons);
            let mut term = *c * lead / key.factorial_product().sqrt();
            for (k, &e) in key.counts().iter().enumerate() {
                if e > 0 {
                    term *= u.entry(k, self.kept_mode).powu(e as u32);
                }
            }
            sum += term;
        }
        Ok(sum * self.normalization)
    }
}

/// Recurrence amplitude with an explicit elimination order (any permutation
/// of all output modes but one).
pub fn amp_recurrence_with_order(
    u: &Interferometer,
    m: &OccupationVector,
    n: &OccupationVector,
    order: &[usize],
) -> Result<Amplitude> {
    let mut state = RecurrenceState::new(u, m, n, order)?;
    while state.eliminate_one(u) {}
    let value = state.finish(u)?;
    Ok(Amplitude::new(value, Method::Recurrence))
}
