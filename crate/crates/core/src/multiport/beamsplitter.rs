use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::Interferometer;

/// Transmissivity τ ∈ [0, 1] and reflection phase φ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeamsplitterParams {
    pub tau: f64,
    pub phi: f64,
}

impl BeamsplitterParams {
    pub fn new(tau: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::Domain(format!("beamsplitter transmissivity {tau} outside [0, 1]")));
        }
        if !phi.is_finite() {
            return Err(Error::Domain(format!("beamsplitter phase {phi} is not finite")));
        }
        Ok(Self { tau, phi })
    }

    pub fn rho(&self) -> f64 {
        1.0 - self.tau
    }
}

/// [[√τ, −√ρ e^{−iφ}], [√ρ e^{iφ}, √τ]].
pub fn beamsplitter(p: BeamsplitterParams) -> Result<Interferometer> {
    let p = BeamsplitterParams::new(p.tau, p.phi)?;
    Interferometer::new(beamsplitter_matrix_complex(Complex64::new(p.tau, 0.0), p.phi))
}

/// The same formula with a complex τ and principal square roots. The result
/// is unitary only for real τ ∈ [0, 1].
pub fn beamsplitter_matrix_complex(tau: Complex64, phi: f64) -> DMatrix<Complex64> {
    let t = tau.sqrt();
    let r = (Complex64::new(1.0, 0.0) - tau).sqrt();
    let e = Complex64::from_polar(1.0, phi);
    DMatrix::from_row_slice(2, 2, &[t, -r * e.conj(), r * e, t])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_values() {
        let id = beamsplitter(BeamsplitterParams { tau: 1.0, phi: 0.7 }).unwrap();
        assert!((id.matrix() - DMatrix::identity(2, 2)).norm() < 1e-15);
        let b = beamsplitter(BeamsplitterParams { tau: 0.5, phi: 0.0 }).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = DMatrix::from_row_slice(2, 2, &[h, -h, h, h]).map(|x| Complex64::new(x, 0.0));
        assert!((b.matrix() - want).norm() < 1e-15);
        let b = beamsplitter(BeamsplitterParams { tau: 0.3, phi: std::f64::consts::FRAC_PI_2 }).unwrap();
        assert!(b.unitarity_residual() < 1e-14);
    }

    #[test]
    fn real_at_zero_phase() {
        for i in 0..=10 {
            let b = beamsplitter(BeamsplitterParams { tau: i as f64 / 10.0, phi: 0.0 }).unwrap();
            assert!(b.matrix().iter().all(|z| z.im == 0.0));
        }
    }

    #[test]
    fn out_of_range_tau() {
        assert!(matches!(BeamsplitterParams::new(1.2, 0.0), Err(Error::Domain(_))));
        assert!(beamsplitter(BeamsplitterParams { tau: -0.1, phi: 0.0 }).is_err());
    }
}
