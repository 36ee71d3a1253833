//! Haar-random unitaries for tests and benchmarks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::fock::Interferometer;

/// QR of a complex Gaussian matrix with the diagonal of R made positive,
/// which gives the Haar measure on U(dim).
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Interferometer {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Interferometer::with_tolerance(q, 1e-10).expect("QR factor is unitary")
}
