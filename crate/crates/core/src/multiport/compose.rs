use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{unitarity_residual, Interferometer};
use crate::multiport::{beamsplitter_matrix_complex, fourier_tritter, phase_fit, real_symmetric_tritter, PhaseSides};
use crate::symmetry::Permutation;

/// One factor of a product.
#[derive(Clone, Debug)]
pub enum Part {
    Permutation(Permutation),
    /// Block-diagonal sum of the listed parts.
    DirectSum(Vec<Part>),
    Interferometer(Interferometer),
    /// A raw matrix, not necessarily unitary.
    Matrix(DMatrix<Complex64>),
}

impl Part {
    pub fn matrix(&self) -> DMatrix<Complex64> {
        match self {
            Part::Permutation(p) => p.matrix(),
            Part::DirectSum(parts) => parts.iter().fold(DMatrix::zeros(0, 0), |acc, p| direct_sum(&acc, &p.matrix())),
            Part::Interferometer(u) => u.matrix().clone(),
            Part::Matrix(m) => m.clone(),
        }
    }
}

impl From<Interferometer> for Part {
    fn from(u: Interferometer) -> Self {
        Part::Interferometer(u)
    }
}

impl From<Permutation> for Part {
    fn from(p: Permutation) -> Self {
        Part::Permutation(p)
    }
}

/// Product of parts with its unitarity residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Composite {
    pub matrix: DMatrix<Complex64>,
    pub unitarity_residual: f64,
}

impl Composite {
    /// Certify as an interferometer (fails if the residual exceeds 1e−12).
    pub fn into_interferometer(self) -> Result<Interferometer> {
        Interferometer::new(self.matrix)
    }
}

/// a ⊕ b.
pub fn direct_sum(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = DMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// Matrix product of `parts` in the listed order.
pub fn compose(parts: &[Part]) -> Result<Composite> {
    let mut iter = parts.iter();
    let first = iter.next().ok_or_else(|| Error::Contract("nothing to compose".into()))?;
    let mut acc = first.matrix();
    if acc.nrows() != acc.ncols() {
        return Err(Error::NotSquare { rows: acc.nrows(), cols: acc.ncols() });
    }
    for p in iter {
        let m = p.matrix();
        if m.nrows() != acc.ncols() || m.ncols() != m.nrows() {
            return Err(Error::DimensionMismatch { expected: acc.ncols(), found: m.nrows() });
        }
        acc *= m;
    }
    let unitarity_residual = unitarity_residual(&acc);
    Ok(Composite { matrix: acc, unitarity_residual })
}

/// τₛ = (√3 + i)/4.
pub fn tau_s() -> Complex64 {
    Complex64::new(3f64.sqrt() / 4.0, 0.25)
}

/// The transposition construction P₁₃·(1 ⊕ B(τₛ))·Tₛ† next to T̃ₛ.
#[derive(Clone, Debug, PartialEq)]
pub struct TranspositionCheck {
    pub composite: Composite,
    /// Frobenius distance to T̃ₛ.
    pub residual: f64,
    /// Distance after fitting diagonal phases on both sides.
    pub phase_residual: f64,
}

/// Evaluate the construction with principal square roots and φ = 0. B of a
/// complex τ is not unitary, so the result is reported rather than certified.
pub fn transposition_construction() -> TranspositionCheck {
    let one = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    let parts = [
        Part::Permutation(Permutation::from_cycles(3, &[&[1, 3]]).expect("valid cycle")),
        Part::DirectSum(vec![Part::Matrix(one), Part::Matrix(beamsplitter_matrix_complex(tau_s(), 0.0))]),
        Part::Interferometer(fourier_tritter().adjoint()),
    ];
    let composite = compose(&parts).expect("conformable 3x3 parts");
    let target = real_symmetric_tritter();
    let residual = (&composite.matrix - target.matrix()).norm();
    let phase_residual = phase_fit(target.matrix(), &composite.matrix, PhaseSides::Both).residual;
    TranspositionCheck { composite, residual, phase_residual }
}
