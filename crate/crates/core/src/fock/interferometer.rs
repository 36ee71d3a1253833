use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::OccupationVector;
use crate::tolerance;

/// An M×M matrix certified unitary at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Interferometer {
    matrix: DMatrix<Complex64>,
}

/// max_ij |(UU† − I)_ij|; `f64::INFINITY` for non-square input.
pub fn unitarity_residual(u: &DMatrix<Complex64>) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let g = u * u.adjoint();
    let n = u.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

impl Interferometer {
    /// Checks unitarity to 1e−12.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        Self::with_tolerance(matrix, tolerance::UNITARITY)
    }

    pub fn with_tolerance(matrix: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
        }
        if matrix.nrows() == 0 {
            return Err(Error::Domain("an interferometer needs at least one mode".into()));
        }
        let residual = unitarity_residual(&matrix);
        if residual.is_nan() || residual > tol {
            return Err(Error::NotUnitary { residual, tolerance: tol });
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: DMatrix::identity(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn entry(&self, k: usize, l: usize) -> Complex64 {
        self.matrix[(k, l)]
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.matrix)
    }

    /// U†, also unitary.
    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint() }
    }

    /// Product `self · other`.
    pub fn then(&self, other: &Interferometer) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Self::new(&self.matrix * &other.matrix)
    }

    /// Check that `m` and `n` fit this device and carry the same photon number.
    pub fn check_configs(&self, m: &OccupationVector, n: &OccupationVector) -> Result<usize> {
        if m.modes() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: m.modes() });
        }
        if n.modes() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: n.modes() });
        }
        if m.total() != n.total() {
            return Err(Error::PhotonMismatch { input: m.total(), output: n.total() });
        }
        Ok(m.total())
    }
}

/// The N×N matrix whose rows repeat row k of U m_k times and whose columns
/// repeat column l n_l times. Rows and columns appear in mode order.
pub fn expand_submatrix(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> Result<DMatrix<Complex64>> {
    let total = u.check_configs(m, n)?;
    let rows: Vec<usize> = repeat_indices(m);
    let cols: Vec<usize> = repeat_indices(n);
    Ok(DMatrix::from_fn(total, total, |i, j| u.entry(rows[i], cols[j])))
}

fn repeat_indices(v: &OccupationVector) -> Vec<usize> {
    v.counts().iter().enumerate().flat_map(|(k, &c)| std::iter::repeat(k).take(c)).collect()
}
