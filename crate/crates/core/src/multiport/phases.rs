use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which diagonal phase matrices may be factored out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseSides {
    /// a ≈ b·diag(y): phases on output columns only.
    Output,
    /// a ≈ diag(x)·b·diag(y).
    Both,
}

/// Best phases found and the Frobenius residual ‖a − diag(x)·b·diag(y)‖.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseFit {
    pub residual: f64,
    pub input_phases: Vec<Complex64>,
    pub output_phases: Vec<Complex64>,
}

fn unit(z: Complex64) -> Complex64 {
    let n = z.norm();
    if n > 0.0 {
        z / n
    } else {
        Complex64::new(1.0, 0.0)
    }
}

fn residual(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, x: &[Complex64], y: &[Complex64]) -> f64 {
    let mut s = 0.0;
    for k in 0..a.nrows() {
        for l in 0..a.ncols() {
            s += (a[(k, l)] - x[k] * b[(k, l)] * y[l]).norm_sqr();
        }
    }
    s.sqrt()
}

/// Fit diagonal phases carrying `b` onto `a`.
///
/// With [`PhaseSides::Output`] each column phase is the exact least-squares
/// optimum. With [`PhaseSides::Both`] the row and column phases are
/// alternately optimized from an anchor-based start, which converges to the
/// exact answer whenever one exists.
pub fn phase_fit(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, sides: PhaseSides) -> PhaseFit {
    assert_eq!(a.shape(), b.shape(), "phase_fit needs equally shaped matrices");
    let (rows, cols) = a.shape();
    let one = Complex64::new(1.0, 0.0);
    let mut x = vec![one; rows];
    let col_phases = |x: &[Complex64]| -> Vec<Complex64> {
        (0..cols).map(|l| unit((0..rows).map(|k| (x[k] * b[(k, l)]).conj() * a[(k, l)]).sum())).collect()
    };
    let mut y = col_phases(&x);
    if sides == PhaseSides::Both && rows > 0 && cols > 0 {
        let (mut k0, mut best) = (0, -1.0);
        for k in 0..rows {
            for l in 0..cols {
                if b[(k, l)].norm() > best {
                    best = b[(k, l)].norm();
                    k0 = k;
                }
            }
        }
        for l in 0..cols {
            if b[(k0, l)].norm() > 1e-8 {
                y[l] = unit(a[(k0, l)] / b[(k0, l)]);
            }
        }
        for _ in 0..200 {
            for k in 0..rows {
                x[k] = unit((0..cols).map(|l| (b[(k, l)] * y[l]).conj() * a[(k, l)]).sum());
            }
            y = col_phases(&x);
        }
    }
    PhaseFit { residual: residual(a, b, &x, &y), input_phases: x, output_phases: y }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_known_phases() {
        let b = DMatrix::from_fn(3, 3, |i, j| Complex64::new(1.0 + i as f64, (j as f64) - 0.5 * i as f64));
        let x = [0.3, -1.1, 2.0].map(|t| Complex64::from_polar(1.0, t));
        let y = [1.4, 0.2, -0.7].map(|t| Complex64::from_polar(1.0, t));
        let a = DMatrix::from_fn(3, 3, |i, j| x[i] * b[(i, j)] * y[j]);
        assert!(phase_fit(&a, &b, PhaseSides::Both).residual < 1e-12);
        assert!(phase_fit(&a, &b, PhaseSides::Output).residual > 1e-3);
        let a = DMatrix::from_fn(3, 3, |i, j| b[(i, j)] * y[j]);
        let fit = phase_fit(&a, &b, PhaseSides::Output);
        assert!(fit.residual < 1e-12);
        for (got, want) in fit.output_phases.iter().zip(&y) {
            assert!((got - want).norm() < 1e-12);
        }
    }
}
