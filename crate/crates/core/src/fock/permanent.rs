use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

fn check(a: &DMatrix<Complex64>) -> Result<usize> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::NotSquare { rows: n, cols: a.ncols() });
    }
    if n >= 63 {
        return Err(Error::Domain(format!("permanent of a {n}x{n} matrix is out of reach")));
    }
    Ok(n)
}

/// Matrix permanent by Glynn's formula with Gray-code sign order,
/// O(2ⁿ⁻¹·n). The permanent of the 0×0 matrix is 1.
///
/// per(A) = 2^{1−n} Σ_δ (Π_j δ_j) Π_i Σ_j δ_j a_ij over δ ∈ {±1}ⁿ with δ₁ = 1.
/// The terms are far smaller than Ryser's subset sums on the repeated-row
/// submatrices that transition amplitudes produce, so cancellation costs
/// much less precision; see [`permanent_ryser`].
pub fn permanent(a: &DMatrix<Complex64>) -> Result<Complex64> {
    let n = check(a)?;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut row_sums: Vec<Complex64> = (0..n).map(|i| a.row(i).iter().sum()).collect();
    let mut delta = vec![1.0f64; n];
    let mut total: Complex64 = row_sums.iter().product();
    let mut sign = 1.0;
    for step in 1u64..(1u64 << (n - 1)) {
        // flip δ_{j+1}; column 0 keeps δ = +1
        let j = step.trailing_zeros() as usize + 1;
        delta[j] = -delta[j];
        let d = 2.0 * delta[j];
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s += a[(i, j)] * d;
        }
        sign = -sign;
        let prod: Complex64 = row_sums.iter().product();
        total += prod * sign;
    }
    Ok(total / (2f64).powi(n as i32 - 1))
}

/// Matrix permanent by Ryser's formula with Gray-code subset order,
/// O(2ⁿ·n). Loses several digits to cancellation once the matrix has many
/// repeated rows; kept as a cross-check.
pub fn permanent_ryser(a: &DMatrix<Complex64>) -> Result<Complex64> {
    let n = check(a)?;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }

    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut subset: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let j = step.trailing_zeros() as usize;
        let bit = 1u64 << j;
        subset ^= bit;
        if subset & bit != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += a[(i, j)];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= a[(i, j)];
            }
        }
        let prod: Complex64 = row_sums.iter().product();
        if subset.count_ones() % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(if n % 2 == 0 { total } else { -total })
}
