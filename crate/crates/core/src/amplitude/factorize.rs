use num_complex::Complex64;

use crate::amplitude::amp_permanent;
use crate::error::{Error, Result};
use crate::fock::{factorial, Interferometer, OccupationVector};

const ZERO_ENTRY: f64 = 1e-15;

fn prefactor(
    u: &Interferometer,
    m: &OccupationVector,
    n: &OccupationVector,
    allow_negative: bool,
) -> Result<Complex64> {
    u.check_configs(m, n)?;
    let tail = n.tail_total() as i64;
    let n_s_fact: f64 = n.counts().iter().skip(1).map(|&c| factorial(c)).product();
    let mut p = Complex64::new((factorial(n[0]) / (n_s_fact * m.factorial_product())).sqrt(), 0.0);
    for k in 0..m.modes() {
        let e = m[k] as i64 - tail;
        let base = u.entry(k, 0);
        if e < 0 && !allow_negative {
            return Err(Error::NotFactorizable(format!(
                "exponent m_{} - |n_S| = {e} is negative for m = {m}, n = {n}",
                k + 1
            )));
        }
        if e != 0 && base.norm() < ZERO_ENTRY {
            return Err(Error::NotFactorizable(format!("U_{}1 vanishes", k + 1)));
        }
        p *= base.powi(e as i32);
    }
    Ok(p)
}

/// √(n₁!/(n_S!·m!)) Π_k U_k1^{m_k − |n_S|}, the factor split off the amplitude.
///
/// `NotFactorizable` if an exponent is negative or a needed U_k1 vanishes.
pub fn suppression_prefactor(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> Result<Complex64> {
    prefactor(u, m, n, false)
}

/// The suppression function f = ⟨n|m⟩ / prefactor. Its zeros are the
/// zeros of the amplitude wherever the prefactor is nonzero.
pub fn suppression_factorize(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> Result<Complex64> {
    let p = suppression_prefactor(u, m, n)?;
    Ok(amp_permanent(u, m, n)?.value / p)
}

/// Same quotient, but negative exponents are allowed (U_k1 must then be
/// nonzero). The result is the same polynomial expression in U entries
/// when m_k < |n_S| for some k.
pub fn generalized_suppression(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> Result<Complex64> {
    let p = prefactor(u, m, n, true)?;
    Ok(amp_permanent(u, m, n)?.value / p)
}
