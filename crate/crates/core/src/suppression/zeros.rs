use serde::{Deserialize, Serialize};

use crate::amplitude::amp_recurrence;
use crate::error::{Error, Result};
use crate::fock::OccupationVector;
use crate::multiport::{beamsplitter, BeamsplitterParams};
use crate::suppression::bisect;
use crate::tolerance;

/// Zeros in τ of a beamsplitter amplitude ⟨n|m⟩ at φ = 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroReport {
    pub m: OccupationVector,
    pub n: OccupationVector,
    /// Zeros in (0, 1), ascending.
    pub zero_locations: Vec<f64>,
    pub count: usize,
    /// Amplitude at τ = 0 and τ = 1.
    pub endpoint_values: (f64, f64),
    /// Widest final bisection bracket.
    pub bracket_width: f64,
}

fn bs_amplitude(m: &OccupationVector, n: &OccupationVector, tau: f64) -> f64 {
    let u = beamsplitter(BeamsplitterParams { tau, phi: 0.0 }).expect("tau in [0, 1]");
    // the φ = 0 matrix is real, so is the amplitude
    amp_recurrence(&u, m, n).expect("configurations validated").value.re
}

fn check_two_mode(m: &OccupationVector, n: &OccupationVector) -> Result<()> {
    for occ in [m, n] {
        if occ.modes() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: occ.modes() });
        }
    }
    if m.total() != n.total() {
        return Err(Error::PhotonMismatch { input: m.total(), output: n.total() });
    }
    Ok(())
}

/// Count the zeros of ⟨n|m⟩ on τ ∈ (0, 1) by sign changes on a uniform grid,
/// each refined by bisection to [`tolerance::BISECTION`].
pub fn bs_zero_report(m: &OccupationVector, n: &OccupationVector, grid_steps: usize) -> Result<ZeroReport> {
    check_two_mode(m, n)?;
    if grid_steps < 1000 {
        return Err(Error::Domain(format!("zero scan needs at least 1000 grid steps, got {grid_steps}")));
    }
    let f = |tau: f64| bs_amplitude(m, n, tau);
    let h = 1.0 / grid_steps as f64;
    let values: Vec<f64> = (0..=grid_steps).map(|i| f(i as f64 * h)).collect();
    let mut zeros = Vec::new();
    let mut bracket_width: f64 = 0.0;
    // interior nodes only: the endpoints may be (trivial) zeros themselves
    let mut prev = (1, values[1]);
    for i in 2..grid_steps {
        let v = values[i];
        if v == 0.0 {
            zeros.push(i as f64 * h);
            prev = (i + 1, values[i + 1]);
            continue;
        }
        if prev.1 != 0.0 && prev.1.signum() != v.signum() {
            let (a, b) = bisect(f, prev.0 as f64 * h, i as f64 * h, tolerance::BISECTION);
            bracket_width = bracket_width.max(b - a);
            zeros.push(0.5 * (a + b));
        }
        prev = (i, v);
    }
    zeros.retain(|&t| !tolerance::is_trivial_tau(t));
    Ok(ZeroReport {
        m: m.clone(),
        n: n.clone(),
        count: zeros.len(),
        zero_locations: zeros,
        endpoint_values: (values[0], values[grid_steps]),
        bracket_width,
    })
}

/// Two consecutive zeros of one list with the wrong number of zeros of the
/// other list between them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterlacingWitness {
    /// 0 if the pair comes from the first list, 1 from the second.
    pub list: usize,
    pub left: f64,
    pub right: f64,
    pub between: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interlacing {
    pub interlaced: bool,
    pub zeros_a: Vec<f64>,
    pub zeros_b: Vec<f64>,
    pub witness: Option<InterlacingWitness>,
}

/// Each gap between consecutive zeros of one list holds exactly one zero
/// of the other, in both directions.
pub fn interlaced(a: &[f64], b: &[f64]) -> std::result::Result<(), InterlacingWitness> {
    for (list, (xs, ys)) in [(a, b), (b, a)].into_iter().enumerate() {
        for w in xs.windows(2) {
            let between = ys.iter().filter(|&&y| y > w[0] && y < w[1]).count();
            if between != 1 {
                return Err(InterlacingWitness { list, left: w[0], right: w[1], between });
            }
        }
    }
    Ok(())
}

/// Interlacing of the zeros of ⟨n|m⟩ and ⟨n′|m⟩ where n′ moves one boson.
pub fn check_interlacing(
    m: &OccupationVector,
    n: &OccupationVector,
    n_shifted: &OccupationVector,
) -> Result<Interlacing> {
    check_interlacing_with_steps(m, n, n_shifted, 2000)
}

pub fn check_interlacing_with_steps(
    m: &OccupationVector,
    n: &OccupationVector,
    n_shifted: &OccupationVector,
    grid_steps: usize,
) -> Result<Interlacing> {
    check_two_mode(m, n)?;
    check_two_mode(m, n_shifted)?;
    if n[0].abs_diff(n_shifted[0]) != 1 {
        return Err(Error::Contract(format!("{n} and {n_shifted} do not differ by moving one boson")));
    }
    let a = bs_zero_report(m, n, grid_steps)?.zero_locations;
    let b = bs_zero_report(m, n_shifted, grid_steps)?.zero_locations;
    let witness = interlaced(&a, &b).err();
    Ok(Interlacing { interlaced: witness.is_none(), zeros_a: a, zeros_b: b, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occ(a: usize, b: usize) -> OccupationVector {
        OccupationVector::from([a, b])
    }

    #[test]
    fn hom_zero() {
        let r = bs_zero_report(&occ(1, 1), &occ(1, 1), 1000).unwrap();
        assert_eq!(r.count, 1);
        assert!((r.zero_locations[0] - 0.5).abs() < 1e-12);
        assert!(r.bracket_width <= 1e-12);
    }

    #[test]
    fn single_photon_has_only_trivial_zero() {
        let r = bs_zero_report(&occ(1, 0), &occ(1, 0), 1000).unwrap();
        assert_eq!(r.count, 0);
        assert_eq!(r.endpoint_values.0, 0.0);
        assert!((r.endpoint_values.1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vacuous_interlacing() {
        let i = check_interlacing(&occ(1, 1), &occ(1, 1), &occ(2, 0)).unwrap();
        assert!(i.interlaced);
        assert_eq!(i.zeros_b.len(), 0);
    }

    #[test]
    fn unrelated_outputs_are_rejected() {
        assert!(matches!(check_interlacing(&occ(2, 2), &occ(2, 2), &occ(4, 0)), Err(Error::Contract(_))));
        assert!(bs_zero_report(&occ(2, 2), &occ(2, 2), 10).is_err());
    }

    #[test]
    fn interlacing_witness() {
        assert!(interlaced(&[0.2, 0.6], &[0.4]).is_ok());
        let w = interlaced(&[0.2, 0.6], &[0.7]).unwrap_err();
        assert_eq!((w.list, w.between), (0, 0));
    }
}
