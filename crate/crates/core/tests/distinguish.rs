mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use bosonlaw::multiport::TritterFamily;
use bosonlaw::random::haar_unitary;
use bosonlaw::*;
use rand::Rng;

fn occ<const N: usize>(v: [usize; N]) -> OccupationVector {
    OccupationVector::from(v)
}

#[test]
fn indistinguishable_limit_is_the_amplitude() {
    let mut r = common::rng(9);
    for _ in 0..50 {
        let modes = r.random_range(2..=4);
        let total = r.random_range(1..=6);
        let u = haar_unitary(modes, &mut r);
        let m = common::random_occupation(modes, total, &mut r);
        let n = common::random_occupation(modes, total, &mut r);
        let port = (0..modes).find(|&k| m[k] > 0).unwrap();
        let p = partial_probability(&u, &m, &n, PartialSource::new(port, 0.0).unwrap()).unwrap();
        assert!((p.probability - amp_permanent(&u, &m, &n).unwrap().value.norm_sqr()).abs() < 1e-12);
    }
}

#[test]
fn probability_is_a_two_term_combination() {
    let mut r = common::rng(10);
    for _ in 0..30 {
        let u = haar_unitary(3, &mut r);
        let m = common::random_occupation(3, 4, &mut r);
        let n = common::random_occupation(3, 4, &mut r);
        let port = (0..3).find(|&k| m[k] > 0).unwrap();
        let at =
            |alpha: f64| partial_probability(&u, &m, &n, PartialSource::new(port, alpha).unwrap()).unwrap().probability;
        // fit A, B from α = 0 and π/2, check an interior angle
        let (a, b) = (at(0.0), at(FRAC_PI_2));
        assert!(a >= 0.0 && b >= 0.0);
        let alpha = 0.61;
        assert!((at(alpha) - (a * alpha.cos().powi(2) + b * alpha.sin().powi(2))).abs() < 1e-10);
        for i in 0..=8 {
            let p = at(i as f64 * FRAC_PI_2 / 8.0);
            assert!((-1e-12..=1.0 + 1e-9).contains(&p));
        }
    }
}

#[test]
fn beamsplitter_law_breaks() {
    for m1 in 1..=5usize {
        for m2 in 1..=5usize {
            let tau = m1 as f64 / (m1 + m2) as f64;
            let u = beamsplitter(BeamsplitterParams { tau, phi: 0.0 }).unwrap();
            let (m, n) = (occ([m1, m2]), occ([m1 + m2 - 1, 1]));
            let s = law_survives(&u, &m, &n, 0).unwrap();
            assert!(!s.survives && s.probability > 1e-6, "({m1},{m2}): {}", s.probability);
        }
    }
}

#[test]
fn tritter_law_breaks_and_the_reduced_conditions_have_no_common_root() {
    for n1 in 2..=8usize {
        let tau = 3.0 * n1 as f64 / (4.0 * (n1 as f64 + 1.0));
        let u = tritter(TritterParams::new(TritterFamily::T1, tau, FRAC_PI_2).unwrap()).unwrap();
        let m = occ([n1, 1, 1]);
        let s = law_survives(&u, &m, &m, 2).unwrap();
        assert!(!s.survives, "n1 = {n1}");
        // the three reduced amplitudes ⟨m − 1_l | m − 1_3⟩ cannot all vanish here
        let reduced = m.decrement(2).unwrap();
        let any_nonzero =
            (0..3).filter_map(|l| m.decrement(l)).any(|out| amp_permanent(&u, &reduced, &out).unwrap().norm() > 1e-6);
        assert!(any_nonzero, "n1 = {n1}");
    }
}

#[test]
fn hom_dip_profile() {
    let u = beamsplitter(BeamsplitterParams { tau: 0.5, phi: 0.0 }).unwrap();
    let m = occ([1, 1]);
    for i in 0..64 {
        let alpha = i as f64 * FRAC_PI_2 / 63.0;
        let p = partial_probability(&u, &m, &m, PartialSource::new(0, alpha).unwrap()).unwrap();
        assert!((p.probability - alpha.sin().powi(2) / 2.0).abs() < 1e-10);
    }
    let p = partial_probability(&u, &m, &m, PartialSource::new(0, FRAC_PI_4).unwrap()).unwrap();
    assert!((p.probability - 0.25).abs() < 1e-12);
}
