mod common;

use bosonlaw::fock::{expand_submatrix, fisher_yates, permanent_ryser, tables_with_margins};
use bosonlaw::random::haar_unitary;
use bosonlaw::*;
use common::*;
use nalgebra::DMatrix;
use rand::Rng;

#[test]
fn permanent_matches_naive_sum() {
    let mut r = rng(1);
    for n in 1..=7 {
        for _ in 0..5 {
            let a = DMatrix::from_fn(n, n, |_, _| C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
            let want = naive_permanent(&a);
            let scale = want.norm().max(1.0);
            assert!((permanent(&a).unwrap() - want).norm() < 1e-12 * scale, "n = {n}");
            assert!((permanent_ryser(&a).unwrap() - want).norm() < 1e-12 * scale, "n = {n}");
        }
    }
}

#[test]
fn three_methods_match_the_mode_expansion() {
    let mut r = rng(2);
    for _ in 0..150 {
        let modes = r.random_range(2..=4);
        let total = r.random_range(0..=6);
        let u = haar_unitary(modes, &mut r);
        let m = random_occupation(modes, total, &mut r);
        let n = random_occupation(modes, total, &mut r);
        let want = expansion_amplitude(&u, &m, &n);
        for method in Method::ALL {
            let got = amplitude(&u, &m, &n, method).unwrap().value;
            assert!((got - want).norm() < 1e-11, "{method:?} {m} -> {n}: {got} vs {want}");
        }
    }
}

#[test]
fn beamsplitter_amplitudes_in_closed_form() {
    // ⟨N−k, k | N, 0⟩ = √C(N,k) τ^{(N−k)/2} (√ρ e^{iφ})^k on the row-input convention
    for total in 0..=8usize {
        for k in 0..=total {
            let (tau, phi) = (0.3, 0.8);
            let u = beamsplitter(BeamsplitterParams { tau, phi }).unwrap();
            let m = OccupationVector::from([total, 0]);
            let n = OccupationVector::from([total - k, k]);
            let want = C64::from_polar(1.0, -phi * k as f64)
                * (-(1.0 - tau).sqrt()).powi(k as i32)
                * tau.sqrt().powi((total - k) as i32)
                * binomial(total, k).sqrt();
            let got = amp_permanent(&u, &m, &n).unwrap().value;
            assert!((got - want).norm() < 1e-13, "k = {k}: {got} vs {want}");
        }
    }
}

#[test]
fn fisher_yates_is_a_probability_distribution() {
    let mut r = rng(3);
    for _ in 0..40 {
        let total = r.random_range(0..=9);
        let m = random_occupation(r.random_range(1..=4), total, &mut r);
        let n = random_occupation(r.random_range(1..=4), total, &mut r);
        let tables = tables_with_margins(&m, &n).unwrap();
        let sum: f64 = tables.iter().map(|t| fisher_yates(t, &m, &n).unwrap()).sum();
        assert!((sum - 1.0).abs() < 1e-12, "{m} {n}: {sum}");
    }
}

#[test]
fn two_by_two_fisher_yates_is_hypergeometric() {
    let m = OccupationVector::from([4, 3]);
    let n = OccupationVector::from([5, 2]);
    for t in tables_with_margins(&m, &n).unwrap() {
        let k = t.get(0, 0);
        let want = binomial(4, k) * binomial(3, 5 - k) / binomial(7, 5);
        assert!((fisher_yates(&t, &m, &n).unwrap() - want).abs() < 1e-14);
    }
}

#[test]
fn submatrix_row_order_does_not_matter() {
    let mut r = rng(4);
    let u = haar_unitary(3, &mut r);
    let m = OccupationVector::from([2, 1, 2]);
    let n = OccupationVector::from([1, 3, 1]);
    let a = expand_submatrix(&u, &m, &n).unwrap();
    let p = permanent(&a).unwrap();
    let rev = DMatrix::from_fn(5, 5, |i, j| a[(4 - i, (j + 2) % 5)]);
    assert!((permanent(&rev).unwrap() - p).norm() < 1e-12);
}
