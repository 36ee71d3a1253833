mod common;

use bosonlaw::amplitude::amp_recurrence_with_order;
use bosonlaw::fock::{expand_submatrix, fisher_yates, tables_with_margins};
use bosonlaw::random::haar_unitary;
use bosonlaw::symmetry::Permutation;
use bosonlaw::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn occupation(modes: usize, max_total: usize) -> impl Strategy<Value = OccupationVector> {
    prop::collection::vec(0..=max_total, modes)
        .prop_filter("total bounded", move |v| v.iter().sum::<usize>() <= max_total)
        .prop_map(OccupationVector::new)
}

/// Haar unitary, an input and an output with the same photon count.
fn case(max_total: usize) -> impl Strategy<Value = (Interferometer, OccupationVector, OccupationVector, u64)> {
    (2usize..=4, any::<u64>()).prop_flat_map(move |(modes, seed)| {
        occupation(modes, max_total).prop_flat_map(move |m| {
            let total = m.total();
            prop::sample::select(OccupationVector::all_with_total(modes, total)).prop_map(move |n| {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                (haar_unitary(modes, &mut r), m.clone(), n, seed)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn methods_agree((u, m, n, _) in case(7)) {
        let p = amp_permanent(&u, &m, &n).unwrap().value;
        let t = amp_tables(&u, &m, &n).unwrap().value;
        let r = amp_recurrence(&u, &m, &n).unwrap().value;
        prop_assert!((p - t).norm() < 1e-10);
        prop_assert!((p - r).norm() < 1e-10);
        prop_assert!(p.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn elimination_order_is_irrelevant((u, m, n, seed) in case(6)) {
        let modes = u.dim();
        let mut order: Vec<usize> = (0..modes).collect();
        // a seed-chosen rotation: any mode may be the one left at the end
        order.rotate_left(seed as usize % modes);
        order.pop();
        let a = amp_recurrence_with_order(&u, &m, &n, &order).unwrap().value;
        let b = amp_recurrence(&u, &m, &n).unwrap().value;
        prop_assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn transition_probabilities_sum_to_one((u, m, _, _) in case(5)) {
        let total: f64 = OccupationVector::all_with_total(u.dim(), m.total())
            .iter()
            .map(|n| amp_permanent(&u, &m, n).unwrap().value.norm_sqr())
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn diagonal_phases_factor_out((u, m, n, seed) in case(6)) {
        let dim = u.dim();
        let a: Vec<C64> = (0..dim).map(|k| C64::from_polar(1.0, 0.37 * (k as f64 + seed as f64 % 5.0))).collect();
        let b: Vec<C64> = (0..dim).map(|l| C64::from_polar(1.0, -1.1 * l as f64 + 0.2)).collect();
        let v = Interferometer::new(DMatrix::from_fn(dim, dim, |k, l| a[k] * u.entry(k, l) * b[l])).unwrap();
        let mut phase = C64::new(1.0, 0.0);
        for k in 0..dim {
            phase *= a[k].powu(m[k] as u32) * b[k].powu(n[k] as u32);
        }
        let want = amp_permanent(&u, &m, &n).unwrap().value * phase;
        prop_assert!((amp_recurrence(&v, &m, &n).unwrap().value - want).norm() < 1e-10);
    }

    #[test]
    fn relabelling_modes_permutes_configurations((u, m, n, seed) in case(6)) {
        let dim = u.dim();
        let all = Permutation::all(dim);
        let s = &all[seed as usize % all.len()];
        let t = &all[(seed / 7) as usize % all.len()];
        // (P_s U P_tᵀ) acts on relabelled inputs and outputs
        let v = Interferometer::new(s.matrix() * u.matrix() * t.matrix().transpose()).unwrap();
        let a = amp_permanent(&u, &m, &n).unwrap().value;
        let b = amp_permanent(&v, &s.act(&m), &t.act(&n)).unwrap().value;
        prop_assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn permanent_is_invariant_under_repetition_order((u, m, n, seed) in case(6)) {
        let a = expand_submatrix(&u, &m, &n).unwrap();
        let k = a.nrows();
        prop_assume!(k > 1);
        let shift = seed as usize % k;
        let b = DMatrix::from_fn(k, k, |i, j| a[((i + shift) % k, (k - 1 - j))]);
        prop_assert!((permanent(&a).unwrap() - permanent(&b).unwrap()).norm() < 1e-10 * permanent(&a).unwrap().norm().max(1.0));
    }

    #[test]
    fn fisher_yates_sums_to_one(m in occupation(3, 8), seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = common::random_occupation(4, m.total(), &mut r);
        let sum: f64 = tables_with_margins(&m, &n).unwrap().iter().map(|t| fisher_yates(t, &m, &n).unwrap()).sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn occupation_round_trips_through_text(m in occupation(4, 12)) {
        let parsed: OccupationVector = m.to_string().parse().unwrap();
        prop_assert_eq!(parsed, m);
    }

    #[test]
    fn haar_samples_compose_to_unitaries(seed in any::<u64>(), dim in 1usize..6) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let a = haar_unitary(dim, &mut r);
        let b = haar_unitary(dim, &mut r);
        prop_assert!(a.then(&b).unwrap().unitarity_residual() < 1e-12);
    }
}
