mod common;

use bosonlaw::multiport::{fourier_tritter, real_symmetric_tritter, TritterFamily};
use bosonlaw::random::haar_unitary;
use bosonlaw::suppression::{classify_law, Device, InputFamily, Provenance, SuppressionLaw};
use bosonlaw::symmetry::*;
use bosonlaw::*;

fn occ<const N: usize>(v: [usize; N]) -> OccupationVector {
    OccupationVector::from(v)
}

#[test]
fn table_b_rows_factorize_and_predict() {
    for row in table_b_rows() {
        let rep = row.check(5).unwrap();
        assert!(rep.stated_lambda_factorizes, "{}", rep.label);
        assert!(rep.solver_factorizes, "{}", rep.label);
        assert!(rep.max_residual < 1e-9, "{}", rep.label);
        assert!(rep.predictions_hold(), "{}", rep.label);
        // the principle predicts a zero for every claimed configuration it covers
        assert!(rep.instances.iter().any(|i| i.predicted), "{}", rep.label);
    }
}

#[test]
fn any_n1_claims_on_rows_b1_and_b3_fail_at_m_two() {
    for row in table_b_rows() {
        let rep = row.check(5).unwrap();
        let failed = rep.failed_claims();
        match rep.label.as_str() {
            "b1" | "b3" => {
                assert!(!failed.is_empty());
                for f in failed {
                    assert_eq!((f.input.as_str(), f.output.as_str()), ("(2,2,2)", "(4,1,1)"));
                    assert!(!f.predicted);
                }
            }
            _ => assert!(failed.is_empty(), "{}", rep.label),
        }
    }
}

#[test]
fn eigenvalue_rule_on_the_fourier_tritter() {
    let s = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
    let pair = solve_phase_factorization(&fourier_tritter(), &s, Side::Input).unwrap();
    for m in 1..=4 {
        let input = occ([m, m, m]);
        for n in OccupationVector::all_with_total(3, 3 * m) {
            let zero = amp_permanent(&fourier_tritter(), &input, &n).unwrap().norm() < 1e-10;
            if predict_suppressed(&pair, &n) {
                assert!(zero, "{input} -> {n}");
            }
        }
    }
}

#[test]
fn generic_devices_have_no_symmetry() {
    let mut r = common::rng(5);
    let u = haar_unitary(3, &mut r);
    for s in Permutation::all(3).iter().filter(|s| !s.is_identity()) {
        assert!(solve_phase_factorization(&u, s, Side::Input).is_none());
        assert!(solve_phase_factorization(&u, s, Side::Output).is_none());
    }
    assert!(symmetry_witnesses(&u, &occ([1, 1, 1]), &occ([1, 1, 1])).unwrap().is_empty());
}

#[test]
fn classification_examples() {
    let bs = beamsplitter(BeamsplitterParams { tau: 0.5, phi: 0.0 }).unwrap();
    assert!(classify(&bs, &occ([1, 1]), &occ([1, 1])).unwrap().is_covered());
    assert!(classify(&bs, &occ([3, 3]), &occ([5, 1])).unwrap().is_covered());
    let bs = beamsplitter(BeamsplitterParams { tau: 0.4, phi: 0.0 }).unwrap();
    assert_eq!(classify(&bs, &occ([2, 3]), &occ([4, 1])).unwrap(), Classification::BeyondSymmetry);

    let ts = fourier_tritter();
    for m in 1..=5 {
        assert!(classify(&ts, &occ([m, m, m]), &occ([3 * m - 2, 2, 0])).unwrap().is_covered());
    }
    // the real tritter's (n₁,1,1) zeros are not explained by the principle
    let rt = real_symmetric_tritter();
    for m in [3, 5] {
        let n = occ([3 * m - 2, 1, 1]);
        assert!(amp_permanent(&rt, &occ([m, m, m]), &n).unwrap().norm() < 1e-10);
        assert!(!classify(&rt, &occ([m, m, m]), &n).unwrap().is_covered());
    }
}

#[test]
fn n20_laws_at_theta_zero_split_by_the_principle() {
    for m in 2..=5usize {
        let input = InputFamily::II.occupation(m);
        let output = occ([3 * m - 2, 2, 0]);
        let beyond = 2.0 * m as f64 / (3.0 * m as f64 - 1.0);
        let law = SuppressionLaw::verified(
            Device::Tritter { family: TritterFamily::T2, theta: 0.0 },
            input,
            output,
            &[(2.0 / 3.0, 1), (beyond, 1)],
            Provenance::ClosedForm { formula: "2/3, 2m/(3m-1)".into() },
        )
        .unwrap();
        let cls = classify_law(&law).unwrap();
        assert!(cls[0].is_covered(), "m = {m}");
        assert_eq!(cls[1], Classification::BeyondSymmetry, "m = {m}");
    }
}

#[test]
fn table_b_sigma_is_among_the_witnesses() {
    for row in table_b_rows() {
        for theta in row.device.thetas() {
            let u = row.device.build(theta).unwrap();
            for c in &row.claims {
                for size in 1..=5 {
                    let m = c.input.occupation(size);
                    let n = c.output.occupation(m.total()).unwrap();
                    let Some(pair) = complete_with_lambda(&u, &row.sigma, row.side, &row.lambda) else {
                        panic!("{}: stated lambda does not factorize", row.label)
                    };
                    if !pair.forces_zero(&m, &n) {
                        continue;
                    }
                    let w = symmetry_witnesses(&u, &m, &n).unwrap();
                    assert!(
                        w.iter().any(|w| w.sigma == row.sigma && w.side == row.side),
                        "{} {m} -> {n} at theta {theta}",
                        row.label
                    );
                    assert!(classify(&u, &m, &n).unwrap().is_covered());
                }
            }
        }
    }
}
