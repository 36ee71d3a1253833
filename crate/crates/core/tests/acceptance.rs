//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bosonlaw::multiport::TritterFamily::{self, T1, T2};
use bosonlaw::multiport::{fourier_tritter, phase_fit, real_symmetric_tritter, symmetric_tritter, PhaseSides};
use bosonlaw::random::haar_unitary;
use bosonlaw::suppression::*;
use bosonlaw::symmetry::table_b_rows;
use bosonlaw::*;
use rand::Rng;

const ZERO: f64 = 1e-10;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn occ<const N: usize>(v: [usize; N]) -> OccupationVector {
    OccupationVector::from(v)
}

fn bs(tau: f64) -> Interferometer {
    beamsplitter(BeamsplitterParams { tau, phi: 0.0 }).unwrap()
}

fn amp(u: &Interferometer, m: &OccupationVector, n: &OccupationVector) -> f64 {
    amp_permanent(u, m, n).unwrap().norm()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let mut r = common::rng(2024);
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for modes in [2usize, 3, 4] {
        for _ in 0..80 {
            let total = r.random_range(1..=8);
            let u = haar_unitary(modes, &mut r);
            let m = common::random_occupation(modes, total, &mut r);
            let n = common::random_occupation(modes, total, &mut r);
            let a = [
                amp_permanent(&u, &m, &n).unwrap().value,
                amp_tables(&u, &m, &n).unwrap().value,
                amp_recurrence(&u, &m, &n).unwrap().value,
            ];
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                worst = worst.max((a[i] - a[j]).norm());
            }
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(worst < 1e-10, || format!("max pairwise difference {worst:.2e} over {cases} cases"))?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} cases, M in {{2,3,4}}, N <= 8, max pairwise difference {worst:.1e}"))
}

fn single_reflection_family() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for m1 in 1..=11usize {
        for m2 in 1..=(12 - m1) {
            let tau = m1 as f64 / (m1 + m2) as f64;
            let a = amp(&bs(tau), &occ([m1, m2]), &occ([m1 + m2 - 1, 1]));
            ensure(a < ZERO, || format!("<{},1|{m1},{m2}> = {a:.2e} at tau = {tau}", m1 + m2 - 1))?;
            let law = bs_law_single(m1, m2, OutputOrder::N1First).map_err(|e| e.to_string())?;
            ensure(law.taus() == vec![tau], || format!("law for ({m1},{m2}) serves {:?}", law.taus()))?;
            worst = worst.max(a);
            count += 1;
        }
    }
    let hom = amp(&bs(0.5), &occ([1, 1]), &occ([1, 1]));
    ensure(hom < ZERO, || format!("HOM amplitude {hom:.2e}"))?;
    Ok(format!("{count} input pairs with m1 + m2 <= 12, max |amplitude| {worst:.1e}, HOM {hom:.1e}"))
}

fn double_reflection_family() -> Outcome {
    let mut worst = 0.0f64;
    let mut roots = 0;
    for m1 in 1..=11usize {
        for m2 in 1..=(12 - m1) {
            let law = bs_law_double(m1, m2, OutputOrder::N1First).map_err(|e| e.to_string())?;
            let want = bs_suppression_poly(m1, m2, OutputOrder::N1First, 2)
                .map_err(|e| e.to_string())?
                .real_roots()
                .into_iter()
                .filter(|&(t, _)| t > 1e-9 && t < 1.0 - 1e-9)
                .count();
            ensure(law.roots.len() == want, || {
                format!("({m1},{m2}): {} roots, polynomial has {want}", law.roots.len())
            })?;
            for tau in law.taus() {
                let a = amp(&bs(tau), &occ([m1, m2]), &occ([m1 + m2 - 2, 2]));
                ensure(a < ZERO, || format!("<{},2|{m1},{m2}> = {a:.2e} at tau = {tau}", m1 + m2 - 2))?;
                worst = worst.max(a);
                roots += 1;
            }
        }
    }
    let a = amp(&bs(0.5), &occ([1, 3]), &occ([2, 2]));
    ensure(a < ZERO, || format!("<2,2|1,3> = {a:.2e} at tau = 1/2"))?;
    Ok(format!("{roots} roots in (0,1), max |amplitude| {worst:.1e}; <2,2|1,3> at 1/2 = {a:.1e}"))
}

fn table_one() -> Outcome {
    let report = table1_report(6).map_err(|e| e.to_string())?;
    let mut verified = 0;
    let mut restricted = 0;
    let mut worst = 0.0f64;
    for e in &report.entries {
        match &e.result {
            Ok(r) => {
                ensure(r.max_amplitude < ZERO && r.angles.len() == 2, || {
                    format!("{} {} {} size {}: {:.2e}", e.family, e.row, e.theta_case, e.size, r.max_amplitude)
                })?;
                worst = worst.max(r.max_amplitude);
                verified += 1;
            }
            Err(_) => restricted += 1,
        }
    }
    let mut readings: Vec<String> = Vec::new();
    for s in &report.sqrt_grouping {
        ensure(!s.matched.is_empty(), || format!("no reading matches {} {} size {}", s.row, s.theta_case, s.size))?;
        if s.size >= 2 {
            ensure(s.matched == ["grouped"], || {
                format!("{} {} size {}: {:?}", s.row, s.theta_case, s.size, s.matched)
            })?;
        }
        let expr = s.readings.iter().find(|r| r.name == s.matched[0]).map(|r| r.expression.clone());
        if let Some(expr) = expr {
            if !readings.contains(&expr) {
                readings.push(expr);
            }
        }
    }
    for c in &report.section_conflict {
        ensure(c.verified == "tabulated", || format!("n1 = {}: {} verified", c.n1, c.verified))?;
    }
    ensure(report.footnote.every_tau_is_a_zero, || "footnote case has a nonzero amplitude".into())?;
    Ok(format!(
        "{verified} cells verified (max |amplitude| {worst:.1e}), {restricted} outside their size restriction; \
         ambiguous cells resolved as {}",
        readings.join(" / ")
    ))
}

fn figure_two() -> Outcome {
    let start = Instant::now();
    let m = occ([9, 4]);
    let mut lists = Vec::new();
    let mut width = 0.0f64;
    for n1 in [3usize, 4, 5] {
        let r = bs_zero_report(&m, &occ([n1, 13 - n1]), 2000).map_err(|e| e.to_string())?;
        width = width.max(r.bracket_width);
        lists.push(r.zero_locations);
    }
    let counts: Vec<usize> = lists.iter().map(Vec::len).collect();
    ensure(counts == [3, 4, 4], || format!("zero counts {counts:?}"))?;
    for (i, j) in [(0, 1), (1, 2)] {
        interlaced(&lists[i], &lists[j]).map_err(|w| format!("lists {i}, {j} do not interlace: {w:?}"))?;
    }
    ensure(width <= 1e-12, || format!("bracket width {width:.2e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("counts {counts:?}, lists interlace, bracket width {width:.1e}"))
}

fn figure_three() -> Outcome {
    let grid = ScanGrid { tau_steps: 128, theta_steps: 128 };
    let size = 3;
    let mut points = 0;
    let mut worst = 0.0f64;
    for family in TritterFamily::ALL {
        for input in [InputFamily::I, InputFamily::II] {
            for output in [OutputFamily::N11, OutputFamily::N20] {
                let target = ScanTarget { family, input, output, size };
                let curves = scan_zero_curves(&target, grid).map_err(|e| e.to_string())?;
                for p in curves.iter().flat_map(|c| &c.points) {
                    worst = worst.max(p.residual);
                }
                let row = match (input, output) {
                    (InputFamily::I, OutputFamily::N11) => Table1Row::N111I,
                    (InputFamily::I, _) => Table1Row::N120I,
                    (InputFamily::II, OutputFamily::N11) => Table1Row::N111II,
                    _ => Table1Row::N120II,
                };
                for case in ThetaCase::ALL {
                    let Ok(cell) = table1_roots(family, row, case, size) else { continue };
                    if cell.identically_zero || matches!(cell.source, RootSource::Scanned { .. }) {
                        continue;
                    }
                    for a in &cell.angles {
                        for &tau in &a.roots {
                            let hit = curves.iter().flat_map(|c| &c.points).any(|p| {
                                let d = (p.theta - a.theta).rem_euclid(std::f64::consts::TAU);
                                (p.tau - tau).abs() <= 2.0 * grid.tau_step()
                                    && d.min(std::f64::consts::TAU - d) <= 2.0 * grid.theta_step()
                            });
                            ensure(hit, || format!("{target:?}: no curve through ({tau}, {})", a.theta))?;
                            points += 1;
                        }
                    }
                }
            }
        }
    }
    ensure(worst < 1e-8, || format!("refined residual {worst:.2e}"))?;
    Ok(format!("8 targets at size {size}, {points} closed-form points on curves, max refined residual {worst:.1e}"))
}

fn theta_zero_slices() -> Outcome {
    let mut found = Vec::new();
    for m in 1..=6usize {
        let t2 = ScanTarget { family: T2, input: InputFamily::II, output: OutputFamily::N20, size: m };
        let roots: Vec<f64> =
            scan_theta_slice(&t2, 0.0, 4000).map_err(|e| e.to_string())?.roots.iter().map(|r| r.tau).collect();
        let mut want = vec![2.0 / 3.0];
        let other = 2.0 * m as f64 / (3.0 * m as f64 - 1.0);
        if other < 1.0 - 1e-9 {
            want.push(other);
        }
        want.sort_by(f64::total_cmp);
        let same = roots.len() == want.len() && roots.iter().zip(&want).all(|(r, w)| (r - w).abs() < 1e-9);
        ensure(same, || format!("T2 m = {m}: scanned {roots:?}, expected {want:?}"))?;
        // the bracket factor 3(m−1)(2τ−1) + 2i√(3τ(1−τ)) has nonzero imaginary part on (0, 1),
        // so 1/2 is the only nontrivial root
        let t1 = ScanTarget { family: T1, ..t2 };
        let roots: Vec<f64> =
            scan_theta_slice(&t1, 0.0, 4000).map_err(|e| e.to_string())?.roots.iter().map(|r| r.tau).collect();
        ensure(roots.len() == 1 && (roots[0] - 0.5).abs() < 1e-9, || format!("T1 m = {m}: scanned {roots:?}"))?;
        found.push(want.len());
    }
    Ok(format!(
        "m = 1..6: T1 roots {{1/2}} (bracket factor has no root in (0,1)), T2 roots {{2/3, 2m/(3m-1)}}; \
         T2 root counts {found:?}"
    ))
}

fn table_b() -> Outcome {
    let mut instances = 0;
    let mut predicted = 0;
    let mut overclaims = Vec::new();
    for row in table_b_rows() {
        let rep = row.check(6).map_err(|e| e.to_string())?;
        ensure(rep.stated_lambda_factorizes && rep.solver_factorizes && rep.max_residual < 1e-9, || {
            format!("{}: factorization failed (residual {:.2e})", rep.label, rep.max_residual)
        })?;
        ensure(rep.predictions_hold(), || format!("{}: a predicted zero is nonzero", rep.label))?;
        // every claim the principle covers must hold; claims beyond it are reported
        for i in rep.failed_claims() {
            ensure(!i.predicted, || format!("{}: predicted claim {} -> {} fails", rep.label, i.input, i.output))?;
            let note = format!("{} {}->{} |amp| {:.3}", rep.label, i.input, i.output, i.amplitude);
            if !overclaims.contains(&note) {
                overclaims.push(note);
            }
        }
        instances += rep.instances.len();
        predicted += rep.instances.iter().filter(|i| i.predicted).count();
    }
    let expected = ["b1", "b3"];
    ensure(overclaims.len() == 2 && overclaims.iter().zip(expected).all(|(o, l)| o.starts_with(l)), || {
        format!("unexpected failing claims {overclaims:?}")
    })?;
    for m in 2..=6usize {
        let beyond = 2.0 * m as f64 / (3.0 * m as f64 - 1.0);
        let law = SuppressionLaw::verified(
            Device::Tritter { family: T2, theta: 0.0 },
            InputFamily::II.occupation(m),
            occ([3 * m - 2, 2, 0]),
            &[(2.0 / 3.0, 1), (beyond, 1)],
            Provenance::ClosedForm { formula: "2/3, 2m/(3m-1)".into() },
        )
        .map_err(|e| e.to_string())?;
        let cls = classify_law(&law).map_err(|e| e.to_string())?;
        ensure(cls[0].is_covered(), || format!("m = {m}: symmetric tritter law is {:?}", cls[0]))?;
        ensure(cls[1] == Classification::BeyondSymmetry, || format!("m = {m}: 2m/(3m-1) law is {:?}", cls[1]))?;
    }
    Ok(format!(
        "8 rows factorize with stated lambda, {predicted}/{instances} instances predicted and zero; \
         Ts laws covered, 2m/(3m-1) laws beyond (m = 2..6); claims outside the principle fail: {}",
        overclaims.join(", ")
    ))
}

fn symmetric_constructions() -> Outcome {
    let pairs = [
        ("theta = 0", symmetric_tritter(0.0), fourier_tritter()),
        ("theta = pi/2", symmetric_tritter(FRAC_PI_2), real_symmetric_tritter()),
    ];
    let mut out = Vec::new();
    let mut both = Vec::new();
    for (name, built, target) in &pairs {
        out.push((name, phase_fit(target.matrix(), built.matrix(), PhaseSides::Output).residual));
        both.push(phase_fit(target.matrix(), built.matrix(), PhaseSides::Both).residual);
    }
    let summary = format!(
        "output-phase residuals {:.3} ({}), {:.3} ({}); with input phases too {:.1e}, {:.1e}",
        out[0].1, out[0].0, out[1].1, out[1].0, both[0], both[1]
    );
    if out.iter().all(|&(_, r)| r < 1e-10) {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn distinguishability() -> Outcome {
    let mut min_breaking = f64::INFINITY;
    let mut max_zero = 0.0f64;
    let mut check = |u: &Interferometer, m: &OccupationVector, n: &OccupationVector, port: usize| -> Outcome {
        let p = |alpha| partial_probability(u, m, n, PartialSource::new(port, alpha).unwrap()).map(|p| p.probability);
        let (p0, p4) = (p(0.0).map_err(|e| e.to_string())?, p(FRAC_PI_4).map_err(|e| e.to_string())?);
        ensure(p4 > 1e-6 && p0 < 1e-20, || format!("{m} -> {n}: P(0) = {p0:.2e}, P(pi/4) = {p4:.2e}"))?;
        min_breaking = min_breaking.min(p4);
        max_zero = max_zero.max(p0);
        Ok(String::new())
    };
    for m1 in 1..=5usize {
        for m2 in 1..=5usize {
            let tau = m1 as f64 / (m1 + m2) as f64;
            check(&bs(tau), &occ([m1, m2]), &occ([m1 + m2 - 1, 1]), 0)?;
        }
    }
    for n1 in 2..=6usize {
        let tau = 3.0 * n1 as f64 / (4.0 * (n1 as f64 + 1.0));
        let u = tritter(TritterParams::new(T1, tau, FRAC_PI_2).unwrap()).unwrap();
        let m = occ([n1, 1, 1]);
        check(&u, &m, &m, 2)?;
    }
    let u = bs(0.5);
    let m = occ([1, 1]);
    let mut hom = 0.0f64;
    for i in 0..64 {
        let alpha = i as f64 * FRAC_PI_2 / 63.0;
        let p = partial_probability(&u, &m, &m, PartialSource::new(0, alpha).unwrap()).map_err(|e| e.to_string())?;
        hom = hom.max((p.probability - alpha.sin().powi(2) / 2.0).abs());
    }
    ensure(hom < 1e-10, || format!("HOM profile deviates by {hom:.2e}"))?;
    Ok(format!(
        "min P(pi/4) {min_breaking:.2e}, max P(0) {max_zero:.1e} over 25 beamsplitter and 5 tritter laws; \
         HOM profile within {hom:.1e} at 64 angles"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("single-reflection beamsplitter family", single_reflection_family),
        ("double-reflection beamsplitter family", double_reflection_family),
        ("tritter root table", table_one),
        ("beamsplitter zero counts and interlacing", figure_two),
        ("tritter zero curves", figure_three),
        ("theta = 0 slice roots", theta_zero_slices),
        ("symmetry table", table_b),
        ("symmetric tritter constructions", symmetric_constructions),
        ("distinguishability breaking", distinguishability),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name} [{secs:.2} s]: {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
