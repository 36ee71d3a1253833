use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::amplitude::amp_permanent;
use crate::error::{Error, Result};
use crate::multiport::{tritter, TritterFamily, TritterParams};
use crate::suppression::{scan_theta_slice, InputFamily, OutputFamily, ScanTarget};
use crate::tolerance;

/// τ-grid used when an entry is resolved or served by a slice scan.
const SLICE_STEPS: usize = 4000;

/// The five tabulated tritter amplitude cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Table1Row {
    /// ⟨n₁,1,0 | m,m,m⟩
    N110II,
    /// ⟨n₁,1,1 | n₁,1,1⟩
    N111I,
    /// ⟨n₁,2,0 | n₁,1,1⟩
    N120I,
    /// ⟨n₁,1,1 | m,m,m⟩
    N111II,
    /// ⟨n₁,2,0 | m,m,m⟩
    N120II,
}

impl Table1Row {
    pub const ALL: [Table1Row; 5] =
        [Table1Row::N110II, Table1Row::N111I, Table1Row::N120I, Table1Row::N111II, Table1Row::N120II];

    pub fn input(&self) -> InputFamily {
        match self {
            Table1Row::N111I | Table1Row::N120I => InputFamily::I,
            _ => InputFamily::II,
        }
    }

    pub fn output(&self) -> OutputFamily {
        match self {
            Table1Row::N110II => OutputFamily::N10,
            Table1Row::N111I | Table1Row::N111II => OutputFamily::N11,
            Table1Row::N120I | Table1Row::N120II => OutputFamily::N20,
        }
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.output().tail();
        let inp = match self.input() {
            InputFamily::I => "n1,1,1",
            InputFamily::II => "m,m,m",
        };
        write!(f, "<n1,{a},{b}|{inp}>")
    }
}

/// θ columns of the table: {0, π} and {π/2, −π/2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaCase {
    Zero,
    HalfPi,
}

impl ThetaCase {
    pub const ALL: [ThetaCase; 2] = [ThetaCase::Zero, ThetaCase::HalfPi];

    /// The two angles represented by the column.
    pub fn angles(&self) -> [f64; 2] {
        match self {
            ThetaCase::Zero => [0.0, PI],
            ThetaCase::HalfPi => [FRAC_PI_2, -FRAC_PI_2],
        }
    }

    pub fn representative(&self) -> f64 {
        self.angles()[0]
    }
}

impl fmt::Display for ThetaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaCase::Zero => "0",
            ThetaCase::HalfPi => "pi/2",
        })
    }
}

/// How the served roots were obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum RootSource {
    /// Tabulated closed form.
    ClosedForm { formula: String },
    /// Ambiguous closed form; the reading that matched the scan.
    Resolved { reading: String, formula: String },
    /// No closed form tabulated; roots from a slice scan of the suppression function.
    Scanned { residual: f64 },
}

/// Roots at one angle of a θ column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleRoots {
    pub theta: f64,
    pub roots: Vec<f64>,
    /// Largest |amplitude| over these roots.
    pub max_amplitude: f64,
}

/// Roots served for one table cell, all verified against the permanent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Roots {
    pub family: TritterFamily,
    pub row: Table1Row,
    pub theta_case: ThetaCase,
    pub size: usize,
    /// Nontrivial roots in (0, 1), ascending. For scanned cells these are
    /// the roots at the first angle of the column; see `angles`.
    pub roots: Vec<f64>,
    /// Roots of the closed form dropped as trivial or outside [0, 1].
    pub excluded: Vec<f64>,
    pub source: RootSource,
    /// Roots verified at each angle of the column. Closed-form cells share
    /// one root set; scanned cells may differ between θ and −θ.
    pub angles: Vec<AngleRoots>,
    /// Largest |amplitude| over roots and angles.
    pub max_amplitude: f64,
    /// The amplitude vanishes for every τ at these settings.
    pub identically_zero: bool,
}

fn split_roots(candidates: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut keep: Vec<f64> = Vec::new();
    let mut drop = Vec::new();
    for &r in candidates {
        if !(0.0..=1.0).contains(&r) || tolerance::is_trivial_tau(r) {
            drop.push(r);
        } else if !keep.iter().any(|k| (k - r).abs() < 1e-12) {
            keep.push(r);
        }
    }
    keep.sort_by(f64::total_cmp);
    (keep, drop)
}

fn amplitude_at(family: TritterFamily, row: Table1Row, size: usize, tau: f64, theta: f64) -> Result<f64> {
    let u = tritter(TritterParams::new(family, tau, theta)?)?;
    let m = row.input().occupation(size);
    let n = row.output().occupation(m.total())?;
    Ok(amp_permanent(&u, &m, &n)?.norm())
}

/// The quadratic shared by two ambiguous cells:
/// 3(3m−1)τ² − 2(6m−3)τ + 4(m−1) = 0.
fn grouped_reading(m: f64) -> Vec<f64> {
    let c = (2.0 * m - 1.0) / (3.0 * m - 1.0);
    let d = (12.0 * (4.0 * m - 1.0)).sqrt() / (6.0 * (3.0 * m - 1.0));
    vec![c - d, c + d]
}

fn literal_reading(m: f64) -> Vec<f64> {
    let c = (2.0 * m - 1.0) / (3.0 * m - 1.0);
    let d = (12.0 * (4.0 * m - 1.0) / (6.0 * (3.0 * m - 1.0))).sqrt();
    vec![c - d, c + d]
}

/// Closed forms of the unambiguous cells, or `None` for cells needing a scan
/// or a resolution.
fn closed_form(
    family: TritterFamily,
    row: Table1Row,
    case: ThetaCase,
    size: usize,
) -> Result<Option<(Vec<f64>, String)>> {
    use Table1Row::*;
    use ThetaCase::*;
    use TritterFamily::{T1, T2};
    let n = size as f64;
    let out = match (row, case, family) {
        (N110II, _, T1) => (vec![0.5], "1/2".to_string()),
        (N110II, _, T2) => (vec![2.0 / 3.0], "2/3".to_string()),
        (N111I, Zero, T1) => {
            (vec![3.0 * n * (n - 1.0) / (2.0 * (n + 1.0) * (n + 2.0))], "3n1(n1-1)/(2(n1+1)(n1+2))".into())
        }
        (N111I, Zero, T2) => (vec![2.0 * n * (n - 1.0) / ((n + 1.0) * (n + 2.0))], "2n1(n1-1)/((n1+1)(n1+2))".into()),
        (N111I, HalfPi, T1) => {
            if size == 1 {
                return Err(Error::Domain(
                    "row <n1,1,1|n1,1,1> on T1 at theta = ±pi/2 is tabulated only for n1 != 1 (for n1 = 1 every tau is a zero)".into(),
                ));
            }
            (vec![3.0 * n / (4.0 * (n + 1.0))], "3n1/(4(n1+1))".into())
        }
        (N111I, HalfPi, T2) => (vec![4.0 * n / ((n + 1.0) * (n + 2.0))], "4n1/((n1+1)(n1+2))".into()),
        (N120I, Zero, fam) => {
            if size > 2 {
                return Err(Error::Domain(format!(
                    "row <n1,2,0|n1,1,1> at theta = 0 is tabulated only for n1 in {{1, 2}}, got {size}"
                )));
            }
            let r = fam.symmetric_tau();
            (vec![r], if fam == T1 { "1/2".into() } else { "2/3".into() })
        }
        (N120I, HalfPi, _) => return Ok(None),
        (N111II, Zero, T1) => {
            let d = 1.0 / n.sqrt();
            (vec![0.5 * (1.0 - d), 0.5 * (1.0 + d)], "(1 ± 1/sqrt(m))/2".into())
        }
        (N111II, Zero, T2) => return Ok(None),
        (N111II, HalfPi, T1) => (vec![0.5], "1/2".into()),
        (N111II, HalfPi, T2) => (vec![2.0 / 3.0, 2.0 * n / (3.0 * n - 1.0)], "2/3, 2m/(3m-1)".into()),
        (N120II, Zero, T1) => (vec![0.5], "1/2".into()),
        (N120II, Zero, T2) => (vec![2.0 / 3.0, 2.0 * n / (3.0 * n - 1.0)], "2/3, 2m/(3m-1)".into()),
        (N120II, HalfPi, T1) => return Ok(None),
        (N120II, HalfPi, T2) => return Ok(None),
    };
    Ok(Some(out))
}

fn is_ambiguous(family: TritterFamily, row: Table1Row, case: ThetaCase) -> bool {
    family == TritterFamily::T2
        && matches!((row, case), (Table1Row::N111II, ThetaCase::Zero) | (Table1Row::N120II, ThetaCase::HalfPi))
}

/// One candidate reading of an ambiguous root expression.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reading {
    pub name: String,
    pub expression: String,
    pub roots: Vec<f64>,
    /// Roots of the reading inside (0, 1) coincide with the scanned roots.
    pub matches_scan: bool,
}

/// Resolution of "(2m−1)/(3m−1) ± √(12(4m−1))/(6(3m−1))", whose square
/// root can be read as covering the numerator only or the whole fraction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqrtGroupingResolution {
    pub row: Table1Row,
    pub theta_case: ThetaCase,
    pub size: usize,
    pub scanned: Vec<f64>,
    pub readings: Vec<Reading>,
    /// Names of readings that match the scan.
    pub matched: Vec<String>,
}

fn same_set(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-8)
}

/// Scan the T2 suppression function for the ambiguous cell and compare with
/// both readings of the tabulated expression.
pub fn resolve_sqrt_grouping(row: Table1Row, theta_case: ThetaCase, size: usize) -> Result<SqrtGroupingResolution> {
    if !is_ambiguous(TritterFamily::T2, row, theta_case) {
        return Err(Error::Contract(format!("cell {row} at theta = {theta_case} is not ambiguous")));
    }
    if size == 0 {
        return Err(Error::Domain("size parameter must be at least 1".into()));
    }
    let target = ScanTarget { family: TritterFamily::T2, input: row.input(), output: row.output(), size };
    let slice = scan_theta_slice(&target, theta_case.representative(), SLICE_STEPS)?;
    let scanned: Vec<f64> = slice.roots.iter().map(|r| r.tau).collect();
    let m = size as f64;
    let readings: Vec<Reading> = [
        ("grouped", "(2m-1)/(3m-1) ± sqrt(12(4m-1))/(6(3m-1))", grouped_reading(m)),
        ("literal", "(2m-1)/(3m-1) ± sqrt(12(4m-1)/(6(3m-1)))", literal_reading(m)),
    ]
    .into_iter()
    .map(|(name, expr, roots)| {
        let (inside, _) = split_roots(&roots);
        Reading { name: name.into(), expression: expr.into(), matches_scan: same_set(&inside, &scanned), roots }
    })
    .collect();
    let matched = readings.iter().filter(|r| r.matches_scan).map(|r| r.name.clone()).collect();
    Ok(SqrtGroupingResolution { row, theta_case, size, scanned, readings, matched })
}

/// Two competing values for the ⟨n₁,1,1|n₁,1,1⟩ zero on T1 at θ = π/2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionConflict {
    pub n1: usize,
    /// 3n₁/(4(n₁+1)).
    pub tabulated: f64,
    pub tabulated_amplitude: f64,
    /// 3n₁/(4n₁+1).
    pub alternative: f64,
    pub alternative_amplitude: f64,
    /// "tabulated", "alternative", "both" or "neither".
    pub verified: String,
}

/// Evaluate the amplitude at both candidate values.
pub fn resolve_section_conflict(n1: usize) -> Result<SectionConflict> {
    if n1 < 2 {
        return Err(Error::Domain("the comparison needs n1 >= 2".into()));
    }
    let n = n1 as f64;
    let tabulated = 3.0 * n / (4.0 * (n + 1.0));
    let alternative = 3.0 * n / (4.0 * n + 1.0);
    let a = amplitude_at(TritterFamily::T1, Table1Row::N111I, n1, tabulated, FRAC_PI_2)?;
    let b = amplitude_at(TritterFamily::T1, Table1Row::N111I, n1, alternative, FRAC_PI_2)?;
    let verified = match (a < tolerance::ZERO_AMPLITUDE, b < tolerance::ZERO_AMPLITUDE) {
        (true, true) => "both",
        (true, false) => "tabulated",
        (false, true) => "alternative",
        (false, false) => "neither",
    };
    Ok(SectionConflict {
        n1,
        tabulated,
        tabulated_amplitude: a,
        alternative,
        alternative_amplitude: b,
        verified: verified.into(),
    })
}

/// ⟨1,1,1|1,1,1⟩ on T1 at θ = ±π/2 over a τ grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FootnoteCheck {
    pub grid_points: usize,
    pub max_amplitude: f64,
    pub every_tau_is_a_zero: bool,
}

pub fn footnote_check(grid_points: usize) -> Result<FootnoteCheck> {
    let mut worst = 0.0f64;
    for i in 0..grid_points {
        let tau = (i as f64 + 0.5) / grid_points as f64;
        for theta in ThetaCase::HalfPi.angles() {
            worst = worst.max(amplitude_at(TritterFamily::T1, Table1Row::N111I, 1, tau, theta)?);
        }
    }
    Ok(FootnoteCheck { grid_points, max_amplitude: worst, every_tau_is_a_zero: worst < tolerance::ZERO_AMPLITUDE })
}

/// Roots of a table cell, each verified against the permanent at every
/// angle of the θ column (scanned cells: at the scanned angle).
///
/// Errors: size 0, or a size outside the cell's tabulated range (`Domain`,
/// naming the restriction); a served root that is not a zero (`Contract`).
pub fn table1_roots(family: TritterFamily, row: Table1Row, theta_case: ThetaCase, size: usize) -> Result<Table1Roots> {
    if size == 0 {
        return Err(Error::Domain("size parameter must be at least 1".into()));
    }
    let scan = |theta: f64| -> Result<(Vec<f64>, f64)> {
        let target = ScanTarget { family, input: row.input(), output: row.output(), size };
        let slice = scan_theta_slice(&target, theta, SLICE_STEPS)?;
        let residual = slice.roots.iter().map(|r| r.residual).fold(0.0, f64::max);
        Ok((slice.roots.iter().map(|r| r.tau).collect(), residual))
    };
    let closed = if is_ambiguous(family, row, theta_case) {
        let res = resolve_sqrt_grouping(row, theta_case, size)?;
        res.readings
            .iter()
            .find(|r| r.name == "grouped" && res.matched.contains(&r.name))
            .map(|r| (r.roots.clone(), RootSource::Resolved { reading: r.name.clone(), formula: r.expression.clone() }))
    } else {
        closed_form(family, row, theta_case, size)?.map(|(r, formula)| (r, RootSource::ClosedForm { formula }))
    };
    let (per_angle, excluded, source) = match closed {
        Some((candidates, source)) => {
            let (roots, excluded) = split_roots(&candidates);
            (theta_case.angles().iter().map(|&t| (t, roots.clone())).collect::<Vec<_>>(), excluded, source)
        }
        None => {
            let mut residual = 0.0f64;
            let mut per_angle = Vec::new();
            for theta in theta_case.angles() {
                let (r, res) = scan(theta)?;
                residual = residual.max(res);
                per_angle.push((theta, split_roots(&r).0));
            }
            (per_angle, Vec::new(), RootSource::Scanned { residual })
        }
    };
    let mut angles = Vec::new();
    for (theta, roots) in per_angle {
        let mut max_amplitude = 0.0f64;
        for &tau in &roots {
            let a = amplitude_at(family, row, size, tau, theta)?;
            if a.is_nan() || a >= tolerance::ZERO_AMPLITUDE {
                return Err(Error::Contract(format!(
                    "{family} {row} theta = {theta}: served root {tau} has amplitude {a:.3e}"
                )));
            }
            max_amplitude = max_amplitude.max(a);
        }
        angles.push(AngleRoots { theta, roots, max_amplitude });
    }
    let max_amplitude = angles.iter().map(|a| a.max_amplitude).fold(0.0, f64::max);
    let roots = angles[0].roots.clone();
    let identically_zero = [0.17, 0.41, 0.73]
        .iter()
        .map(|&t| amplitude_at(family, row, size, t, angles[0].theta))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|&a| a < tolerance::ZERO_AMPLITUDE);
    Ok(Table1Roots { family, row, theta_case, size, roots, excluded, source, angles, max_amplitude, identically_zero })
}

/// One cell of the report: either roots or the restriction that excludes the size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Entry {
    pub family: TritterFamily,
    pub row: String,
    pub theta_case: String,
    pub size: usize,
    pub result: std::result::Result<Table1Roots, String>,
}

/// Every cell for sizes 1..=max_size plus the resolutions of the
/// ambiguous and conflicting entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Report {
    pub entries: Vec<Table1Entry>,
    pub sqrt_grouping: Vec<SqrtGroupingResolution>,
    pub section_conflict: Vec<SectionConflict>,
    pub footnote: FootnoteCheck,
}

pub fn table1_report(max_size: usize) -> Result<Table1Report> {
    let mut entries = Vec::new();
    for family in TritterFamily::ALL {
        for row in Table1Row::ALL {
            for case in ThetaCase::ALL {
                for size in 1..=max_size {
                    let result = match table1_roots(family, row, case, size) {
                        Ok(r) => Ok(r),
                        Err(Error::Domain(msg)) => Err(msg),
                        Err(e) => return Err(e),
                    };
                    entries.push(Table1Entry {
                        family,
                        row: row.to_string(),
                        theta_case: case.to_string(),
                        size,
                        result,
                    });
                }
            }
        }
    }
    let mut sqrt_grouping = Vec::new();
    for (row, case) in [(Table1Row::N111II, ThetaCase::Zero), (Table1Row::N120II, ThetaCase::HalfPi)] {
        for size in 1..=max_size {
            sqrt_grouping.push(resolve_sqrt_grouping(row, case, size)?);
        }
    }
    let section_conflict = (2..=max_size.max(2)).map(resolve_section_conflict).collect::<Result<Vec<_>>>()?;
    Ok(Table1Report { entries, sqrt_grouping, section_conflict, footnote: footnote_check(101)? })
}
