use std::f64::consts::FRAC_PI_2;

use bosonlaw::multiport::{MultiportSpec, TritterFamily};
use bosonlaw::suppression::{
    bs_law_double, bs_law_single, bs_zero_report, interlaced, scan_zero_curves, table1_report, InputFamily,
    OutputFamily, OutputOrder, RootSource, ScanGrid, ScanTarget, SuppressionLaw, Table1Report, ZeroCurve, ZeroReport,
};
use bosonlaw::symmetry::{symmetry_witnesses, table_b_rows, SymmetryWitness, TableBReport};
use bosonlaw::{
    amp_permanent, amplitude as amplitude_by, classify as classify_transition, law_survives, partial_probability,
    tritter, Amplitude, Classification, Interferometer, Method, OccupationVector, PartialSource, Survival,
    TritterParams,
};
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::occupation::parse_occupation;
use crate::output::{json, Csv, Format};

type Out = Result<String, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn device(spec: &str) -> Result<(MultiportSpec, Interferometer), String> {
    let spec: MultiportSpec = spec.parse().map_err(err)?;
    let u = spec.build().map_err(err)?;
    Ok((spec, u))
}

fn ensure_zero(
    u: &Interferometer,
    m: &OccupationVector,
    n: &OccupationVector,
    tol: f64,
    what: &str,
) -> Result<f64, String> {
    let a = amp_permanent(u, m, n).map_err(err)?.norm();
    if a < tol {
        Ok(a)
    } else {
        Err(format!("{what}: |<{n}|{m}>| = {a:.3e} is not below {tol:.1e}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Permanent,
    Tables,
    Recurrence,
    All,
}

#[derive(Args, Debug)]
pub struct AmplitudeArgs {
    /// Device, e.g. `bs:tau=0.5,phi=0`, `t1:tau=3/8,theta=pi/2`, `fourier`, `matrix:u.csv`.
    #[arg(long)]
    multiport: String,
    /// Input occupation, e.g. `1,1` or `m,m,m:m=2`.
    #[arg(long = "in", value_parser = parse_occupation)]
    input: OccupationVector,
    /// Output occupation.
    #[arg(long = "out", value_parser = parse_occupation)]
    out: OccupationVector,
    #[arg(long, value_enum, default_value_t = MethodChoice::All)]
    method: MethodChoice,
    /// Largest allowed pairwise difference between methods with `--method all`.
    #[arg(long, default_value_t = 1e-10, value_parser = crate::positive)]
    agree_tol: f64,
}

#[derive(Serialize)]
struct AmplitudeOut {
    multiport: String,
    input: OccupationVector,
    output: OccupationVector,
    amplitudes: Vec<Amplitude>,
    max_disagreement: f64,
}

pub fn amplitude(a: &AmplitudeArgs, format: Format, _zero_tol: f64) -> Out {
    let (spec, u) = device(&a.multiport)?;
    let methods = match a.method {
        MethodChoice::Permanent => vec![Method::Permanent],
        MethodChoice::Tables => vec![Method::Tables],
        MethodChoice::Recurrence => vec![Method::Recurrence],
        MethodChoice::All => vec![Method::Permanent, Method::Tables, Method::Recurrence],
    };
    let amps =
        methods.iter().map(|&m| amplitude_by(&u, &a.input, &a.out, m)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    let mut worst = 0.0f64;
    for (i, x) in amps.iter().enumerate() {
        for y in &amps[i + 1..] {
            worst = worst.max((x.value - y.value).norm());
        }
    }
    if worst > a.agree_tol {
        return Err(format!("amplitude methods disagree by {worst:.3e} (tolerance {:.1e})", a.agree_tol));
    }
    match format {
        Format::Json => json(&AmplitudeOut {
            multiport: spec.to_string(),
            input: a.input.clone(),
            output: a.out.clone(),
            amplitudes: amps,
            max_disagreement: worst,
        }),
        Format::Csv => {
            let mut c = Csv::new("amplitude", &["method", "re", "im", "abs"]);
            for x in &amps {
                c.row(&[&x.method.name(), &x.value.re, &x.value.im, &x.value.norm()]);
            }
            Ok(c.finish())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    /// Outputs (N−k, k).
    N1First,
    /// Outputs (k, N−k).
    N2First,
}

#[derive(Args, Debug)]
pub struct LawsBsArgs {
    /// A single input (m1,m2); without it every input with m1, m2 >= 1 up to --max-total.
    #[arg(long = "in", value_parser = parse_occupation)]
    input: Option<OccupationVector>,
    #[arg(long, default_value_t = 12)]
    max_total: usize,
    /// Number of photons in the minority output port (1, 2 or both).
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
    reflections: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Order::N1First)]
    order: Order,
}

pub fn laws_bs(a: &LawsBsArgs, format: Format, zero_tol: f64) -> Out {
    let order = match a.order {
        Order::N1First => OutputOrder::N1First,
        Order::N2First => OutputOrder::N2First,
    };
    let inputs: Vec<(usize, usize)> = match &a.input {
        Some(m) if m.modes() == 2 => vec![(m[0], m[1])],
        Some(m) => return Err(format!("beamsplitter input needs two modes, got {m}")),
        None => (1..a.max_total).flat_map(|m1| (1..=a.max_total - m1).map(move |m2| (m1, m2))).collect(),
    };
    let mut laws: Vec<(usize, SuppressionLaw)> = Vec::new();
    for &(m1, m2) in &inputs {
        for &k in &a.reflections {
            let law = match k {
                1 => bs_law_single(m1, m2, order),
                2 => bs_law_double(m1, m2, order),
                _ => return Err(format!("--reflections takes 1 or 2, got {k}")),
            };
            let law = law.and_then(|l| l.classified()).map_err(err)?;
            for tau in law.taus() {
                ensure_zero(&law.device.at(tau).map_err(err)?, &law.input, &law.output, zero_tol, "laws-bs")?;
            }
            laws.push((k, law));
        }
    }
    match format {
        Format::Json => json(&laws.iter().map(|(_, l)| l).collect::<Vec<_>>()),
        Format::Csv => {
            let mut c = Csv::new(
                "laws-bs",
                &["m1", "m2", "n1", "n2", "reflections", "tau", "multiplicity", "amplitude", "classification"],
            );
            for (k, l) in &laws {
                for r in &l.roots {
                    c.row(&[
                        &l.input[0],
                        &l.input[1],
                        &l.output[0],
                        &l.output[1],
                        k,
                        &r.tau,
                        &r.multiplicity,
                        &r.amplitude,
                        &r.classification,
                    ]);
                }
            }
            Ok(c.finish())
        }
    }
}

#[derive(Args, Debug)]
pub struct Fig2Args {
    /// Input (m1,m2).
    #[arg(long = "in", value_parser = parse_occupation)]
    input: OccupationVector,
    /// Photon numbers n1 in the first output port.
    #[arg(long, value_delimiter = ',', required = true)]
    n1: Vec<usize>,
    /// Grid steps of the sign-change scan (at least 1000).
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    /// Points of the sampled amplitude curve.
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Serialize)]
struct Fig2Curve {
    n1: usize,
    tau: Vec<f64>,
    amplitude: Vec<f64>,
    zeros: ZeroReport,
}

#[derive(Serialize)]
struct Fig2Pair {
    n1: usize,
    n1_other: usize,
    interlaced: bool,
}

#[derive(Serialize)]
struct Fig2Out {
    input: OccupationVector,
    steps: usize,
    curves: Vec<Fig2Curve>,
    interlacing: Vec<Fig2Pair>,
}

pub fn fig2(a: &Fig2Args, format: Format, zero_tol: f64) -> Out {
    if a.input.modes() != 2 {
        return Err(format!("beamsplitter input needs two modes, got {}", a.input));
    }
    if a.samples < 2 {
        return Err("--samples must be at least 2".into());
    }
    let total = a.input.total();
    let mut curves = Vec::new();
    for &n1 in &a.n1 {
        if n1 > total {
            return Err(format!("n1 = {n1} exceeds the {total} photons of the input"));
        }
        let n = OccupationVector::from([n1, total - n1]);
        let zeros = bs_zero_report(&a.input, &n, a.steps).map_err(err)?;
        for &z in &zeros.zero_locations {
            ensure_zero(&bs(z)?, &a.input, &n, zero_tol, "fig2")?;
        }
        let tau: Vec<f64> = (0..=a.samples).map(|i| i as f64 / a.samples as f64).collect();
        let amplitude = tau
            .iter()
            .map(|&t| amp_permanent(&bs(t)?, &a.input, &n).map(|x| x.value.re).map_err(err))
            .collect::<Result<Vec<_>, _>>()?;
        curves.push(Fig2Curve { n1, tau, amplitude, zeros });
    }
    let mut interlacing = Vec::new();
    for w in curves.windows(2) {
        if w[0].n1.abs_diff(w[1].n1) == 1 {
            let ok = interlaced(&w[0].zeros.zero_locations, &w[1].zeros.zero_locations).is_ok();
            interlacing.push(Fig2Pair { n1: w[0].n1, n1_other: w[1].n1, interlaced: ok });
        }
    }
    match format {
        Format::Json => json(&Fig2Out { input: a.input.clone(), steps: a.steps, curves, interlacing }),
        Format::Csv => {
            let mut c = Csv::new("fig2", &["kind", "n1", "n1_other", "tau", "value"]);
            for cv in &curves {
                for (t, v) in cv.tau.iter().zip(&cv.amplitude) {
                    c.row(&[&"amplitude", &cv.n1, &"", t, v]);
                }
            }
            for cv in &curves {
                for &z in &cv.zeros.zero_locations {
                    let v = amp_permanent(&bs(z)?, &a.input, &cv.zeros.n).map_err(err)?.norm();
                    c.row(&[&"zero", &cv.n1, &"", &z, &v]);
                }
                c.row(&[&"count", &cv.n1, &"", &"", &cv.zeros.count]);
            }
            for p in &interlacing {
                c.row(&[&"interlacing", &p.n1, &p.n1_other, &"", &u8::from(p.interlaced)]);
            }
            Ok(c.finish())
        }
    }
}

fn bs(tau: f64) -> Result<Interferometer, String> {
    bosonlaw::beamsplitter(bosonlaw::BeamsplitterParams::new(tau, 0.0).map_err(err)?).map_err(err)
}

#[derive(Args, Debug)]
pub struct Fig3Args {
    /// Tritter families (default both).
    #[arg(long, value_delimiter = ',', value_parser = parse_family)]
    family: Vec<TritterFamily>,
    /// Input families I = (n1,1,1), II = (m,m,m) (default both).
    #[arg(long, value_delimiter = ',', value_parser = parse_input)]
    input_family: Vec<InputFamily>,
    /// Output families 11 = (n1,1,1), 20 = (n1,2,0) (default both).
    #[arg(long, value_delimiter = ',', value_parser = parse_output)]
    output_family: Vec<OutputFamily>,
    /// Size parameter n1 or m of the input.
    #[arg(long, default_value_t = 3)]
    size: usize,
    #[arg(long, default_value_t = 128)]
    tau_steps: usize,
    #[arg(long, default_value_t = 128)]
    theta_steps: usize,
    /// Largest |amplitude| accepted on a reported curve point.
    #[arg(long, default_value_t = 1e-8, value_parser = crate::positive)]
    curve_tol: f64,
}

fn parse_family(s: &str) -> Result<TritterFamily, String> {
    s.parse().map_err(err)
}

fn parse_input(s: &str) -> Result<InputFamily, String> {
    s.parse().map_err(err)
}

fn parse_output(s: &str) -> Result<OutputFamily, String> {
    s.parse().map_err(err)
}

fn or_all<T: Clone>(chosen: &[T], all: &[T]) -> Vec<T> {
    if chosen.is_empty() {
        all.to_vec()
    } else {
        chosen.to_vec()
    }
}

pub fn fig3(a: &Fig3Args, format: Format) -> Out {
    let families = or_all(&a.family, &TritterFamily::ALL);
    let inputs = or_all(&a.input_family, &[InputFamily::I, InputFamily::II]);
    let outputs = or_all(&a.output_family, &[OutputFamily::N11, OutputFamily::N20]);
    let grid = ScanGrid { tau_steps: a.tau_steps, theta_steps: a.theta_steps };
    let mut all: Vec<ZeroCurve> = Vec::new();
    for &family in &families {
        for &input in &inputs {
            for &output in &outputs {
                let target = ScanTarget { family, input, output, size: a.size };
                all.extend(scan_zero_curves(&target, grid).map_err(err)?);
            }
        }
    }
    let mut rows = Vec::new();
    for (i, c) in all.iter().enumerate() {
        let m = c.input.occupation(c.size);
        let n = c.output.occupation(m.total()).map_err(err)?;
        for p in &c.points {
            let u = tritter(TritterParams::new(c.family, p.tau, p.theta).map_err(err)?).map_err(err)?;
            let amp = amp_permanent(&u, &m, &n).map_err(err)?.norm();
            if amp >= a.curve_tol {
                return Err(format!("curve point ({}, {}) of {n}<-{m} has |amplitude| {amp:.3e}", p.tau, p.theta));
            }
            let class = classify_transition(&u, &m, &n).map_err(err)?;
            rows.push((i, *p, amp, class));
        }
    }
    match format {
        Format::Json => json(&all),
        Format::Csv => {
            let mut csv = Csv::new(
                "fig3",
                &[
                    "family",
                    "input",
                    "output",
                    "size_param",
                    "curve",
                    "tau",
                    "theta",
                    "residual",
                    "provenance",
                    "classification",
                    "amplitude",
                ],
            );
            for (i, p, amp, class) in rows {
                let c = &all[i];
                csv.row(&[
                    &c.family,
                    &c.input,
                    &c.output,
                    &c.size,
                    &i,
                    &p.tau,
                    &p.theta,
                    &p.residual,
                    &"scan",
                    &class,
                    &amp,
                ]);
            }
            Ok(csv.finish())
        }
    }
}

#[derive(Args, Debug)]
pub struct Table1Args {
    /// Largest size parameter n1 or m.
    #[arg(long, default_value_t = 6)]
    max: usize,
}

#[derive(Serialize)]
struct VerifiedRoot {
    tau: f64,
    amplitude: f64,
    verified: bool,
}

#[derive(Serialize)]
struct VerifiedAngle {
    theta: f64,
    roots: Vec<VerifiedRoot>,
}

#[derive(Serialize)]
struct Table1Cell {
    family: TritterFamily,
    row: String,
    theta_case: String,
    size: usize,
    /// Set when the size falls outside the row's restriction.
    restriction: Option<String>,
    source: Option<RootSource>,
    identically_zero: bool,
    excluded: Vec<f64>,
    angles: Vec<VerifiedAngle>,
}

#[derive(Serialize)]
struct Table1Out {
    cells: Vec<Table1Cell>,
    #[serde(flatten)]
    report: Table1Report,
}

fn source_name(s: &RootSource) -> String {
    match s {
        RootSource::ClosedForm { formula } => format!("closed-form: {formula}"),
        RootSource::Resolved { reading, formula } => format!("resolved ({reading}): {formula}"),
        RootSource::Scanned { residual } => format!("scanned (residual {residual:.1e})"),
    }
}

pub fn table1(a: &Table1Args, format: Format, zero_tol: f64) -> Out {
    if a.max == 0 {
        return Err("--max must be at least 1".into());
    }
    let mut report = table1_report(a.max).map_err(err)?;
    let mut cells = Vec::new();
    for e in std::mem::take(&mut report.entries) {
        let mut cell = Table1Cell {
            family: e.family,
            row: e.row,
            theta_case: e.theta_case,
            size: e.size,
            restriction: None,
            source: None,
            identically_zero: false,
            excluded: Vec::new(),
            angles: Vec::new(),
        };
        match e.result {
            Err(msg) => cell.restriction = Some(msg),
            Ok(r) => {
                let m = r.row.input().occupation(r.size);
                let n = r.row.output().occupation(m.total()).map_err(err)?;
                for ang in &r.angles {
                    let mut roots = Vec::new();
                    for &tau in &ang.roots {
                        let u = tritter(TritterParams::new(r.family, tau, ang.theta).map_err(err)?).map_err(err)?;
                        let amplitude = ensure_zero(&u, &m, &n, zero_tol, "table1")?;
                        roots.push(VerifiedRoot { tau, amplitude, verified: true });
                    }
                    cell.angles.push(VerifiedAngle { theta: ang.theta, roots });
                }
                cell.source = Some(r.source);
                cell.identically_zero = r.identically_zero;
                cell.excluded = r.excluded;
            }
        }
        cells.push(cell);
    }
    match format {
        Format::Json => json(&Table1Out { cells, report }),
        Format::Csv => {
            let mut c = Csv::new(
                "table1",
                &["family", "row", "theta_case", "size", "theta", "tau", "amplitude", "verified", "source"],
            );
            for cell in &cells {
                let Some(src) = &cell.source else { continue };
                let src = if cell.identically_zero { "identically zero".to_string() } else { source_name(src) };
                for ang in &cell.angles {
                    if ang.roots.is_empty() && cell.identically_zero {
                        c.row(&[
                            &cell.family,
                            &cell.row,
                            &cell.theta_case,
                            &cell.size,
                            &ang.theta,
                            &"",
                            &"",
                            &"",
                            &src,
                        ]);
                    }
                    for r in &ang.roots {
                        c.row(&[
                            &cell.family,
                            &cell.row,
                            &cell.theta_case,
                            &cell.size,
                            &ang.theta,
                            &r.tau,
                            &r.amplitude,
                            &r.verified,
                            &src,
                        ]);
                    }
                }
            }
            Ok(c.finish())
        }
    }
}

#[derive(Args, Debug)]
pub struct TableBArgs {
    /// Largest size parameter n1 or m.
    #[arg(long, default_value_t = 6)]
    max: usize,
}

pub fn table_b(a: &TableBArgs, format: Format) -> Out {
    if a.max == 0 {
        return Err("--max must be at least 1".into());
    }
    let reports =
        table_b_rows().iter().map(|r| r.check(a.max)).collect::<Result<Vec<TableBReport>, _>>().map_err(err)?;
    for r in &reports {
        if !r.stated_lambda_factorizes {
            return Err(format!("row {}: the stated lambda does not factorize", r.label));
        }
        if !r.predictions_hold() {
            return Err(format!("row {}: a predicted suppression has nonzero amplitude", r.label));
        }
        for i in r.failed_claims() {
            eprintln!(
                "bosonlaw: note: row {} claims {} -> {} at theta = {}, but |amplitude| = {:.3e}",
                r.label, i.input, i.output, i.theta, i.amplitude
            );
        }
    }
    match format {
        Format::Json => json(&reports),
        Format::Csv => {
            let mut c = Csv::new(
                "tableB",
                &[
                    "label",
                    "sigma",
                    "side",
                    "device",
                    "theta",
                    "input",
                    "output",
                    "claimed",
                    "predicted",
                    "lambda_rule",
                    "amplitude",
                    "suppressed",
                ],
            );
            for r in &reports {
                for i in &r.instances {
                    c.row(&[
                        &r.label,
                        &r.sigma,
                        &r.side,
                        &r.device,
                        &i.theta,
                        &i.input,
                        &i.output,
                        &i.claimed,
                        &i.predicted,
                        &i.lambda_rule,
                        &i.amplitude,
                        &i.suppressed(),
                    ]);
                }
            }
            Ok(c.finish())
        }
    }
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    multiport: String,
    #[arg(long = "in", value_parser = parse_occupation)]
    input: OccupationVector,
    #[arg(long = "out", value_parser = parse_occupation)]
    out: OccupationVector,
}

#[derive(Serialize)]
struct ClassifyOut {
    multiport: String,
    input: OccupationVector,
    output: OccupationVector,
    amplitude: f64,
    classification: Classification,
    witnesses: Vec<SymmetryWitness>,
}

pub fn classify(a: &ClassifyArgs, format: Format, zero_tol: f64) -> Out {
    let (spec, u) = device(&a.multiport)?;
    let amplitude = ensure_zero(&u, &a.input, &a.out, zero_tol, "classify needs a suppressed transition")?;
    let classification = classify_transition(&u, &a.input, &a.out).map_err(err)?;
    let witnesses = symmetry_witnesses(&u, &a.input, &a.out).map_err(err)?;
    match format {
        Format::Json => json(&ClassifyOut {
            multiport: spec.to_string(),
            input: a.input.clone(),
            output: a.out.clone(),
            amplitude,
            classification,
            witnesses,
        }),
        Format::Csv => {
            let mut c = Csv::new("classify", &["classification", "sigma", "side", "phase_re", "phase_im"]);
            let label = match classification {
                Classification::CoveredBySymmetry { .. } => "covered",
                Classification::BeyondSymmetry => "beyond",
                Classification::Unclassified => "unclassified",
            };
            if witnesses.is_empty() {
                c.row(&[&label, &"", &"", &"", &""]);
            }
            for w in &witnesses {
                let (re, im) = match w.phase {
                    Some(p) => (p.re.to_string(), p.im.to_string()),
                    None => (String::new(), String::new()),
                };
                c.row(&[&label, &w.sigma, &w.side, &re, &im]);
            }
            Ok(c.finish())
        }
    }
}

#[derive(Args, Debug)]
pub struct DistinguishabilityArgs {
    #[arg(long)]
    multiport: String,
    #[arg(long = "in", value_parser = parse_occupation)]
    input: OccupationVector,
    #[arg(long = "out", value_parser = parse_occupation)]
    out: OccupationVector,
    /// Input port (1-based) of the partially distinguishable photon.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    port: u32,
    /// Number of mixing angles, evenly spaced over [0, pi/2].
    #[arg(long, default_value_t = 64)]
    alphas: usize,
}

#[derive(Serialize)]
struct Sample {
    alpha: f64,
    probability: f64,
}

#[derive(Serialize)]
struct DistinguishabilityOut {
    multiport: String,
    input: OccupationVector,
    output: OccupationVector,
    port: u32,
    indistinguishable: f64,
    distinguishable: f64,
    samples: Vec<Sample>,
    /// Present when the transition is suppressed for identical photons.
    survival: Option<Survival>,
}

pub fn distinguishability(a: &DistinguishabilityArgs, format: Format, zero_tol: f64) -> Out {
    if a.alphas < 2 {
        return Err("--alphas must be at least 2".into());
    }
    let (spec, u) = device(&a.multiport)?;
    let port = a.port as usize - 1;
    let at = |alpha: f64| -> Result<f64, String> {
        let src = PartialSource::new(port, alpha.min(FRAC_PI_2)).map_err(err)?;
        partial_probability(&u, &a.input, &a.out, src).map(|p| p.probability).map_err(err)
    };
    let base = partial_probability(&u, &a.input, &a.out, PartialSource::new(port, 0.0).map_err(err)?).map_err(err)?;
    let samples = (0..a.alphas)
        .map(|i| {
            let alpha = i as f64 * FRAC_PI_2 / (a.alphas - 1) as f64;
            at(alpha).map(|probability| Sample { alpha, probability })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let amp = amp_permanent(&u, &a.input, &a.out).map_err(err)?.norm();
    let survival = if amp < zero_tol { Some(law_survives(&u, &a.input, &a.out, port).map_err(err)?) } else { None };
    match format {
        Format::Json => json(&DistinguishabilityOut {
            multiport: spec.to_string(),
            input: a.input.clone(),
            output: a.out.clone(),
            port: a.port,
            indistinguishable: base.indistinguishable,
            distinguishable: base.distinguishable,
            samples,
            survival,
        }),
        Format::Csv => {
            let mut c =
                Csv::new("distinguishability", &["alpha", "probability", "indistinguishable", "distinguishable"]);
            for s in &samples {
                c.row(&[&s.alpha, &s.probability, &base.indistinguishable, &base.distinguishable]);
            }
            Ok(c.finish())
        }
    }
}
