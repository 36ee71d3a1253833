use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplitude::amp_permanent;
use crate::error::Result;
use crate::fock::Interferometer;
use crate::multiport::{fourier_tritter, tritter, TritterFamily, TritterParams};
use crate::suppression::{InputFamily, OutputFamily};
use crate::symmetry::{complete_with_lambda, predict_suppressed, solve_phase_factorization, Permutation, Side};
use crate::tolerance;

/// Device of a tabulated symmetry; `theta: None` means the symmetry holds for every θ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TableBDevice {
    Tritter { family: TritterFamily, tau: f64, theta: Option<f64> },
    Fourier,
}

impl TableBDevice {
    /// θ values at which the row is checked.
    pub fn thetas(&self) -> Vec<f64> {
        match self {
            TableBDevice::Tritter { theta: Some(t), .. } => vec![*t],
            TableBDevice::Tritter { theta: None, .. } => vec![0.0, 0.7, PI / 2.0, 2.3, -1.2],
            TableBDevice::Fourier => vec![0.0],
        }
    }

    pub fn build(&self, theta: f64) -> Result<Interferometer> {
        match self {
            TableBDevice::Tritter { family, tau, theta: fixed } => {
                tritter(TritterParams::new(*family, *tau, fixed.unwrap_or(theta))?)
            }
            TableBDevice::Fourier => Ok(fourier_tritter()),
        }
    }
}

impl fmt::Display for TableBDevice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableBDevice::Tritter { family, tau, theta: Some(t) } => write!(f, "{family}({tau},{t})"),
            TableBDevice::Tritter { family, tau, theta: None } => write!(f, "{family}({tau},theta)"),
            TableBDevice::Fourier => f.write_str("Ts"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Any,
    /// Only for odd n₁ in the output.
    Odd,
}

/// "⟨n₁,·,·| input family⟩ is suppressed" for the given n₁ parity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableBClaim {
    pub input: InputFamily,
    pub output: OutputFamily,
    pub parity: Parity,
}

/// One tabulated symmetry: σ, device, stated Λ and the claimed suppressions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableBRow {
    pub label: String,
    pub side: Side,
    pub sigma: Permutation,
    pub device: TableBDevice,
    pub lambda: Vec<Complex64>,
    pub claims: Vec<TableBClaim>,
}

/// The tabulated symmetric-tritter rows: five input-side, three output-side.
pub fn table_b_rows() -> Vec<TableBRow> {
    let p = |s: &str| Permutation::parse(s, 3).expect("valid cycle");
    let d = |a: f64, b: f64, c: f64| vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0), Complex64::new(c, 0.0)];
    let w = |k: f64| Complex64::from_polar(1.0, 2.0 * PI * k / 3.0);
    let claim = |input, output, parity| TableBClaim { input, output, parity };
    use InputFamily::{I, II};
    use OutputFamily::{N11, N20};
    use TritterFamily::{T1, T2};
    let tr = |family, tau: f64, theta| TableBDevice::Tritter { family, tau, theta };
    vec![
        TableBRow {
            label: "a1".into(),
            side: Side::Input,
            sigma: p("(12)"),
            device: tr(T2, 1.0, None),
            lambda: d(-1.0, 1.0, 1.0),
            claims: vec![claim(II, N11, Parity::Odd), claim(II, N20, Parity::Odd)],
        },
        TableBRow {
            label: "a2".into(),
            side: Side::Input,
            sigma: p("(12)"),
            device: tr(T2, 0.0, Some(0.0)),
            lambda: d(1.0, -1.0, 1.0),
            claims: vec![claim(II, N11, Parity::Any)],
        },
        TableBRow {
            label: "a3".into(),
            side: Side::Input,
            sigma: p("(12)"),
            device: tr(T2, 0.0, Some(PI)),
            lambda: d(1.0, 1.0, -1.0),
            claims: vec![claim(II, N11, Parity::Any)],
        },
        TableBRow {
            label: "a4".into(),
            side: Side::Input,
            sigma: p("(123)"),
            device: TableBDevice::Fourier,
            lambda: vec![w(0.0), w(1.0), w(2.0)],
            claims: vec![claim(II, N20, Parity::Any)],
        },
        TableBRow {
            label: "a5".into(),
            side: Side::Input,
            sigma: p("(321)"),
            device: TableBDevice::Fourier,
            lambda: vec![w(0.0), w(2.0), w(1.0)],
            claims: vec![claim(II, N20, Parity::Any)],
        },
        TableBRow {
            label: "b1".into(),
            side: Side::Output,
            sigma: p("(23)"),
            device: tr(T1, 1.0, None),
            lambda: d(1.0, -1.0, 1.0),
            claims: vec![claim(I, N11, Parity::Any), claim(II, N11, Parity::Any)],
        },
        TableBRow {
            label: "b2".into(),
            side: Side::Output,
            sigma: p("(23)"),
            device: tr(T1, 0.0, None),
            lambda: d(-1.0, 1.0, 1.0),
            claims: vec![claim(I, N11, Parity::Odd), claim(II, N11, Parity::Odd)],
        },
        TableBRow {
            label: "b3".into(),
            side: Side::Output,
            sigma: p("(23)"),
            device: tr(T2, 1.0, None),
            lambda: d(1.0, 1.0, -1.0),
            claims: vec![claim(I, N11, Parity::Any), claim(II, N11, Parity::Any)],
        },
    ]
}

/// One (claim, size, θ) evaluation of a row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableBInstance {
    pub claim: usize,
    pub size: usize,
    pub theta: f64,
    pub input: String,
    pub output: String,
    /// The row claims suppression for this n₁.
    pub claimed: bool,
    /// The symmetry forces a zero (gauge-independent phase test).
    pub predicted: bool,
    /// The bare eigenvalue-product rule on the varying configuration.
    pub lambda_rule: bool,
    pub amplitude: f64,
}

impl TableBInstance {
    pub fn suppressed(&self) -> bool {
        self.amplitude < tolerance::ZERO_AMPLITUDE
    }

    /// Prediction agrees with the amplitude.
    pub fn prediction_holds(&self) -> bool {
        !self.predicted || self.suppressed()
    }

    pub fn claim_holds(&self) -> bool {
        !self.claimed || self.suppressed()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableBReport {
    pub label: String,
    pub sigma: String,
    pub side: Side,
    pub device: String,
    /// Stated Λ completes to a valid factorization at every sampled θ.
    pub stated_lambda_factorizes: bool,
    /// The unconstrained solver also finds a factorization at every sampled θ.
    pub solver_factorizes: bool,
    /// Z solved from the stated Λ at the first sampled θ.
    pub z: Vec<Complex64>,
    pub max_residual: f64,
    pub instances: Vec<TableBInstance>,
}

impl TableBReport {
    pub fn predictions_hold(&self) -> bool {
        self.instances.iter().all(|i| i.prediction_holds())
    }

    pub fn claims_hold(&self) -> bool {
        self.instances.iter().all(|i| i.claim_holds())
    }

    /// Claimed instances that the principle itself does not predict.
    pub fn overclaims(&self) -> Vec<&TableBInstance> {
        self.instances.iter().filter(|i| i.claimed && !i.predicted).collect()
    }

    /// Claimed instances whose amplitude is not actually zero.
    pub fn failed_claims(&self) -> Vec<&TableBInstance> {
        self.instances.iter().filter(|i| !i.claim_holds()).collect()
    }
}

impl TableBRow {
    /// Check the row for size parameters 1..=max_size at each sampled θ.
    pub fn check(&self, max_size: usize) -> Result<TableBReport> {
        let mut stated_ok = true;
        let mut solver_ok = true;
        let mut z = Vec::new();
        let mut max_residual = 0.0f64;
        let mut instances = Vec::new();
        for (ti, theta) in self.device.thetas().into_iter().enumerate() {
            let u = self.device.build(theta)?;
            solver_ok &= solve_phase_factorization(&u, &self.sigma, self.side).is_some();
            let Some(pair) = complete_with_lambda(&u, &self.sigma, self.side, &self.lambda) else {
                stated_ok = false;
                continue;
            };
            max_residual = max_residual.max(pair.residual);
            if ti == 0 {
                z = pair.z.clone();
            }
            for (ci, c) in self.claims.iter().enumerate() {
                for size in 1..=max_size {
                    let m = c.input.occupation(size);
                    let n = c.output.occupation(m.total())?;
                    let n1 = n[0];
                    let claimed = match c.parity {
                        Parity::Any => true,
                        Parity::Odd => n1 % 2 == 1,
                    };
                    let varying = match self.side {
                        Side::Input => &n,
                        Side::Output => &m,
                    };
                    instances.push(TableBInstance {
                        claim: ci,
                        size,
                        theta,
                        input: m.to_string(),
                        output: n.to_string(),
                        claimed,
                        predicted: pair.forces_zero(&m, &n),
                        lambda_rule: predict_suppressed(&pair, varying),
                        amplitude: amp_permanent(&u, &m, &n)?.norm(),
                    });
                }
            }
        }
        Ok(TableBReport {
            label: self.label.clone(),
            sigma: self.sigma.to_string(),
            side: self.side,
            device: self.device.to_string(),
            stated_lambda_factorizes: stated_ok,
            solver_factorizes: solver_ok,
            z,
            max_residual,
            instances,
        })
    }
}
