use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::Interferometer;

/// The two one-parameter tritter families.
///
/// T1 varies the first beamsplitter (τ₂ = 2/3, τ₃ = 1/2 fixed); T2 varies
/// the second (τ₁ = τ₃ = 1/2 fixed). Both carry the phase plate e^{iθ}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TritterFamily {
    T1,
    T2,
}

impl TritterFamily {
    pub const ALL: [TritterFamily; 2] = [TritterFamily::T1, TritterFamily::T2];

    /// τ at which the family meets the symmetric tritters.
    pub fn symmetric_tau(&self) -> f64 {
        match self {
            TritterFamily::T1 => 0.5,
            TritterFamily::T2 => 2.0 / 3.0,
        }
    }
}

impl fmt::Display for TritterFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TritterFamily::T1 => "T1",
            TritterFamily::T2 => "T2",
        })
    }
}

impl FromStr for TritterFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "t1" | "1" => Ok(TritterFamily::T1),
            "t2" | "2" => Ok(TritterFamily::T2),
            other => Err(Error::Parse(format!("unknown tritter family '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TritterParams {
    pub family: TritterFamily,
    pub tau: f64,
    pub theta: f64,
}

impl TritterParams {
    pub fn new(family: TritterFamily, tau: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::Domain(format!("tritter parameter tau = {tau} outside [0, 1]")));
        }
        if !theta.is_finite() {
            return Err(Error::Domain(format!("tritter phase {theta} is not finite")));
        }
        Ok(Self { family, tau, theta })
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Explicit 3×3 matrix of the family member.
pub fn tritter(p: TritterParams) -> Result<Interferometer> {
    let p = TritterParams::new(p.family, p.tau, p.theta)?;
    let t = p.tau;
    let r = 1.0 - t;
    let e = Complex64::from_polar(1.0, p.theta);
    let m = match p.family {
        TritterFamily::T1 => {
            let (st, sr, s2) = (t.sqrt(), r.sqrt(), 2f64.sqrt());
            let (s3r, s3t) = ((3.0 * r).sqrt(), (3.0 * t).sqrt());
            let rows = [
                c(2.0 * st, 0.0),
                -e * st - c(0.0, s3r),
                -e * st + c(0.0, s3r),
                c(2.0 * sr, 0.0),
                -e * sr + c(0.0, s3t),
                -e * sr - c(0.0, s3t),
                c(s2, 0.0),
                e * s2,
                e * s2,
            ];
            DMatrix::from_row_slice(3, 3, &rows) / c(6f64.sqrt(), 0.0)
        }
        TritterFamily::T2 => {
            let (s2t, sr) = ((2.0 * t).sqrt(), r.sqrt());
            let i = c(0.0, 1.0);
            let rows = [
                c(s2t, 0.0),
                -i - e * sr,
                i - e * sr,
                c(s2t, 0.0),
                i - e * sr,
                -i - e * sr,
                c(2.0 * sr, 0.0),
                e * s2t,
                e * s2t,
            ];
            DMatrix::from_row_slice(3, 3, &rows) / c(2.0, 0.0)
        }
    };
    Interferometer::new(m)
}

/// Three-mode Fourier tritter Ts.
pub fn fourier_tritter() -> Interferometer {
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let w2 = w * w;
    let one = c(1.0, 0.0);
    let m = DMatrix::from_row_slice(3, 3, &[one, w2, w, one, w, w2, one, one, one]) / c(3f64.sqrt(), 0.0);
    Interferometer::new(m).expect("Fourier tritter is unitary")
}

/// The real orthogonal symmetric tritter T̃s.
pub fn real_symmetric_tritter() -> Interferometer {
    let s3 = 3f64.sqrt();
    let a = -(1.0 + s3) / 2.0;
    let b = (s3 - 1.0) / 2.0;
    let m = DMatrix::from_row_slice(3, 3, &[1.0, a, b, 1.0, b, a, 1.0, 1.0, 1.0]).map(|x| c(x / s3, 0.0));
    Interferometer::new(m).expect("real symmetric tritter is orthogonal")
}

/// Four-factor construction Ts(θ) = A·B·diag(1, 1, e^{iθ})·D.
///
/// Ts(0) and Ts(π/2) reproduce Ts and T̃s only after diagonal phases are
/// factored out on both inputs and outputs; see [`phase_fit`](super::phase_fit).
pub fn symmetric_tritter(theta: f64) -> Interferometer {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let a = DMatrix::from_row_slice(3, 3, &[c(-h, 0.0), c(0.0, h), z, c(0.0, h), c(-h, 0.0), z, z, z, one]);
    let (r23, r13) = ((2.0f64 / 3.0).sqrt(), 3f64.sqrt().recip());
    let b = DMatrix::from_row_slice(3, 3, &[c(r23, 0.0), z, c(0.0, r13), z, one, z, c(0.0, r13), z, c(r23, 0.0)]);
    let ph = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![one, one, Complex64::from_polar(1.0, theta)]));
    let d = DMatrix::from_row_slice(3, 3, &[one, z, z, z, c(h, 0.0), c(0.0, -h), z, c(0.0, h), c(-h, 0.0)]);
    Interferometer::new(a * b * ph * d).expect("product of unitaries")
}
