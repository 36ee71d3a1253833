use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{Interferometer, OccupationVector};
use crate::multiport::TritterFamily;

/// Input families on the tritter: I is (n₁, 1, 1), II is (m, m, m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InputFamily {
    I,
    II,
}

impl InputFamily {
    pub fn occupation(&self, size: usize) -> OccupationVector {
        match self {
            InputFamily::I => OccupationVector::from([size, 1, 1]),
            InputFamily::II => OccupationVector::from([size, size, size]),
        }
    }

    /// Name of the size parameter.
    pub fn size_name(&self) -> &'static str {
        match self {
            InputFamily::I => "n1",
            InputFamily::II => "m",
        }
    }
}

impl fmt::Display for InputFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputFamily::I => "I",
            InputFamily::II => "II",
        })
    }
}

impl FromStr for InputFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(InputFamily::I),
            "II" | "2" => Ok(InputFamily::II),
            other => Err(Error::Parse(format!("unknown input family '{other}' (expected I or II)"))),
        }
    }
}

/// Output families (n₁, a, b) with the photons outside mode 1 fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutputFamily {
    N11,
    N20,
    N10,
    N01,
}

impl OutputFamily {
    pub const ALL: [OutputFamily; 4] = [OutputFamily::N11, OutputFamily::N20, OutputFamily::N10, OutputFamily::N01];

    pub fn tail(&self) -> [usize; 2] {
        match self {
            OutputFamily::N11 => [1, 1],
            OutputFamily::N20 => [2, 0],
            OutputFamily::N10 => [1, 0],
            OutputFamily::N01 => [0, 1],
        }
    }

    /// The output carrying `total` photons.
    pub fn occupation(&self, total: usize) -> Result<OccupationVector> {
        let [a, b] = self.tail();
        if total < a + b {
            return Err(Error::Domain(format!("{total} photons cannot fill output {self}")));
        }
        Ok(OccupationVector::from([total - a - b, a, b]))
    }
}

impl fmt::Display for OutputFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.tail();
        write!(f, "(n1,{a},{b})")
    }
}

impl FromStr for OutputFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
        match t.as_str() {
            "11" | "111" => Ok(OutputFamily::N11),
            "20" | "120" => Ok(OutputFamily::N20),
            "10" | "110" => Ok(OutputFamily::N10),
            "01" | "101" => Ok(OutputFamily::N01),
            _ => Err(Error::Parse(format!("unknown output family '{s}' (expected 11, 20, 10 or 01)"))),
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Closed-form suppression function of a tritter family.
///
/// Supported: input II with every output family, input I with N11 and N20.
/// Each form is proportional, with a factor that does not vanish for
/// τ ∈ (0, 1), to the amplitude divided by its prefactor; so both share
/// their zeros in (0, 1).
pub fn tritter_suppression_value(
    family: TritterFamily,
    input: InputFamily,
    output: OutputFamily,
    tau: f64,
    theta: f64,
    size: usize,
) -> Result<Complex64> {
    use InputFamily::{I, II};
    use OutputFamily::{N01, N10, N11, N20};
    use TritterFamily::{T1, T2};
    if size == 0 {
        return Err(Error::Domain("size parameter must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain(format!("tau = {tau} outside [0, 1]")));
    }
    let t = tau;
    let n = size as f64;
    let e = Complex64::from_polar(1.0, theta);
    let e2 = e * e;
    let i = Complex64::i();
    let (s2, s6) = (2f64.sqrt(), 6f64.sqrt());
    let v = match (family, input, output) {
        (T1, II, N10) => c(n / 3.0 * (2.0 * t - 1.0)),
        (T1, II, N01) => c(-n / 3.0 * (2.0 * t - 1.0)),
        (T2, II, N10 | N01) => e * (n * s2 / 4.0 * (3.0 * t - 2.0) * t.sqrt()),
        (T1, I, N11) => {
            let lin = 4.0 * e2 + 3.0 * (1.0 + e2) * n + (3.0 - e2) * n * n;
            (c(3.0 * n * (n - 1.0)) - lin * t) * (s2 / 18.0 * (1.0 - t).sqrt())
        }
        (T2, I, N11) => {
            let b = e2 * ((2.0 + 3.0 * n + n * n) * t) + (3.0 - e2) * n - (1.0 + e2) * n * n;
            b * (s2 / 4.0 * (t * (1.0 - t)).sqrt())
        }
        (T1, II, N11) => (c(2.0) * (2.0 * n + e2 - 1.0) * ((t - 1.0) * t) + (n - 1.0)) * (n / 9.0),
        (T2, II, N11) => {
            let b = e2 * (3.0 * (3.0 * n - 1.0) * t * t) - (e2 * (6.0 * n - 2.0) - 1.0) * (2.0 * t)
                + e2 * (4.0 * n - 2.0)
                - 2.0;
            b * (n / 8.0 * t)
        }
        (T1, I, N20) => {
            let lin = 4.0 * e2 + 3.0 * (e2 - 1.0) * n - (3.0 + e2) * n * n;
            let first = (lin * t + 3.0 * n * (n - 1.0)) * (s2 / 18.0 * (1.0 - t).sqrt());
            let second = i * e * (n * (2.0 - n) - (2.0 + n - n * n) * t) * (s6 / 9.0 * t.sqrt());
            first + second
        }
        (T2, I, N20) => {
            let b = e2 * ((2.0 + 3.0 * n + n * n) * t) - (3.0 + e2 + (e2 - 1.0) * n) * n;
            let first = b * (s2 / 4.0 * (t * (1.0 - t)).sqrt());
            let second = i * e * ((1.0 - n) * (n - (1.0 + n) * t) * t.sqrt() / s2);
            first + second
        }
        (T1, II, N20) => {
            let first = (c(4.0 * n - 2.0) - 2.0 * e2) * ((1.0 - t) * t) - n + 1.0;
            let second = i * e * (2.0 * t - 1.0) * (3.0 * t * (1.0 - t)).sqrt();
            first * (n / 9.0) + second * (2.0 * n / 27.0)
        }
        (T2, II, N20) => {
            let b = e2 * ((9.0 * n - 3.0) * t * t) - (e2 * (6.0 * n - 2.0) + 1.0) * (2.0 * t)
                + (e2 * (2.0 * n - 1.0) + 1.0) * 2.0;
            b * (n / 8.0 * t)
        }
        (_, I, N10 | N01) => {
            return Err(Error::NotImplemented(format!(
                "closed form for input (n1,1,1) and output {output} (use the numeric path)"
            )))
        }
    };
    Ok(v)
}

/// The θ = 0 forms of (m,m,m) → (n₁,2,0) in factored form:
/// T1: (m/27)[3(m−1)(2τ−1) + 2i√(3τ(1−τ))](2τ−1),
/// T2: −(m/8)[(3m−1)τ − 2m](3τ − 2)τ.
///
/// They agree with [`tritter_suppression_value`] at θ = 0 up to a sign
/// (T2) or a sign and complex conjugation (T1), so the zeros coincide.
pub fn factored_n20_at_theta_zero(family: TritterFamily, m: usize, tau: f64) -> Complex64 {
    let (n, t) = (m as f64, tau);
    match family {
        TritterFamily::T1 => {
            let bracket = Complex64::new(3.0 * (n - 1.0) * (2.0 * t - 1.0), 2.0 * (3.0 * (1.0 - t) * t).sqrt());
            bracket * (n / 27.0 * (2.0 * t - 1.0))
        }
        TritterFamily::T2 => c(-(n / 8.0) * ((3.0 * n - 1.0) * t - 2.0 * n) * (3.0 * t - 2.0) * t),
    }
}

/// Suppression function written directly in the entries of a 3×3 U, for
/// any input m and the outputs N10, N01 (one photon outside mode 1) or
/// N11, N20 (two photons). Equal to the amplitude divided by
/// √(n₁!/(n_S!·m!)) Π_k U_k1^{m_k − |n_S|}, negative exponents included.
pub fn entry_suppression_function(u: &Interferometer, m: &OccupationVector, output: OutputFamily) -> Result<Complex64> {
    if u.dim() != 3 || m.modes() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: if u.dim() != 3 { u.dim() } else { m.modes() } });
    }
    let x = |k: usize, l: usize| u.entry(k - 1, l - 1);
    let (m1, m2, m3) = (m[0] as f64, m[1] as f64, m[2] as f64);
    let v = match output {
        OutputFamily::N10 | OutputFamily::N01 => {
            let l = if output == OutputFamily::N10 { 2 } else { 3 };
            x(1, l) * x(2, 1) * x(3, 1) * m1 + x(2, l) * x(1, 1) * x(3, 1) * m2 + x(3, l) * x(1, 1) * x(2, 1) * m3
        }
        OutputFamily::N11 => {
            let cross = x(1, 1)
                * x(2, 1)
                * x(3, 1)
                * ((x(1, 2) * x(2, 3) + x(2, 2) * x(1, 3)) * x(3, 1) * (m1 * m2)
                    + (x(1, 2) * x(3, 3) + x(3, 2) * x(1, 3)) * x(2, 1) * (m1 * m3)
                    + (x(2, 2) * x(3, 3) + x(3, 2) * x(2, 3)) * x(1, 1) * (m2 * m3));
            cross
                + x(1, 2) * x(1, 3) * (x(2, 1) * x(3, 1)).powu(2) * (m1 * (m1 - 1.0))
                + x(2, 2) * x(2, 3) * (x(1, 1) * x(3, 1)).powu(2) * (m2 * (m2 - 1.0))
                + x(3, 2) * x(3, 3) * (x(1, 1) * x(2, 1)).powu(2) * (m3 * (m3 - 1.0))
        }
        OutputFamily::N20 => {
            let cross = x(1, 1)
                * x(2, 1)
                * x(3, 1)
                * (x(1, 2) * x(2, 2) * x(3, 1) * (m1 * m2)
                    + x(1, 2) * x(3, 2) * x(2, 1) * (m1 * m3)
                    + x(2, 2) * x(3, 2) * x(1, 1) * (m2 * m3))
                * 2.0;
            cross
                + (x(1, 2) * x(2, 1) * x(3, 1)).powu(2) * (m1 * (m1 - 1.0))
                + (x(2, 2) * x(1, 1) * x(3, 1)).powu(2) * (m2 * (m2 - 1.0))
                + (x(3, 2) * x(1, 1) * x(2, 1)).powu(2) * (m3 * (m3 - 1.0))
        }
    };
    Ok(v)
}
