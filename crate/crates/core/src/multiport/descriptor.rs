use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::Interferometer;
use crate::multiport::{
    beamsplitter, fourier_tritter, real_symmetric_tritter, symmetric_tritter, tritter, BeamsplitterParams,
    TritterFamily, TritterParams,
};
use crate::tolerance;

/// A multiport named by a short spec string.
///
/// | spec | device |
/// |---|---|
/// | `bs:tau=0.5,phi=0` | beamsplitter |
/// | `t1:tau=0.75,theta=pi/2` | tritter family T1 |
/// | `t2:tau=2/3,theta=0` | tritter family T2 |
/// | `ts:theta=0` | four-factor symmetric tritter Ts(θ) |
/// | `fourier` | Fourier tritter Ts |
/// | `ts-real` | real symmetric tritter T̃s |
/// | `matrix:path.csv` or `matrix:path.csv,tol=1e-10` | CSV of complex entries |
#[derive(Clone, Debug, PartialEq)]
pub enum MultiportSpec {
    Beamsplitter(BeamsplitterParams),
    Tritter(TritterParams),
    SymmetricTritter { theta: f64 },
    Fourier,
    RealSymmetric,
    Matrix { path: PathBuf, tolerance: f64 },
}

/// Parse a number or a multiple of π: `0.25`, `2/3`, `pi`, `-pi/2`, `3pi/4`, `1.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let err = || Error::Parse(format!("cannot read '{s}' as a number"));
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    if t.is_empty() {
        return Err(err());
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| err())?),
        None => (t.clone(), 1.0),
    };
    let (sign, body) = match num.strip_prefix('-') {
        Some(rest) => (-1.0, rest.to_string()),
        None => (1.0, num.strip_prefix('+').unwrap_or(&num).to_string()),
    };
    let value = if let Some(coef) = body.strip_suffix("pi") {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let k = if coef.is_empty() { 1.0 } else { coef.parse::<f64>().map_err(|_| err())? };
        k * std::f64::consts::PI
    } else {
        body.parse::<f64>().map_err(|_| err())?
    };
    let v = sign * value / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(err())
    }
}

fn key_values(body: &str) -> Result<Vec<(String, String)>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, found '{kv}'")))?;
            Ok((k.trim().to_ascii_lowercase(), v.trim().to_string()))
        })
        .collect()
}

fn take(kv: &[(String, String)], allowed: &[&str], key: &str, default: Option<f64>) -> Result<f64> {
    if let Some((bad, _)) = kv.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        return Err(Error::Parse(format!("unexpected parameter '{bad}' (expected {})", allowed.join(", "))));
    }
    match kv.iter().find(|(k, _)| k == key) {
        Some((_, v)) => parse_angle(v),
        None => default.ok_or_else(|| Error::Parse(format!("missing parameter '{key}'"))),
    }
}

impl FromStr for MultiportSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, body) = s.split_once(':').unwrap_or((s, ""));
        let name = name.trim().to_ascii_lowercase();
        if name == "matrix" {
            let mut parts = body.rsplitn(2, ",tol=");
            let last = parts.next().unwrap_or("");
            let (path, tol) = match parts.next() {
                Some(p) => (p, parse_angle(last)?),
                None => (last, tolerance::UNITARITY),
            };
            if path.trim().is_empty() {
                return Err(Error::Parse("matrix spec needs a path".into()));
            }
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::Parse(format!("unitarity tolerance must be positive, got {tol}")));
            }
            return Ok(MultiportSpec::Matrix { path: PathBuf::from(path.trim()), tolerance: tol });
        }
        let kv = key_values(body)?;
        match name.as_str() {
            "bs" => {
                let allowed = ["tau", "phi"];
                let tau = take(&kv, &allowed, "tau", None)?;
                let phi = take(&kv, &allowed, "phi", Some(0.0))?;
                Ok(MultiportSpec::Beamsplitter(BeamsplitterParams::new(tau, phi)?))
            }
            "t1" | "t2" => {
                let allowed = ["tau", "theta"];
                let tau = take(&kv, &allowed, "tau", None)?;
                let theta = take(&kv, &allowed, "theta", Some(0.0))?;
                let family = name.parse::<TritterFamily>()?;
                Ok(MultiportSpec::Tritter(TritterParams::new(family, tau, theta)?))
            }
            "ts" => {
                let theta = take(&kv, &["theta"], "theta", Some(0.0))?;
                Ok(MultiportSpec::SymmetricTritter { theta })
            }
            "fourier" if kv.is_empty() => Ok(MultiportSpec::Fourier),
            "ts-real" if kv.is_empty() => Ok(MultiportSpec::RealSymmetric),
            _ => Err(Error::Parse(format!("unknown multiport spec '{s}'"))),
        }
    }
}

impl fmt::Display for MultiportSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiportSpec::Beamsplitter(p) => write!(f, "bs:tau={},phi={}", p.tau, p.phi),
            MultiportSpec::Tritter(p) => {
                write!(f, "{}:tau={},theta={}", p.family.to_string().to_ascii_lowercase(), p.tau, p.theta)
            }
            MultiportSpec::SymmetricTritter { theta } => write!(f, "ts:theta={theta}"),
            MultiportSpec::Fourier => f.write_str("fourier"),
            MultiportSpec::RealSymmetric => f.write_str("ts-real"),
            MultiportSpec::Matrix { path, .. } => write!(f, "matrix:{}", path.display()),
        }
    }
}

impl MultiportSpec {
    pub fn build(&self) -> Result<Interferometer> {
        match self {
            MultiportSpec::Beamsplitter(p) => beamsplitter(*p),
            MultiportSpec::Tritter(p) => tritter(*p),
            MultiportSpec::SymmetricTritter { theta } => Ok(symmetric_tritter(*theta)),
            MultiportSpec::Fourier => Ok(fourier_tritter()),
            MultiportSpec::RealSymmetric => Ok(real_symmetric_tritter()),
            MultiportSpec::Matrix { path, tolerance } => {
                Interferometer::with_tolerance(load_matrix_csv(path)?, *tolerance)
            }
        }
    }
}

/// Parse rows of comma-separated complex numbers (`0.5`, `-0.5i`, `0.3+0.4i`).
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix_csv(text: &str) -> Result<DMatrix<Complex64>> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                let cell: String = cell.chars().filter(|c| !c.is_whitespace()).collect();
                cell.replace('j', "i")
                    .parse::<Complex64>()
                    .map_err(|_| Error::Parse(format!("line {}: cannot read '{cell}' as a complex number", lineno + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse("matrix file has no rows".into()));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: bad.len() });
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn load_matrix_csv(path: &Path) -> Result<DMatrix<Complex64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix_csv(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!((parse_angle("2/3").unwrap() - 2.0 / 3.0).abs() < 1e-16);
        assert!((parse_angle("pi").unwrap() - PI).abs() < 1e-16);
        assert!((parse_angle("-pi/2").unwrap() + PI / 2.0).abs() < 1e-16);
        assert!((parse_angle("3pi/4").unwrap() - 0.75 * PI).abs() < 1e-16);
        assert!((parse_angle("1.5*pi").unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("").is_err());
    }

    #[test]
    fn spec_strings() {
        let s: MultiportSpec = "bs:tau=0.5,phi=0".parse().unwrap();
        assert_eq!(s, MultiportSpec::Beamsplitter(BeamsplitterParams { tau: 0.5, phi: 0.0 }));
        let s: MultiportSpec = "t1:tau=0.75,theta=1.5708".parse().unwrap();
        assert!(matches!(s, MultiportSpec::Tritter(p) if p.family == TritterFamily::T1 && p.tau == 0.75));
        assert!(
            matches!("ts:theta=0".parse::<MultiportSpec>().unwrap(), MultiportSpec::SymmetricTritter { theta } if theta == 0.0)
        );
        assert!("bs:tau=1.5".parse::<MultiportSpec>().is_err());
        assert!("bs:phi=0".parse::<MultiportSpec>().is_err());
        assert!("bs:tau=0.5,x=1".parse::<MultiportSpec>().is_err());
        assert!("foo:tau=1".parse::<MultiportSpec>().is_err());
        let m: MultiportSpec = "matrix:/tmp/u.csv,tol=1e-9".parse().unwrap();
        assert_eq!(m, MultiportSpec::Matrix { path: "/tmp/u.csv".into(), tolerance: 1e-9 });
    }

    #[test]
    fn csv_matrix() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let text = format!("# balanced\n{h}, -{h}\n{h}i, {h}i\n");
        let m = parse_matrix_csv(&text).unwrap();
        assert_eq!(m[(1, 0)], Complex64::new(0.0, h));
        assert!(Interferometer::new(m).is_ok());
        assert!(matches!(parse_matrix_csv("1,0\n0"), Err(Error::NotSquare { .. })));
        assert!(parse_matrix_csv("1,x\n0,1").is_err());
    }
}
