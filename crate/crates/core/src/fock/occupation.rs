use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::factorial;

/// Photon counts per mode. Mode indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector(Vec<usize>);

impl OccupationVector {
    pub fn new(counts: impl Into<Vec<usize>>) -> Self {
        Self(counts.into())
    }

    pub fn vacuum(modes: usize) -> Self {
        Self(vec![0; modes])
    }

    /// `total` photons in mode `k` of an `modes`-mode register.
    pub fn single_mode(modes: usize, k: usize, total: usize) -> Self {
        let mut v = vec![0; modes];
        v[k] = total;
        Self(v)
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Photon number N.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Photons outside mode 0, i.e. |n_S|.
    pub fn tail_total(&self) -> usize {
        self.0.iter().skip(1).sum()
    }

    /// Copy with one photon removed from mode `k`; `None` if the mode is empty.
    pub fn decrement(&self, k: usize) -> Option<Self> {
        let c = *self.0.get(k)?;
        if c == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[k] -= 1;
        Some(Self(v))
    }

    pub fn increment(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v[k] += 1;
        Self(v)
    }

    /// Π_k m_k! as a float.
    pub fn factorial_product(&self) -> f64 {
        self.0.iter().map(|&c| factorial(c)).product()
    }

    /// Reorder entries: result[i] = self[source[i]].
    pub fn gather(&self, source: &[usize]) -> Self {
        Self(source.iter().map(|&j| self.0[j]).collect())
    }

    /// Every occupation of `modes` modes carrying `total` photons, in
    /// reverse lexicographic order (most photons in mode 0 first).
    pub fn all_with_total(modes: usize, total: usize) -> Vec<Self> {
        fn rec(modes: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<OccupationVector>) {
            if cur.len() + 1 == modes {
                cur.push(left);
                out.push(OccupationVector(cur.clone()));
                cur.pop();
                return;
            }
            for c in (0..=left).rev() {
                cur.push(c);
                rec(modes, left - c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if modes == 0 {
            if total == 0 {
                out.push(Self(Vec::new()));
            }
            return out;
        }
        rec(modes, total, &mut Vec::with_capacity(modes), &mut out);
        out
    }
}

impl Index<usize> for OccupationVector {
    type Output = usize;
    fn index(&self, k: usize) -> &usize {
        &self.0[k]
    }
}

impl From<Vec<usize>> for OccupationVector {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[usize; N]> for OccupationVector {
    fn from(v: [usize; N]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `1,2,0` or `(1,2,0)`.
impl FromStr for OccupationVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        if t.trim().is_empty() {
            return Err(Error::Parse(format!("empty occupation vector '{s}'")));
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad photon count '{}' in '{s}': {e}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}
