use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::OccupationVector;

/// A bijection σ on modes, stored 0-based as σ(i) = images[i].
///
/// Cycle notation is 1-based: `(123)` sends 1→2→3→1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Domain(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Build from 1-based cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                if a == 0 || a > degree || touched[a - 1] {
                    return Err(Error::Domain(format!("bad cycle {cycle:?} for degree {degree}")));
                }
                touched[a - 1] = true;
                let b = cycle[(pos + 1) % cycle.len()];
                if b == 0 || b > degree {
                    return Err(Error::Domain(format!("bad cycle {cycle:?} for degree {degree}")));
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// P_σ with (P_σ x)_i = x_{σ⁻¹(i)}.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let n = self.degree();
        let inv = self.inverse();
        DMatrix::from_fn(
            n,
            n,
            |i, j| {
                if j == inv.images[i] {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            },
        )
    }

    /// max |(P_rows·U·P_colsᵀ − U)_kl|: how far U is from being invariant
    /// under permuting its rows by `rows` and its columns by `cols` together.
    /// Such mixed invariances are recorded only; they predict no zeros.
    pub fn row_column_invariance(u: &DMatrix<Complex64>, rows: &Self, cols: &Self) -> f64 {
        let moved = rows.matrix() * u * cols.matrix().transpose();
        (moved - u).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// σ acting on an occupation: component i receives x_{σ⁻¹(i)}.
    pub fn act(&self, x: &OccupationVector) -> OccupationVector {
        x.gather(self.inverse().images())
    }

    pub fn fixes(&self, x: &OccupationVector) -> bool {
        x.modes() == self.degree() && self.act(x) == *x
    }

    /// All permutations of the given degree, in lexicographic order of images.
    pub fn all(degree: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..degree).collect();
        loop {
            out.push(Self { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] || self.images[s] == s {
                continue;
            }
            let mut cycle = vec![];
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        let sep = if self.degree() > 9 { "," } else { "" };
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(sep))?;
        }
        Ok(())
    }
}

impl Permutation {
    /// Parse cycle notation such as `(123)`, `(12)(3)`, `(1,3)` or `id`.
    pub fn parse(s: &str, degree: usize) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "id" || t == "()" || t.is_empty() {
            return Ok(Self::identity(degree));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation '{s}'")))?;
            let (inner, tail) = body;
            let elems: Result<Vec<usize>> = if inner.contains(',') {
                inner
                    .split(',')
                    .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad cycle '{inner}'"))))
                    .collect()
            } else {
                inner
                    .chars()
                    .map(|c| {
                        c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad cycle '{inner}'")))
                    })
                    .collect()
            };
            cycles.push(elems?);
            rest = tail;
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl FromStr for Permutation {
    type Err = Error;
    /// Degree is the largest element mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let max = s.chars().filter_map(|c| c.to_digit(10)).max().unwrap_or(0) as usize;
        Self::parse(s, max)
    }
}
