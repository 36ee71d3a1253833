use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{factorial_exact, ln_factorial, OccupationVector, EXACT_FACTORIAL_LIMIT};

/// Nonnegative integer table S with S_kl photons routed from input k to output l.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContingencyTable {
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

impl ContingencyTable {
    /// Row-major entries.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, k: usize, l: usize) -> usize {
        self.entries[k * self.cols + l]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.rows).map(|k| (0..self.cols).map(|l| self.get(k, l)).sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.cols).map(|l| (0..self.rows).map(|k| self.get(k, l)).sum()).collect()
    }

    pub fn has_margins(&self, m: &OccupationVector, n: &OccupationVector) -> bool {
        self.row_sums() == m.counts() && self.col_sums() == n.counts()
    }
}

impl fmt::Display for ContingencyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for k in 0..self.rows {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for l in 0..self.cols {
                if l > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(k, l))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn check_margins(m: &OccupationVector, n: &OccupationVector) -> Result<()> {
    if m.total() != n.total() {
        return Err(Error::Contract(format!(
            "margins {m} and {n} have different totals ({} vs {})",
            m.total(),
            n.total()
        )));
    }
    Ok(())
}

/// Visit every table with row margins `m` and column margins `n` exactly once.
///
/// Cells are filled row-major; a cell's value is bounded below so that the
/// remaining columns of its row can still absorb the row remainder.
pub fn for_each_table<F: FnMut(&ContingencyTable)>(
    m: &OccupationVector,
    n: &OccupationVector,
    mut visit: F,
) -> Result<()> {
    check_margins(m, n)?;
    let rows = m.modes();
    let cols = n.modes();
    if rows == 0 || cols == 0 {
        if m.total() == 0 {
            visit(&ContingencyTable { rows, cols, entries: Vec::new() });
        }
        return Ok(());
    }
    let mut state = Fill {
        rows,
        cols,
        row_left: m.counts().to_vec(),
        col_left: n.counts().to_vec(),
        table: ContingencyTable { rows, cols, entries: vec![0; rows * cols] },
    };
    state.descend(0, &mut visit);
    Ok(())
}

struct Fill {
    rows: usize,
    cols: usize,
    row_left: Vec<usize>,
    col_left: Vec<usize>,
    table: ContingencyTable,
}

impl Fill {
    fn descend<F: FnMut(&ContingencyTable)>(&mut self, cell: usize, visit: &mut F) {
        if cell == self.rows * self.cols {
            visit(&self.table);
            return;
        }
        let (k, l) = (cell / self.cols, cell % self.cols);
        let hi = self.row_left[k].min(self.col_left[l]);
        let room_right: usize = self.col_left[l + 1..].iter().sum();
        let lo = self.row_left[k].saturating_sub(room_right);
        // The last row must exhaust every column.
        let lo = if k + 1 == self.rows { lo.max(self.col_left[l]) } else { lo };
        if lo > hi {
            return;
        }
        for v in lo..=hi {
            self.table.entries[cell] = v;
            self.row_left[k] -= v;
            self.col_left[l] -= v;
            self.descend(cell + 1, visit);
            self.row_left[k] += v;
            self.col_left[l] += v;
        }
        self.table.entries[cell] = 0;
    }
}

/// All tables with the given margins, in enumeration order.
pub fn tables_with_margins(m: &OccupationVector, n: &OccupationVector) -> Result<Vec<ContingencyTable>> {
    let mut out = Vec::new();
    for_each_table(m, n, |t| out.push(t.clone()))?;
    Ok(out)
}

/// Fisher–Yates weight (1/N!) Π_k m_k! Π_l n_l! / Π_kl S_kl!.
///
/// Exact rational arithmetic for N ≤ 20, log-factorials beyond.
pub fn fisher_yates(s: &ContingencyTable, m: &OccupationVector, n: &OccupationVector) -> Result<f64> {
    check_margins(m, n)?;
    if !s.has_margins(m, n) {
        return Err(Error::Contract(format!("table {s} does not have margins {m}, {n}")));
    }
    let total = m.total();
    if total <= EXACT_FACTORIAL_LIMIT {
        let f = |k: usize| factorial_exact(k).expect("within exact range") as u128;
        let num: u128 = m.counts().iter().chain(n.counts()).fold(1u128, |a, &c| a * f(c));
        let num_a: u128 = m.counts().iter().fold(1u128, |a, &c| a * f(c));
        let num_b: u128 = n.counts().iter().fold(1u128, |a, &c| a * f(c));
        debug_assert_eq!(num, num_a * num_b);
        let den_a = f(total);
        let den_b: u128 = s.entries().iter().fold(1u128, |a, &c| a * f(c));
        // Cancel pairwise before multiplying so nothing overflows.
        let (a1, b1) = reduce(num_a, den_a);
        let (a2, b2) = reduce(num_b, den_b);
        let (a1, b2) = reduce(a1, b2);
        let (a2, b1) = reduce(a2, b1);
        Ok((a1 as f64 * a2 as f64) / (b1 as f64 * b2 as f64))
    } else {
        let ln = m.counts().iter().chain(n.counts()).map(|&c| ln_factorial(c)).sum::<f64>()
            - ln_factorial(total)
            - s.entries().iter().map(|&c| ln_factorial(c)).sum::<f64>();
        Ok(ln.exp())
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduce(a: u128, b: u128) -> (u128, u128) {
    let g = gcd(a, b).max(1);
    (a / g, b / g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occ(v: &[usize]) -> OccupationVector {
        OccupationVector::new(v.to_vec())
    }

    #[test]
    fn hand_enumerations() {
        let t = tables_with_margins(&occ(&[1, 1]), &occ(&[1, 1])).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.iter().any(|s| s.entries() == [1, 0, 0, 1]));
        assert!(t.iter().any(|s| s.entries() == [0, 1, 1, 0]));

        let t = tables_with_margins(&occ(&[2, 0]), &occ(&[1, 1])).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].entries(), [1, 1, 0, 0]);

        assert!(tables_with_margins(&occ(&[2, 0]), &occ(&[1, 0])).is_err());
    }

    #[test]
    fn fisher_yates_hand_values() {
        let m = occ(&[1, 1]);
        let s = ContingencyTable::from_rows(2, 2, vec![1, 0, 0, 1]).unwrap();
        assert!((fisher_yates(&s, &m, &m).unwrap() - 0.5).abs() < 1e-15);
        let s = ContingencyTable::from_rows(2, 2, vec![1, 1, 0, 0]).unwrap();
        assert!((fisher_yates(&s, &occ(&[2, 0]), &m).unwrap() - 1.0).abs() < 1e-15);
        let bad = ContingencyTable::from_rows(2, 2, vec![2, 0, 0, 0]).unwrap();
        assert!(fisher_yates(&bad, &occ(&[2, 0]), &m).is_err());
    }

    #[test]
    fn large_photon_numbers_use_logs() {
        let m = occ(&[12, 11]);
        let n = occ(&[11, 12]);
        let mut sum = 0.0;
        for_each_table(&m, &n, |s| sum += fisher_yates(s, &m, &n).unwrap()).unwrap();
        assert!((sum - 1.0).abs() < 1e-12);
    }
}
