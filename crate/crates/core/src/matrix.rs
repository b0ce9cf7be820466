use std::fmt;

use crate::model::VarId;
use crate::peo::Peo;
use crate::report::{ValidationReport, Violation};

/// `n × n` lower-triangular vine matrix. Indices are one-based, as in
/// `m[i][j]` with `i ≥ j`; entries above the diagonal are zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VineMatrix {
    n: usize,
    entries: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("row {row} must have {row} entries, found {found}")]
pub struct ShapeError {
    pub row: usize,
    pub found: usize,
}

impl VineMatrix {
    pub(crate) fn zeros(n: usize) -> Self {
        VineMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    /// Builds a matrix from its lower-triangle rows; row `i` carries `i` values.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, ShapeError> {
        let mut m = VineMatrix::zeros(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(ShapeError {
                    row: i + 1,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i + 1, j + 1, v);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `m_{i,j}`, one-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: u32) {
        self.entries[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn diagonal_values(&self) -> Vec<u32> {
        (1..=self.n).map(|i| self.get(i, i)).collect()
    }

    /// The diagonal read as an ordering, if every entry is a valid index.
    pub fn diagonal(&self) -> Option<Peo> {
        let vars: Option<Vec<VarId>> = self.diagonal_values().into_iter().map(VarId::new).collect();
        Peo::new(vars?).ok()
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (1..=self.n)
            .map(|i| (1..=i).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Checks the shape rules every vine matrix obeys: a permutation on the
    /// diagonal, and each column below it drawn without repetition from the
    /// diagonal values further down.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.n;
        if n < 2 {
            report.push(Violation::MatrixTooSmall { n });
            return report;
        }
        for i in 1..=n {
            for j in i + 1..=n {
                if self.get(i, j) != 0 {
                    report.push(Violation::NonzeroAboveDiagonal { row: i, col: j });
                }
            }
            for j in 1..=i {
                let v = self.get(i, j);
                if v == 0 || v as usize > n {
                    report.push(Violation::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        if !report.is_ok() {
            return report;
        }

        let mut diag = self.diagonal_values();
        diag.sort_unstable();
        if diag != (1..=n as u32).collect::<Vec<_>>() {
            report.push(Violation::DiagonalNotPermutation);
            return report;
        }
        for j in 1..n {
            let later: Vec<u32> = (j + 1..=n).map(|k| self.get(k, k)).collect();
            let mut seen = vec![self.get(j, j)];
            for i in j + 1..=n {
                let v = self.get(i, j);
                if seen.contains(&v) {
                    report.push(Violation::DuplicateInColumn { col: j, value: v });
                } else if !later.contains(&v) {
                    report.push(Violation::EntryNotFromLaterDiagonal {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                seen.push(v);
            }
        }
        report
    }
}

impl fmt::Display for VineMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Free-function form of [`VineMatrix::validate`].
pub fn validate_matrix(m: &VineMatrix) -> ValidationReport {
    m.validate()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::VineMatrix;

    pub fn m5() -> VineMatrix {
        VineMatrix::from_rows(&[
            vec![4],
            vec![5, 1],
            vec![1, 5, 2],
            vec![2, 3, 5, 3],
            vec![3, 2, 3, 5, 5],
        ])
        .unwrap()
    }
}
