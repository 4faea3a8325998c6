use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("cannot multiply a {0}x{1} matrix by a {2}x{3} matrix")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("bad matrix literal: {0}")]
    Parse(String),
}

/// A dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Entrywise reduction to `0..modulus`.
    pub fn reduce(&self, modulus: u64) -> IntMatrix {
        let q = modulus as i64;
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| x.rem_euclid(q)).collect(),
        }
    }

    /// Positions `(row, col)` where `self` and `other` differ.
    pub fn differences(&self, other: &IntMatrix) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.rows != other.rows || self.cols != other.cols {
            return out;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) != other.get(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }
}

/// `[[1,0],[0,1]]`; an `r x 0` matrix prints as `r` empty rows and `0 x c`
/// as `[]` (the column count is then not recoverable from the text).
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl FromStr for IntMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MatrixError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        if inner.is_empty() {
            return Ok(IntMatrix::zeros(0, 0));
        }
        let body = inner.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let mut rows = Vec::new();
        for row in body.split("],[") {
            let values = if row.is_empty() {
                Vec::new()
            } else {
                row.split(',')
                    .map(|v| v.parse::<i64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            rows.push(values);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(bad());
        }
        Ok(IntMatrix::new(rows.len(), cols, rows.concat()))
    }
}
