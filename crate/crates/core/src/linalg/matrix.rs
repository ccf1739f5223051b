use std::fmt;

use num_bigint::BigInt;

use crate::linalg::LinalgError;
use crate::scalar::ExactInt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<T>,
}

impl<T: ExactInt> IntegerMatrix<T> {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<T>) -> Result<Self, LinalgError> {
        if entries.len() != n_rows * n_cols {
            return Err(LinalgError::Shape {
                expected: n_rows * n_cols,
                found: entries.len(),
            });
        }
        Ok(Self { n_rows, n_cols, entries })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            entries: vec![T::zero(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    /// Builds a matrix from nested rows. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(LinalgError::Shape {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { n_rows, n_cols, entries })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v).expect("i64 fits")).collect())
                .collect(),
        )
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.n_cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                out.push(self.get(i, j).clone());
            }
        }
        Self {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            entries: out,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(|v| -v.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.n_cols != other.n_rows {
            return Err(LinalgError::Shape {
                expected: self.n_cols,
                found: other.n_rows,
            });
        }
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let idx = i * other.n_cols + j;
                    let prod = a.clone() * other.get(k, j).clone();
                    out.entries[idx] = out.entries[idx].clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    /// Largest absolute entry, as f64 (saturating for huge values).
    pub fn max_abs_f64(&self) -> f64 {
        self.entries
            .iter()
            .map(|v| v.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    pub fn map<U: ExactInt>(&self, f: impl Fn(&T) -> U) -> IntegerMatrix<U> {
        IntegerMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn to_bigint(&self) -> IntegerMatrix<BigInt> {
        self.map(ExactInt::to_bigint)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n_cols {
            self.entries.swap(a * self.n_cols + j, b * self.n_cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.n_rows {
            self.entries.swap(i * self.n_cols + a, i * self.n_cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, q: &T) {
        for j in 0..self.n_cols {
            let s = self.entries[src * self.n_cols + j].clone();
            if s.is_zero() {
                continue;
            }
            let d = &mut self.entries[dst * self.n_cols + j];
            *d = d.clone() - q.clone() * s;
        }
    }

    /// `col[dst] -= q * col[src]`
    pub(crate) fn col_axpy(&mut self, dst: usize, src: usize, q: &T) {
        for i in 0..self.n_rows {
            let s = self.entries[i * self.n_cols + src].clone();
            if s.is_zero() {
                continue;
            }
            let d = &mut self.entries[i * self.n_cols + dst];
            *d = d.clone() - q.clone() * s;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.n_cols {
            let v = &mut self.entries[i * self.n_cols + j];
            *v = -v.clone();
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for IntegerMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix {}x{} [", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n_cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.entries[i * self.n_cols + j])?;
            }
        }
        write!(f, "]")
    }
}
