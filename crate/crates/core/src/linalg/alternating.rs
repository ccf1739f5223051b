use num_bigint::BigInt;

use crate::linalg::{IntegerMatrix, LinalgError};
use crate::scalar::ExactInt;

/// Alternating (skew-symmetric, zero-diagonal) square integer matrix.
///
/// Only the strict upper triangle is stored, row by row:
/// `a[0][1], a[0][2], .., a[0][n-1], a[1][2], ..`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingMatrix<T> {
    n: usize,
    upper: Vec<T>,
}

/// Number of free entries of an `n x n` alternating matrix.
pub const fn upper_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl<T: ExactInt> AlternatingMatrix<T> {
    pub fn new(n: usize, upper: Vec<T>) -> Result<Self, LinalgError> {
        if upper.len() != upper_len(n) {
            return Err(LinalgError::Shape {
                expected: upper_len(n),
                found: upper.len(),
            });
        }
        Ok(Self { n, upper })
    }

    pub fn from_i64(n: usize, upper: &[i64]) -> Result<Self, LinalgError> {
        Self::new(n, upper.iter().map(|&v| T::from_i64(v).expect("i64 fits")).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            upper: vec![T::zero(); upper_len(n)],
        }
    }

    /// Checks `A^T = -A` with zero diagonal.
    pub fn from_full(m: &IntegerMatrix<T>) -> Result<Self, LinalgError> {
        if m.n_rows() != m.n_cols() {
            return Err(LinalgError::NotSquare {
                rows: m.n_rows(),
                cols: m.n_cols(),
            });
        }
        let n = m.n_rows();
        let mut upper = Vec::with_capacity(upper_len(n));
        for i in 0..n {
            if !m.get(i, i).is_zero() {
                return Err(LinalgError::NotAlternating);
            }
            for j in i + 1..n {
                if m.get(i, j).clone() + m.get(j, i).clone() != T::zero() {
                    return Err(LinalgError::NotAlternating);
                }
                upper.push(m.get(i, j).clone());
            }
        }
        Ok(Self { n, upper })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Entry `a[i][j]` of the implied full matrix.
    pub fn entry(&self, i: usize, j: usize) -> T {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => T::zero(),
            Less => self.upper[self.index(i, j)].clone(),
            Greater => -self.upper[self.index(j, i)].clone(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(i != j, "diagonal of an alternating matrix is fixed at zero");
        if i < j {
            let k = self.index(i, j);
            self.upper[k] = value;
        } else {
            let k = self.index(j, i);
            self.upper[k] = -value;
        }
    }

    pub fn to_full(&self) -> IntegerMatrix<T> {
        let n = self.n;
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.upper[self.index(i, j)].clone();
                m.set(j, i, -v.clone());
                m.set(i, j, v);
            }
        }
        m
    }

    /// Simultaneous row and column permutation `P A P^T`; the result is
    /// alternating again. `perm[i]` is the old index placed at position `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.set(i, j, self.entry(perm[i], perm[j]));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(T::is_zero)
    }

    /// Squared Frobenius norm `sum_{i,j} a_ij^2 = 2 sum_{i<j} a_ij^2`.
    pub fn norm_sq(&self) -> T {
        let two = T::one() + T::one();
        self.upper
            .iter()
            .fold(T::zero(), |acc, v| acc + v.clone() * v.clone())
            * two
    }

    pub fn map<U: ExactInt>(&self, f: impl Fn(&T) -> U) -> AlternatingMatrix<U> {
        AlternatingMatrix {
            n: self.n,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    pub fn to_bigint(&self) -> AlternatingMatrix<BigInt> {
        self.map(ExactInt::to_bigint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_layout_round_trips_through_full() {
        let a = AlternatingMatrix::<i64>::from_i64(4, &[1, 2, 3, 4, 5, 6]).unwrap();
        let full = a.to_full();
        assert_eq!(*full.get(0, 1), 1);
        assert_eq!(*full.get(0, 3), 3);
        assert_eq!(*full.get(1, 2), 4);
        assert_eq!(*full.get(2, 3), 6);
        assert_eq!(*full.get(3, 2), -6);
        assert_eq!(AlternatingMatrix::from_full(&full).unwrap(), a);
    }

    #[test]
    fn rejects_non_alternating() {
        let m = IntegerMatrix::<i64>::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(AlternatingMatrix::from_full(&m), Err(LinalgError::NotAlternating));
        let m = IntegerMatrix::<i64>::from_i64_rows(&[&[1, 1], &[-1, 0]]).unwrap();
        assert_eq!(AlternatingMatrix::from_full(&m), Err(LinalgError::NotAlternating));
        assert!(AlternatingMatrix::<i64>::new(3, vec![1, 2]).is_err());
    }

    #[test]
    fn norm_counts_both_triangles() {
        let a = AlternatingMatrix::<i64>::from_i64(3, &[1, -2, 3]).unwrap();
        assert_eq!(a.norm_sq(), 28);
        let full = a.to_full();
        let direct: i64 = full.entries().iter().map(|v| v * v).sum();
        assert_eq!(direct, 28);
    }
}
