//! Fraction-free (Bareiss) elimination. Every intermediate entry is a minor
//! of the input, so divisions are exact.

use num_bigint::BigInt;

use crate::linalg::{AlternatingMatrix, IntegerMatrix};
use crate::scalar::ExactInt;

fn eliminate<T: ExactInt>(m: &IntegerMatrix<T>) -> (usize, T, bool) {
    let rows = m.n_rows();
    let cols = m.n_cols();
    let mut a: Vec<T> = m.entries().to_vec();
    let mut prev = T::one();
    let mut rank = 0;
    let mut negated = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
            negated = !negated;
        }
        let p = a[rank * cols + col].clone();
        for i in rank + 1..rows {
            let f = a[i * cols + col].clone();
            for j in col + 1..cols {
                let v = p.clone() * a[i * cols + j].clone() - f.clone() * a[rank * cols + j].clone();
                a[i * cols + j] = v / prev.clone();
            }
            a[i * cols + col] = T::zero();
        }
        prev = p;
        rank += 1;
    }
    (rank, prev, negated)
}

/// Exact rank over the rationals.
pub fn rank<T: ExactInt>(m: &IntegerMatrix<T>) -> usize {
    eliminate(m).0
}

/// Exact determinant of a square matrix.
pub fn determinant<T: ExactInt>(m: &IntegerMatrix<T>) -> T {
    assert_eq!(m.n_rows(), m.n_cols(), "determinant of a non-square matrix");
    let n = m.n_rows();
    if n == 0 {
        return T::one();
    }
    let (rank, last, negated) = eliminate(m);
    if rank < n {
        T::zero()
    } else if negated {
        -last
    } else {
        last
    }
}

/// Whether Bareiss elimination on an `n x n` matrix with entries bounded by
/// `max_abs` stays inside a signed integer of `bits` bits.
///
/// Each step multiplies two minors before dividing, so the square of the
/// Hadamard bound `(max_abs * sqrt(n))^n` must fit.
pub fn hadamard_fits(n: usize, max_abs: f64, bits: u32) -> bool {
    if max_abs == 0.0 || n == 0 {
        return true;
    }
    let log2_bound = n as f64 * (max_abs.max(1.0) * (n as f64).sqrt()).log2();
    2.0 * log2_bound + 2.0 < (bits - 1) as f64
}

/// Rank of a machine-integer alternating matrix, picking the narrowest
/// integer width that cannot overflow.
pub fn alternating_rank_auto(a: &AlternatingMatrix<i64>) -> usize {
    let n = a.n();
    if a.is_zero() {
        return 0;
    }
    if n <= 3 {
        return 2;
    }
    let max_abs = a
        .upper()
        .iter()
        .map(|v| v.unsigned_abs() as f64)
        .fold(0.0, f64::max);
    let full = a.to_full();
    if hadamard_fits(n, max_abs, 64) {
        rank(&full)
    } else if hadamard_fits(n, max_abs, 128) {
        rank(&full.map(|&v| v as i128))
    } else {
        rank(&full.map(|&v| BigInt::from(v)))
    }
}
