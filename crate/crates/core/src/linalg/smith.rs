//! Smith normal form over the integers with minimal-absolute-value pivoting.

use crate::linalg::IntegerMatrix;
use crate::scalar::ExactInt;

/// `U * A * V = diag(divisors)` with `U`, `V` unimodular.
///
/// Only `divisors` is canonical; the transforms depend on pivot order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub u: IntegerMatrix<T>,
    pub v: IntegerMatrix<T>,
    /// `min(rows, cols)` entries, nonnegative, each dividing the next; zeros last.
    pub divisors: Vec<T>,
}

impl<T: ExactInt> SmithDecomposition<T> {
    /// The `rows x cols` diagonal matrix of divisors.
    pub fn diagonal(&self) -> IntegerMatrix<T> {
        let mut d = IntegerMatrix::zeros(self.u.n_rows(), self.v.n_cols());
        for (i, v) in self.divisors.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

pub fn smith_normal_form<T: ExactInt>(a: &IntegerMatrix<T>) -> SmithDecomposition<T> {
    let mut u = IntegerMatrix::identity(a.n_rows());
    let mut v = IntegerMatrix::identity(a.n_cols());
    let divisors = reduce(a.clone(), Some((&mut u, &mut v)));
    SmithDecomposition { u, v, divisors }
}

/// Divisor chain only; skips transform bookkeeping.
pub fn smith_divisors<T: ExactInt>(a: &IntegerMatrix<T>) -> Vec<T> {
    reduce(a.clone(), None)
}

fn min_abs_entry<T: ExactInt>(a: &IntegerMatrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.n_rows() {
        for j in t..a.n_cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if ax.is_one() {
                return Some((i, j));
            }
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn reduce<T: ExactInt>(
    mut a: IntegerMatrix<T>,
    mut transforms: Option<(&mut IntegerMatrix<T>, &mut IntegerMatrix<T>)>,
) -> Vec<T> {
    let rows = a.n_rows();
    let cols = a.n_cols();
    let k = rows.min(cols);
    let mut divisors = Vec::with_capacity(k);

    for t in 0..k {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                divisors.resize(k, T::zero());
                return divisors;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if let Some((u, v)) = transforms.as_mut() {
                u.swap_rows(t, pi);
                v.swap_cols(t, pj);
            }

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let x = a.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = x.clone() / pivot.clone();
                if !q.is_zero() {
                    a.row_axpy(i, t, &q);
                    if let Some((u, _)) = transforms.as_mut() {
                        u.row_axpy(i, t, &q);
                    }
                }
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let x = a.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = x.clone() / pivot.clone();
                if !q.is_zero() {
                    a.col_axpy(j, t, &q);
                    if let Some((_, v)) = transforms.as_mut() {
                        v.col_axpy(j, t, &q);
                    }
                }
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Row and column t are clear; enforce pivot | rest.
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let minus_one = -T::one();
                    a.row_axpy(t, i, &minus_one);
                    if let Some((u, _)) = transforms.as_mut() {
                        u.row_axpy(t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some((u, _)) = transforms.as_mut() {
                u.negate_row(t);
            }
        }
        divisors.push(a.get(t, t).clone());
    }
    divisors
}
