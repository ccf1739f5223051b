use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::groups::AbelianPGroup;
use crate::linalg::{smith_divisors, AlternatingMatrix, IntegerMatrix, LinalgError};
use crate::primes::is_prime;
use crate::scalar::ExactInt;

/// `coker(A) = Z^free_rank (+) (+)_i Z/e_i` with `e_1 | e_2 | ..`, each `e_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CokernelStructure<T> {
    pub free_rank: usize,
    pub torsion: Vec<T>,
}

impl<T: ExactInt> CokernelStructure<T> {
    /// From a Smith divisor chain of an `n_rows x n_cols` matrix, viewing
    /// the matrix as a map `Z^n_cols -> Z^n_rows`.
    pub fn from_divisors(n_rows: usize, divisors: &[T]) -> Self {
        let nonzero = divisors.iter().filter(|d| !d.is_zero()).count();
        let torsion = divisors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        Self {
            free_rank: n_rows - nonzero,
            torsion,
        }
    }

    pub fn torsion_order(&self) -> T {
        self.torsion.iter().fold(T::one(), |acc, e| acc * e.clone())
    }

    /// Invariant factors come in equal consecutive pairs.
    pub fn is_paired(&self) -> bool {
        self.torsion.len() % 2 == 0 && self.torsion.chunks(2).all(|c| c[0] == c[1])
    }

    /// Torsion is `Z/e x Z/e` for a single `e` (or trivial).
    pub fn is_square_of_cyclic(&self) -> bool {
        self.torsion.is_empty() || (self.torsion.len() == 2 && self.torsion[0] == self.torsion[1])
    }

    pub fn p_part(&self, p: u64) -> Result<AbelianPGroup, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        let pt = T::from_u64(p).ok_or(LinalgError::NotPrime(p))?;
        let lambda = self
            .torsion
            .iter()
            .map(|e| {
                let mut e = e.clone();
                let mut v = 0;
                while (e.clone() % pt.clone()).is_zero() {
                    e = e / pt.clone();
                    v += 1;
                }
                v
            })
            .collect();
        Ok(AbelianPGroup::new(p, lambda).expect("p checked prime"))
    }

    /// Canonical text label: `free_rank;e1,e2,..`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        format!("{};{}", self.free_rank, parts.join(","))
    }
}

/// Cokernel of an arbitrary integer matrix acting on column vectors.
pub fn cokernel_of<T: ExactInt>(m: &IntegerMatrix<T>) -> CokernelStructure<T> {
    CokernelStructure::from_divisors(m.n_rows(), &smith_divisors(m))
}

/// `coker(A)`; for alternating `A` the torsion has paired invariant factors.
pub fn cokernel<T: ExactInt>(a: &AlternatingMatrix<T>) -> CokernelStructure<T> {
    cokernel_of(&a.to_full())
}

/// p-primary part of the cokernel torsion.
pub fn cokernel_p_part<T: ExactInt>(a: &AlternatingMatrix<T>, p: u64) -> Result<AbelianPGroup, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    cokernel(a).p_part(p)
}

/// Corank of an alternating matrix, `n - rank`.
pub fn kernel_rank<T: ExactInt>(a: &AlternatingMatrix<T>) -> usize {
    a.n() - crate::linalg::rank(&a.to_full())
}

/// Torsion order as a `BigInt`, for labels and reports.
pub fn torsion_order_big<T: ExactInt>(c: &CokernelStructure<T>) -> BigInt {
    c.torsion.iter().fold(BigInt::one(), |acc, e| acc * e.to_bigint())
}

/// Whether `x` is a perfect square (`x >= 0`).
pub fn is_perfect_square(x: &BigInt) -> bool {
    if x.is_negative() {
        return false;
    }
    let r = x.sqrt();
    &(&r * &r) == x
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        let a = AlternatingMatrix::<BigInt>::from_i64(3, &[2, 0, 0]).unwrap();
        let c = cokernel(&a);
        assert_eq!(c.free_rank, 1);
        assert_eq!(c.torsion, big(&[2, 2]));
        assert_eq!(kernel_rank(&a), 1);

        for d in [-7i64, -1, 1, 5] {
            let a = AlternatingMatrix::<BigInt>::from_i64(2, &[d]).unwrap();
            let c = cokernel(&a);
            assert_eq!(c.free_rank, 0);
            if d.abs() > 1 {
                assert_eq!(c.torsion, big(&[d.abs(), d.abs()]));
            } else {
                assert!(c.torsion.is_empty());
            }
        }
        assert_eq!(kernel_rank(&AlternatingMatrix::<i64>::from_i64(2, &[5]).unwrap()), 0);
        assert_eq!(kernel_rank(&AlternatingMatrix::<i64>::zeros(3)), 3);
        assert_eq!(kernel_rank(&AlternatingMatrix::<i64>::from_i64(4, &[1, 2, 3, 4, 5, 6]).unwrap()), 0);
    }

    #[test]
    fn p_parts() {
        let a = AlternatingMatrix::<BigInt>::from_i64(2, &[6]).unwrap();
        assert_eq!(cokernel_p_part(&a, 2).unwrap().lambda(), &[1, 1]);
        assert!(cokernel_p_part(&a, 5).unwrap().is_trivial());
        assert!(matches!(cokernel_p_part(&a, 4), Err(LinalgError::NotPrime(4))));
        let a = AlternatingMatrix::<BigInt>::from_i64(4, &[12, 0, 0, 0, 0, 8]).unwrap();
        assert_eq!(cokernel(&a).torsion, big(&[4, 4, 24, 24]));
        assert_eq!(cokernel_p_part(&a, 2).unwrap().lambda(), &[3, 3, 2, 2]);
        assert_eq!(cokernel_p_part(&a, 3).unwrap().lambda(), &[1, 1]);
    }

    proptest! {
        #[test]
        fn alternating_torsion_is_paired(n in 1usize..=6, seed in proptest::collection::vec(-50i64..=50, 15)) {
            let a = AlternatingMatrix::<BigInt>::from_i64(n, &seed[..n * (n - 1) / 2]).unwrap();
            let c = cokernel(&a);
            prop_assert!(c.is_paired(), "{:?}", c);
            prop_assert!(is_perfect_square(&torsion_order_big(&c)));
            prop_assert_eq!(c.free_rank, kernel_rank(&a));
            prop_assert_eq!((n - c.free_rank) % 2, 0);
        }
    }
}
