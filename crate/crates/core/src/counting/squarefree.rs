//! Squarefree Pfaffian values (exploratory counter).

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::counting::{fold_alternating, CountingError, Norm};
use crate::linalg::{pfaffian, AlternatingMatrix};
use crate::model::{random_alternating, BinomialEstimate};
use crate::primes::factorize;
use crate::rng::{chunks, task_rng};

/// `|m|` squarefree; zero is not. Exact for `|m| < 2^64`.
pub fn is_squarefree(m: &BigInt) -> Result<bool, CountingError> {
    let v = m.abs().to_u64().ok_or_else(|| CountingError::TooLarge(m.to_string()))?;
    Ok(v != 0 && factorize(v).iter().all(|&(_, e)| e == 1))
}

fn pf_squarefree(n: usize, upper: &[i64]) -> Result<bool, CountingError> {
    let a = AlternatingMatrix::new(n, upper.to_vec()).expect("length").to_bigint();
    is_squarefree(&pfaffian(&a))
}

/// Monte Carlo fraction of uniform `[-x, x]` alternating matrices with
/// squarefree Pfaffian.
pub fn squarefree_pfaffian_fraction(n: usize, x: u64, samples: u64, seed: u64) -> Result<BinomialEstimate, CountingError> {
    if n % 2 == 1 {
        return Err(CountingError::OddDimension(n));
    }
    let hits = chunks(samples, 10_000)
        .into_par_iter()
        .enumerate()
        .map(|(task, (_, len))| {
            let mut rng = task_rng(seed, task as u64);
            let mut hits = 0u64;
            for _ in 0..len {
                let a = random_alternating(n, x, &mut rng);
                if pf_squarefree(n, a.upper())? {
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<u64>, CountingError>>()?
        .into_iter()
        .sum();
    Ok(BinomialEstimate::new(hits, samples))
}

/// Exhaustive version over the full box.
pub fn squarefree_pfaffian_fraction_exact(n: usize, x: u64, cap: u64) -> Result<BinomialEstimate, CountingError> {
    if n % 2 == 1 {
        return Err(CountingError::OddDimension(n));
    }
    let (hits, total) = fold_alternating(
        n,
        x,
        Norm::Box,
        cap,
        || Ok((0u64, 0u64)),
        |acc: &mut Result<(u64, u64), CountingError>, upper| {
            if let Ok((h, t)) = acc {
                match pf_squarefree(n, upper) {
                    Ok(sq) => {
                        *h += u64::from(sq);
                        *t += 1;
                    }
                    Err(e) => *acc = Err(e),
                }
            }
        },
        |a, b| match (a, b) {
            (Ok(x), Ok(y)) => Ok((x.0 + y.0, x.1 + y.1)),
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
    )??;
    Ok(BinomialEstimate::new(hits, total))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_values() {
        let sq: Vec<i64> = (1..=10).filter(|&m| is_squarefree(&BigInt::from(m)).unwrap()).collect();
        assert_eq!(sq, vec![1, 2, 3, 5, 6, 7, 10]);
        assert!(!is_squarefree(&BigInt::from(0)).unwrap());
        assert!(is_squarefree(&BigInt::from(-30)).unwrap());
        assert!(is_squarefree(&(BigInt::from(1u128 << 70))).is_err());
    }

    #[test]
    fn exhaustive_n2() {
        let e = squarefree_pfaffian_fraction_exact(2, 1, 1_000).unwrap();
        assert_eq!((e.hits, e.samples), (2, 3));
        let e = squarefree_pfaffian_fraction_exact(2, 10, 1_000).unwrap();
        assert_eq!((e.hits, e.samples), (14, 21));
    }

    #[test]
    fn monte_carlo_n2_within_error() {
        let e = squarefree_pfaffian_fraction(2, 10, 20_000, 4).unwrap();
        assert!((e.p_hat - 2.0 / 3.0).abs() < 4.0 * e.stderr.max(1e-3));
        assert!((0.0..=1.0).contains(&e.p_hat));
        assert!(squarefree_pfaffian_fraction(3, 10, 10, 4).is_err());
    }
}
