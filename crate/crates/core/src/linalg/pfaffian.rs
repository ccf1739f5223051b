//! Division-free Pfaffian by memoized expansion along the first row.
//!
//! `Pf(S) = sum_k (-1)^(k+1) a[s_0][s_k] Pf(S \ {s_0, s_k})` over the sorted
//! index set `S`. Memoizing on the remaining index set gives
//! `O(2^n n)` ring operations, which is fast for the dimensions the model
//! uses (n up to about 20) and works over any integer type.

use std::collections::HashMap;

use crate::linalg::AlternatingMatrix;
use crate::scalar::ExactInt;

/// Pfaffian of an alternating matrix. Odd dimension returns zero, matching
/// `det A = 0` for odd alternating `A`.
///
/// Panics for `n > 64`.
pub fn pfaffian<T: ExactInt>(a: &AlternatingMatrix<T>) -> T {
    let n = a.n();
    if n % 2 == 1 {
        return T::zero();
    }
    if n == 0 {
        return T::one();
    }
    assert!(n <= 64, "pfaffian expansion supports n <= 64");
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    pf_rec(a, full, &mut memo)
}

fn pf_rec<T: ExactInt>(a: &AlternatingMatrix<T>, set: u64, memo: &mut HashMap<u64, T>) -> T {
    if set == 0 {
        return T::one();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1u64 << first);
    let mut total = T::zero();
    let mut positive = true;
    let mut bits = rest;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let coeff = a.entry(first, k);
        if !coeff.is_zero() {
            let sub = pf_rec(a, rest & !(1u64 << k), memo);
            if !sub.is_zero() {
                let term = coeff * sub;
                total = if positive { total + term } else { total - term };
            }
        }
        positive = !positive;
    }
    memo.insert(set, total.clone());
    total
}
