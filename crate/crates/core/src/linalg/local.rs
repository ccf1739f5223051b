//! Smith form over `Z/p^k`, for p-parts of cokernels without big integers.
//!
//! Over the local ring every nonzero element is `p^v * unit`, so picking the
//! entry of least valuation as pivot clears its row and column in one pass.
//! The result is the multiset `min(v_i, k)` of elementary-divisor valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::groups::AbelianPGroup;
use crate::linalg::{AlternatingMatrix, LinalgError};
use crate::primes::is_prime;
use crate::scalar::ExactInt;

/// Largest modulus handled; keeps products of residues inside `u128`.
pub const MAX_MODULUS: u128 = 1 << 63;

/// Largest `k` with `p^k <= MAX_MODULUS`.
pub fn max_precision(p: u64) -> u32 {
    let mut k = 0;
    let mut m: u128 = 1;
    while m * p as u128 <= MAX_MODULUS {
        m *= p as u128;
        k += 1;
    }
    k
}

fn inverse_mod(a: u128, m: u128) -> u128 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "not a unit");
    t0.rem_euclid(m as i128) as u128
}

/// Valuations of the elementary divisors of a `rows x cols` matrix with
/// entries reduced mod `p^k`. A returned value of `k` means "at least `k`".
pub fn local_valuations(entries: &[u128], rows: usize, cols: usize, p: u64, k: u32) -> Vec<u32> {
    assert_eq!(entries.len(), rows * cols);
    let modulus = (p as u128).pow(k);
    assert!(modulus <= MAX_MODULUS, "p^k too large for local elimination");
    let pp = p as u128;
    let mut a: Vec<u128> = entries.iter().map(|&x| x % modulus).collect();
    let val = |x: u128| -> u32 {
        if x == 0 {
            k
        } else {
            crate::primes::valuation(x, p).min(k)
        }
    };
    let steps = rows.min(cols);
    let mut out = Vec::with_capacity(steps);
    for t in 0..steps {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in t..rows {
            for j in t..cols {
                let v = val(a[i * cols + j]);
                if v < best.map_or(k, |b| b.2) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else {
            out.resize(steps, k);
            return out;
        };
        if pi != t {
            for j in 0..cols {
                a.swap(pi * cols + j, t * cols + j);
            }
        }
        if pj != t {
            for i in 0..rows {
                a.swap(i * cols + pj, i * cols + t);
            }
        }
        let pv = pp.pow(v);
        let unit_inv = inverse_mod(a[t * cols + t] / pv, modulus);
        // rows below: row_i -= (a_it / p^v) u^{-1} row_t
        for i in t + 1..rows {
            let x = a[i * cols + t];
            if x == 0 {
                continue;
            }
            let f = (x / pv) % modulus * unit_inv % modulus;
            for j in t..cols {
                let s = a[t * cols + j];
                if s != 0 {
                    let sub = f * s % modulus;
                    let d = &mut a[i * cols + j];
                    *d = (*d + modulus - sub) % modulus;
                }
            }
        }
        // Row t beyond the pivot is a multiple of the pivot; dropping it is
        // the matching column operation, which touches nothing else.
        out.push(v);
    }
    out
}

/// Valuation multiset to a group, dropping zero parts and the `>= k` entries.
fn group_from_valuations(p: u64, vals: &[u32], k: u32) -> AbelianPGroup {
    AbelianPGroup::new(p, vals.iter().copied().filter(|&v| v < k).collect()).expect("prime")
}

/// p-part of `coker(A)` for an alternating integer matrix of known corank.
///
/// Works mod `p^k` starting at `start_k`, raising `k` by 2 until exactly
/// `corank` divisors vanish mod `p^k`; every other valuation is then exact.
pub fn alternating_p_part_local<T: ExactInt>(
    a: &AlternatingMatrix<T>,
    p: u64,
    corank: usize,
    start_k: u32,
) -> Result<AbelianPGroup, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    let n = a.n();
    let full = a.to_full();
    let limit = max_precision(p);
    let mut k = start_k.max(1).min(limit);
    loop {
        let modulus = BigInt::from((p as u128).pow(k));
        let entries: Vec<u128> = full
            .entries()
            .iter()
            .map(|x| x.to_bigint().mod_floor(&modulus).to_u128().expect("reduced"))
            .collect();
        let vals = local_valuations(&entries, n, n, p, k);
        let vanishing = vals.iter().filter(|&&v| v >= k).count();
        if vanishing == corank {
            return Ok(group_from_valuations(p, &vals, k));
        }
        if k == limit {
            return Err(LinalgError::PrecisionExhausted { p, k });
        }
        k = (k + 2).min(limit);
    }
}

/// Uniform `n x n` matrix over `Z_p`, revealed digit by digit.
///
/// Entries are drawn mod `p^k`; [`Self::refine`] appends further uniform
/// p-adic digits, so the law of the completed matrix stays Haar.
#[derive(Clone, Debug)]
pub struct PadicMatrix {
    p: u64,
    n: usize,
    precision: u32,
    entries: Vec<u128>,
}

impl PadicMatrix {
    pub fn sample<R: Rng + ?Sized>(n: usize, p: u64, k: u32, rng: &mut R) -> Self {
        let modulus = (p as u128).pow(k);
        assert!(modulus <= MAX_MODULUS);
        let entries = (0..n * n).map(|_| rng.random_range(0..modulus)).collect();
        Self {
            p,
            n,
            precision: k,
            entries,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn refine<R: Rng + ?Sized>(&mut self, new_k: u32, rng: &mut R) {
        assert!(new_k >= self.precision);
        let pp = self.p as u128;
        let base = pp.pow(self.precision);
        let extra = pp.pow(new_k - self.precision);
        assert!(base * extra <= MAX_MODULUS);
        for e in &mut self.entries {
            *e += base * rng.random_range(0..extra);
        }
        self.precision = new_k;
    }

    /// `coker(A)[p^inf]` if every elementary divisor is nonzero mod `p^k`.
    pub fn certified_cokernel(&self) -> Option<AbelianPGroup> {
        let vals = local_valuations(&self.entries, self.n, self.n, self.p, self.precision);
        vals.iter()
            .all(|&v| v < self.precision)
            .then(|| group_from_valuations(self.p, &vals, self.precision))
    }

    /// Refines by two digits at a time until certified; at the precision
    /// limit (probability below `p^-60`) divisors `>= p^k` are truncated.
    pub fn cokernel_p_part<R: Rng + ?Sized>(&mut self, rng: &mut R) -> AbelianPGroup {
        let limit = max_precision(self.p);
        loop {
            if let Some(g) = self.certified_cokernel() {
                return g;
            }
            if self.precision >= limit {
                let vals = local_valuations(&self.entries, self.n, self.n, self.p, self.precision);
                return group_from_valuations(self.p, &vals, self.precision);
            }
            self.refine((self.precision + 2).min(limit), rng);
        }
    }

    pub fn entries(&self) -> &[u128] {
        &self.entries
    }
}
