//! The family of short Weierstrass curves `y^2 = x^3 + Ax + B` ordered by
//! naive height.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::model::ModelError;
use crate::primes::primes_up_to;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveParams {
    #[serde(with = "crate::scalar::bigint_string")]
    pub a: BigInt,
    #[serde(with = "crate::scalar::bigint_string")]
    pub b: BigInt,
}

impl CurveParams {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }
}

/// `max(|4A^3|, |27B^2|)`
pub fn curve_height(c: &CurveParams) -> BigInt {
    let four_a3 = (&c.a * &c.a * &c.a * BigInt::from(4)).abs();
    let b27 = &c.b * &c.b * BigInt::from(27);
    four_a3.max(b27)
}

fn iroot_u128(n: u128, k: u32) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u128;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// No prime with `p^4 | A` and `p^6 | B`. Any such `p` divides both, so the
/// search stops at `|A|^(1/4)` (or `|B|^(1/6)` when `A = 0`).
fn is_minimal_u128(a: u128, b: u128) -> bool {
    let bound = match (a, b) {
        (0, 0) => return false,
        (0, b) => iroot_u128(b, 6),
        (a, 0) => iroot_u128(a, 4),
        (a, b) => iroot_u128(a, 4).min(iroot_u128(b, 6)),
    };
    if bound < 2 {
        return true;
    }
    let g = a.gcd(&b);
    let mut p = 2u128;
    while p <= bound {
        if g % p == 0 && a % p.pow(4) == 0 && b % p.pow(6) == 0 {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

fn nonsingular_i128(a: i128, b: i128) -> bool {
    // 4A^3 + 27B^2 != 0  <=>  not (A = -3t^2, B = 2t^3); checked in BigInt to
    // stay exact for any input.
    let a = BigInt::from(a);
    let b = BigInt::from(b);
    !(&a * &a * &a * BigInt::from(4) + &b * &b * BigInt::from(27)).is_zero()
}

/// Nonsingular and minimal at every prime.
pub fn is_valid_curve(a: &BigInt, b: &BigInt) -> bool {
    if (a * a * a * BigInt::from(4) + b * b * BigInt::from(27)).is_zero() {
        return false;
    }
    match (a.abs().to_u128(), b.abs().to_u128()) {
        (Some(ua), Some(ub)) => is_minimal_u128(ua, ub),
        _ => is_minimal_big(a, b),
    }
}

fn is_minimal_big(a: &BigInt, b: &BigInt) -> bool {
    let g = a.gcd(b);
    let bound = if a.is_zero() {
        b.abs().nth_root(6)
    } else if b.is_zero() {
        a.abs().nth_root(4)
    } else {
        a.abs().nth_root(4).min(b.abs().nth_root(6))
    };
    let mut p = BigInt::from(2);
    while p <= bound {
        if (&g % &p).is_zero() && (a % p.pow(4)).is_zero() && (b % p.pow(6)).is_zero() {
            return false;
        }
        p += 1;
    }
    true
}

/// `kappa = 2^{4/3} 3^{-3/2} / zeta(10)`, the leading constant of
/// `#{E : height <= H} ~ kappa H^{5/6}`.
pub fn kappa() -> f64 {
    // zeta(10) = pi^10 / 93555
    let zeta10 = std::f64::consts::PI.powi(10) / 93555.0;
    2f64.powf(4.0 / 3.0) * 3f64.powf(-1.5) / zeta10
}

/// Default enumeration cap for [`count_curves_exact`].
pub const DEFAULT_COUNT_CAP: u128 = 100_000_000;

/// Exact number of valid curves with height `<= h`.
pub fn count_curves_exact(h: u128, cap: u128) -> Result<u64, ModelError> {
    if h > cap {
        return Err(ModelError::OverCap {
            what: "curve count height",
            value: h.to_string(),
            cap: cap.to_string(),
        });
    }
    let a_max = iroot_u128(h / 4, 3) as i128;
    let b_max = iroot_u128(h / 27, 2) as i128;
    let sixth_primes: Vec<u128> = primes_up_to(iroot_u128(b_max as u128, 6).max(2) as u64)
        .into_iter()
        .map(u128::from)
        .collect();
    let mut count = 0u64;
    for a in -a_max..=a_max {
        let ua = a.unsigned_abs();
        // primes p with p^4 | A constrain B; A = 0 lets every p^6 | B bind
        let binding: Vec<u128> = if a == 0 {
            sixth_primes.clone()
        } else {
            primes_up_to(iroot_u128(ua, 4).max(1) as u64)
                .into_iter()
                .map(u128::from)
                .filter(|&p| ua % p.pow(4) == 0)
                .collect()
        };
        for b in -b_max..=b_max {
            let ub = b.unsigned_abs();
            if binding.iter().any(|&p| ub % p.pow(6) == 0) {
                continue;
            }
            if !nonsingular_i128(a, b) {
                continue;
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Rejection sampling from the box `|A| <= (H/4)^{1/3}`, `|B| <= (H/27)^{1/2}`,
/// keeping valid curves with height in `(H/2, H]`. Returns the curve and its height.
pub fn sample_curve_in_band_u128<R: Rng + ?Sized>(h: u128, rng: &mut R) -> (i128, i128, u128) {
    assert!(h >= 100, "band sampling needs H >= 100");
    let a_max = iroot_u128(h / 4, 3) as i128;
    let b_max = iroot_u128(h / 27, 2) as i128;
    // (a_max, 1) or (0, b_max) lands in the band whenever any curve does
    let top = (4 * (a_max as u128).pow(3)).max(27 * (b_max as u128).pow(2));
    assert!(2 * top > h, "no curve has height in ({}, {h}]", h / 2);
    loop {
        let a = rng.random_range(-a_max..=a_max);
        let b = rng.random_range(-b_max..=b_max);
        let ua = a.unsigned_abs();
        let ub = b.unsigned_abs();
        let height = (4 * ua * ua * ua).max(27 * ub * ub);
        if 2 * height <= h || height > h {
            continue;
        }
        if nonsingular_i128(a, b) && is_minimal_u128(ua, ub) {
            return (a, b, height);
        }
    }
}

pub fn sample_curve_in_band<R: Rng + ?Sized>(h: u128, rng: &mut R) -> CurveParams {
    let (a, b, _) = sample_curve_in_band_u128(h, rng);
    CurveParams::new(a, b)
}
