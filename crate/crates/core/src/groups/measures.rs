//! Limiting measures: Hall's normalizing constant, Cohen-Lenstra /
//! Friedman-Washington, Delaunay's measure on symplectic p-groups, and the
//! square-of-cyclic density.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::groups::{symplectic_aut_order, AbelianPGroup, SymplecticPGroup};
use crate::primes::primes_up_to;
use crate::scalar::Real;

/// A truncated value with a certified bound on the truncation error.
///
/// Probability measures satisfy `0 <= value +- tail_bound <= 1` up to
/// rounding; [`hall_eta`] reuses the type for a constant above one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureValue<F> {
    pub value: F,
    pub tail_bound: F,
}

impl<F: Real> MeasureValue<F> {
    pub fn exact(value: F) -> Self {
        Self {
            value,
            tail_bound: F::zero(),
        }
    }

    fn scale(self, k: F) -> Self {
        Self {
            value: self.value * k,
            tail_bound: self.tail_bound * k,
        }
    }

    /// Within `[0, 1]` allowing `eps` slack.
    pub fn is_probability(&self, eps: F) -> bool {
        self.value - self.tail_bound >= -eps && self.value + self.tail_bound <= F::one() + eps
    }

    pub fn contains(&self, x: F, eps: F) -> bool {
        (x - self.value).abs() <= self.tail_bound + eps
    }
}

const MAX_FACTORS: usize = 100_000;

/// `prod_{k >= 0} (1 - first * ratio^k)` for `0 <= first < 1`, `0 <= ratio < 1`.
///
/// Stops once the next factor is within `tol / 10` of one and the
/// remaining mass `sum_k t_k = t_next / (1 - ratio)` certifies a tail below
/// `tol`. Uses `prod (1 - t_k) >= 1 - sum t_k`.
fn geometric_product<F: Real>(first: F, ratio: F, tol: F) -> MeasureValue<F> {
    let one = F::one();
    let ten = F::lit(10.0);
    let mut value = one;
    let mut t = first;
    for _ in 0..MAX_FACTORS {
        let remaining = t / (one - ratio);
        if t < tol / ten && value * remaining <= tol {
            return MeasureValue {
                value,
                tail_bound: value * remaining,
            };
        }
        value = value * (one - t);
        t = t * ratio;
    }
    let remaining = t / (one - ratio);
    MeasureValue {
        value,
        tail_bound: value * remaining,
    }
}

/// `prod_{i >= 1} (1 - p^{-i})`
pub fn cl_constant<F: Real>(p: u64, tol: F) -> MeasureValue<F> {
    let inv = F::one() / F::from_u64(p).expect("prime fits");
    geometric_product(inv, inv, tol)
}

/// Hall's constant `eta(p) = prod_{i >= 1} (1 - p^{-i})^{-1}`, the total
/// mass of `sum_G 1/#Aut G`.
pub fn hall_eta<F: Real>(p: u64, tol: F) -> MeasureValue<F> {
    // Solve for the product tolerance that keeps the reciprocal's bound <= tol.
    let mut inner_tol = tol / F::lit(8.0);
    loop {
        let prod = cl_constant(p, inner_tol);
        let lo = prod.value - prod.tail_bound;
        let value = F::one() / prod.value;
        let tail_bound = F::one() / lo - value;
        if tail_bound <= tol || inner_tol < F::epsilon() {
            return MeasureValue { value, tail_bound };
        }
        inner_tol = inner_tol / F::lit(8.0);
    }
}

/// Cohen-Lenstra / Friedman-Washington probability
/// `(1 / #Aut G) prod_{i >= 1} (1 - p^{-i})`.
pub fn cl_measure<F: Real>(g: &AbelianPGroup, tol: F) -> MeasureValue<F> {
    let aut = biguint_to_real::<F>(&g.aut_order());
    cl_constant(g.p(), tol).scale(F::one() / aut)
}

/// Delaunay's measure
/// `#G^{1-r} / #Aut_sympl(G) * prod_{i >= r+1} (1 - p^{1-2i})`.
pub fn delaunay_measure<F: Real>(s: &SymplecticPGroup, r: u32, tol: F, cap: u64) -> MeasureValue<F> {
    let p = F::from_u64(s.p()).expect("prime fits");
    let aut = symplectic_aut_order(s, cap);
    // #G^{1-r} = p^{log|G| (1-r)}
    let log_weight = F::from_i64(s.log_order() as i64 * (1 - r as i64)).unwrap() * p.ln()
        - ln_biguint::<F>(&aut);
    // first factor i = r+1: p^{1 - 2(r+1)} = p^{-(2r+1)}
    let first = p.powi(-(2 * r as i32 + 1));
    let ratio = F::one() / (p * p);
    geometric_product(first, ratio, tol).scale(log_weight.exp())
}

/// `prod_{p <= cutoff} (1 - p^-2 + p^-3)`. The omitted factors are
/// `1 - t_p` with `sum_{p > c} t_p < sum_{m > c} m^-2 < 1/c`.
pub fn square_cyclic_density<F: Real>(prime_cutoff: u64) -> MeasureValue<F> {
    assert!(prime_cutoff >= 2, "prime cutoff must be at least 2");
    let one = F::one();
    let value = primes_up_to(prime_cutoff).into_iter().fold(one, |acc, p| {
        let inv = one / F::from_u64(p).unwrap();
        acc * (one - inv * inv + inv * inv * inv)
    });
    MeasureValue {
        value,
        tail_bound: value / F::from_u64(prime_cutoff).unwrap(),
    }
}

pub(crate) fn ln_biguint<F: Real>(x: &BigUint) -> F {
    let bits = x.bits();
    if bits <= 1000 {
        F::from_f64(num_traits::ToPrimitive::to_f64(x).unwrap().ln()).unwrap()
    } else {
        let shift = bits - 64;
        let top = num_traits::ToPrimitive::to_f64(&(x >> shift)).unwrap();
        F::from_f64(top.ln() + shift as f64 * std::f64::consts::LN_2).unwrap()
    }
}

fn biguint_to_real<F: Real>(x: &BigUint) -> F {
    ln_biguint::<F>(x).exp()
}
