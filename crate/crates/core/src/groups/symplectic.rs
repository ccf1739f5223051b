//! Symplectic p-groups `J x J^dual` and their pairing-preserving
//! automorphisms.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::groups::{AbelianPGroup, GroupError};

/// `J x J^dual` with its natural alternating pairing. Determined up to
/// isomorphism by the abstract group `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymplecticPGroup {
    j: AbelianPGroup,
}

/// Default group-order cap for brute-force automorphism counting.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 64;

impl SymplecticPGroup {
    pub fn new(j: AbelianPGroup) -> Self {
        Self { j }
    }

    pub fn trivial(p: u64) -> Result<Self, GroupError> {
        Ok(Self::new(AbelianPGroup::trivial(p)?))
    }

    /// Recovers `J` from an abelian group with doubled partition.
    pub fn from_underlying(g: &AbelianPGroup) -> Result<Self, GroupError> {
        g.halved()
            .map(Self::new)
            .ok_or_else(|| GroupError::NotSymplectic(g.label()))
    }

    pub fn j(&self) -> &AbelianPGroup {
        &self.j
    }

    pub fn p(&self) -> u64 {
        self.j.p()
    }

    pub fn underlying(&self) -> AbelianPGroup {
        self.j.doubled()
    }

    pub fn log_order(&self) -> u32 {
        2 * self.j.log_order()
    }

    pub fn order(&self) -> BigUint {
        self.underlying().order()
    }

    /// Label of the underlying abelian group.
    pub fn label(&self) -> String {
        self.underlying().label()
    }
}

/// Number of automorphisms of `S` preserving the pairing.
///
/// Groups with `|S| <= cap` are counted by brute force (memoized); larger
/// groups use [`symplectic_aut_order_formula`], which the tests check
/// against brute force on every group under the default cap.
pub fn symplectic_aut_order(s: &SymplecticPGroup, cap: u64) -> BigUint {
    match symplectic_aut_order_brute(s, cap) {
        Ok(v) => v,
        Err(_) => symplectic_aut_order_formula(s),
    }
}

/// Orbit-stabilizer recursion. Let `a` be the largest exponent of `J`. Any
/// pair `(x, y)` with `<x, y>` of order `p^a` spans a hyperbolic plane with
/// complement of type `J` minus one part `a`, and all such pairs form one
/// orbit. The pair count is `#{x of order p^a} * |G| / p^a`.
pub fn symplectic_aut_order_formula(s: &SymplecticPGroup) -> BigUint {
    let p = BigUint::from(s.p());
    let mut parts: Vec<u32> = s.j().lambda().to_vec();
    let mut total = BigUint::one();
    while let Some(&a) = parts.first() {
        let log_g: u32 = 2 * parts.iter().sum::<u32>();
        let log_low: u32 = 2 * parts.iter().map(|&e| e.min(a - 1)).sum::<u32>();
        let order_a = p.clone().pow(log_g) - p.clone().pow(log_low);
        total *= order_a * p.clone().pow(log_g - a);
        parts.remove(0);
    }
    total
}

fn memo() -> &'static RwLock<HashMap<SymplecticPGroup, BigUint>> {
    static TABLE: OnceLock<RwLock<HashMap<SymplecticPGroup, BigUint>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// Exhaustive count of generator images preserving all pairings. A
/// pairing-preserving endomorphism of a nondegenerate pairing is injective,
/// so every such tuple is an automorphism.
pub fn symplectic_aut_order_brute(s: &SymplecticPGroup, cap: u64) -> Result<BigUint, GroupError> {
    let too_big = || GroupError::UnsupportedSize {
        label: s.label(),
        cap,
    };
    let order = s.order();
    if order > BigUint::from(cap) {
        return Err(too_big());
    }
    if let Some(v) = memo().read().expect("memo lock").get(s) {
        return Ok(v.clone());
    }
    let count = BigUint::from(brute_count(s));
    memo()
        .write()
        .expect("memo lock")
        .entry(s.clone())
        .or_insert_with(|| count.clone());
    Ok(count)
}

fn brute_count(s: &SymplecticPGroup) -> u64 {
    let p = s.p();
    let parts = s.j().lambda();
    if parts.is_empty() {
        return 1;
    }
    let a = parts[0];
    let top = p.pow(a);
    // coordinates (x_{2i}, x_{2i+1}) live in Z/p^{l_i}
    let mods: Vec<u64> = parts.iter().flat_map(|&e| [p.pow(e), p.pow(e)]).collect();
    let scale: Vec<u64> = parts.iter().map(|&e| p.pow(a - e)).collect();
    let size: u64 = mods.iter().product();
    let elems: Vec<Vec<u64>> = (0..size)
        .map(|mut idx| {
            mods.iter()
                .map(|&m| {
                    let v = idx % m;
                    idx /= m;
                    v
                })
                .collect()
        })
        .collect();
    let pair = |x: &[u64], y: &[u64]| -> u64 {
        let mut acc = 0u64;
        for (i, &sc) in scale.iter().enumerate() {
            let plus = x[2 * i] * y[2 * i + 1] % top;
            let minus = x[2 * i + 1] * y[2 * i] % top;
            acc = (acc + (plus + top - minus) * sc) % top;
        }
        acc
    };
    let gens: Vec<Vec<u64>> = (0..mods.len())
        .map(|g| (0..mods.len()).map(|c| u64::from(c == g)).collect())
        .collect();
    let killed = |x: &[u64], pe: u64| x.iter().zip(&mods).all(|(&v, &m)| (v * pe) % m == 0);
    let candidates: Vec<Vec<usize>> = mods
        .iter()
        .map(|&pe| (0..elems.len()).filter(|&i| killed(&elems[i], pe)).collect())
        .collect();
    let target: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| gens.iter().map(|h| pair(g, h)).collect())
        .collect();

    fn rec(
        k: usize,
        chosen: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        elems: &[Vec<u64>],
        target: &[Vec<u64>],
        pair: &dyn Fn(&[u64], &[u64]) -> u64,
    ) -> u64 {
        if k == candidates.len() {
            return 1;
        }
        let mut count = 0;
        for &c in &candidates[k] {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(i, &prev)| pair(&elems[prev], &elems[c]) == target[i][k]);
            if ok {
                chosen.push(c);
                count += rec(k + 1, chosen, candidates, elems, target, pair);
                chosen.pop();
            }
        }
        count
    }
    rec(0, &mut Vec::new(), &candidates, &elems, &target, &pair)
}

/// All symplectic p-groups of order at most `p^(2 * max_log_j)`.
pub fn symplectic_groups_up_to(p: u64, max_log_j: u32) -> Result<Vec<SymplecticPGroup>, GroupError> {
    Ok(crate::groups::groups_up_to(p, max_log_j)?
        .into_iter()
        .map(SymplecticPGroup::new)
        .collect())
}
