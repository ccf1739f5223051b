use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::groups::GroupError;
use crate::primes::is_prime;

/// Finite abelian p-group `(+)_i Z/p^{lambda_i}`, stored with the exponent
/// partition in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianPGroup {
    p: u64,
    lambda: Vec<u32>,
}

impl AbelianPGroup {
    /// Parts may be given in any order; zero parts are dropped.
    pub fn new(p: u64, mut lambda: Vec<u32>) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        lambda.retain(|&e| e > 0);
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { p, lambda })
    }

    pub fn trivial(p: u64) -> Result<Self, GroupError> {
        Self::new(p, Vec::new())
    }

    pub fn cyclic(p: u64, k: u32) -> Result<Self, GroupError> {
        Self::new(p, vec![k])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn is_trivial(&self) -> bool {
        self.lambda.is_empty()
    }

    /// `log_p |G|`
    pub fn log_order(&self) -> u32 {
        self.lambda.iter().sum()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.log_order())
    }

    /// `dim_{F_p} G[p]`
    pub fn p_rank(&self) -> usize {
        self.lambda.len()
    }

    /// Each part repeated twice; the shape of `J x J^dual`.
    pub fn doubled(&self) -> Self {
        let lambda = self.lambda.iter().flat_map(|&e| [e, e]).collect();
        Self { p: self.p, lambda }
    }

    /// Inverse of [`Self::doubled`], if every part occurs an even number of times.
    pub fn halved(&self) -> Option<Self> {
        if self.lambda.len() % 2 == 1 {
            return None;
        }
        let mut lambda = Vec::with_capacity(self.lambda.len() / 2);
        for pair in self.lambda.chunks(2) {
            if pair[0] != pair[1] {
                return None;
            }
            lambda.push(pair[0]);
        }
        Some(Self { p: self.p, lambda })
    }

    /// Order of the automorphism group, by the closed form of Hillar and
    /// Rhea. With exponents sorted increasingly `e_1 <= .. <= e_n`,
    /// `d_k = max{l : e_l = e_k}` and `c_k = min{l : e_l = e_k}`:
    ///
    /// `prod_k (p^{d_k} - p^{k-1}) * prod_j p^{e_j (n - d_j)} * prod_i p^{(e_i - 1)(n - c_i + 1)}`
    pub fn aut_order(&self) -> BigUint {
        let e: Vec<u32> = self.lambda.iter().rev().copied().collect();
        let n = e.len();
        let p = BigUint::from(self.p);
        let mut total = BigUint::one();
        let mut exponent: u64 = 0;
        for k in 0..n {
            // 1-based d_k, c_k
            let d = (k..n).take_while(|&l| e[l] == e[k]).last().unwrap() + 1;
            let c = (0..=k).rev().take_while(|&l| e[l] == e[k]).last().unwrap() + 1;
            total *= p.clone().pow(d as u32) - p.clone().pow(k as u32);
            exponent += e[k] as u64 * (n - d) as u64;
            exponent += (e[k] as u64 - 1) * (n - c + 1) as u64;
        }
        total * p.pow(exponent as u32)
    }

    /// Canonical label `"p:[l1,l2,..]"` with parts in decreasing order.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for AbelianPGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.p)?;
        for (i, e) in self.lambda.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for AbelianPGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::BadLabel(s.to_string());
        let (p, rest) = s.split_once(':').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let lambda = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::new(p, lambda)
    }
}

/// All partitions of `m` in decreasing-part form.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// Every abelian p-group of order at most `p^max_log_order`.
pub fn groups_up_to(p: u64, max_log_order: u32) -> Result<Vec<AbelianPGroup>, GroupError> {
    (0..=max_log_order)
        .flat_map(partitions)
        .map(|lambda| AbelianPGroup::new(p, lambda))
        .collect()
}
