//! Exhaustive enumeration of alternating integer matrices by rank.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::CountingError;
use crate::linalg::{alternating_rank_auto, upper_len, AlternatingMatrix};

/// Default cap on the number of matrices a single enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    /// `max |a_ij| <= bound`
    Box,
    /// `sum_{i,j} a_ij^2 < bound^2`, summing over all `n^2` entries, so each
    /// free entry counts twice.
    L2,
}

impl Norm {
    /// Linear size of the region: `2X + 1` values per entry, or radius `T`.
    pub fn scale(&self, bound: u64) -> f64 {
        match self {
            Norm::Box => 2.0 * bound as f64 + 1.0,
            Norm::L2 => bound as f64,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Norm::Box => "box",
            Norm::L2 => "l2",
        }
    }
}

impl std::str::FromStr for Norm {
    type Err = CountingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "box" => Ok(Norm::Box),
            "l2" => Ok(Norm::L2),
            other => Err(CountingError::BadNorm(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankHistogram {
    pub n: usize,
    pub bound: u64,
    pub norm: Norm,
    pub counts: BTreeMap<usize, u64>,
}

impl RankHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn rank_exactly(&self, r: usize) -> u64 {
        self.counts.get(&r).copied().unwrap_or(0)
    }

    pub fn rank_at_most(&self, r: usize) -> u64 {
        self.counts.range(..=r).map(|(_, c)| c).sum()
    }

    /// Matrices with `n - rank >= corank`.
    pub fn corank_at_least(&self, corank: usize) -> u64 {
        self.counts
            .iter()
            .filter(|(&rank, _)| self.n - rank >= corank)
            .map(|(_, &c)| c)
            .sum()
    }
}

/// Rank of a small alternating matrix. Uses the Pfaffian for `n = 4` and
/// exact elimination otherwise.
pub fn alternating_rank_small(a: &AlternatingMatrix<i64>) -> usize {
    let u = a.upper();
    match a.n() {
        0 | 1 => 0,
        2 | 3 => {
            if u.iter().all(|&v| v == 0) {
                0
            } else {
                2
            }
        }
        4 => {
            if u.iter().all(|&v| v == 0) {
                0
            } else if u[0] as i128 * u[5] as i128 - u[1] as i128 * u[4] as i128 + u[2] as i128 * u[3] as i128 != 0 {
                4
            } else {
                2
            }
        }
        _ => alternating_rank_auto(a),
    }
}

/// Number of points the enumeration will visit (upper bound for l2).
pub fn enumeration_size(n: usize, bound: u64, norm: Norm) -> f64 {
    let side = match norm {
        Norm::Box => 2 * bound + 1,
        // |a| < bound / sqrt(2) for every free entry
        Norm::L2 => 2 * l2_entry_max(bound) + 1,
    } as f64;
    side.powi(upper_len(n) as i32)
}

/// Budget on `sum_{i<j} a_ij^2`: `2 s < T^2` iff `s <= (T^2 - 1) / 2`.
pub fn l2_budget(bound: u64) -> Option<u64> {
    (bound > 0).then(|| (bound * bound - 1) / 2)
}

pub fn l2_entry_max(bound: u64) -> u64 {
    l2_budget(bound).map_or(0, |b| crate::primes::isqrt(b))
}

/// Parallel fold over every upper-triangle vector in the region. The first
/// entry's value splits the work; merging is order-independent when `merge`
/// is commutative.
pub fn fold_alternating<A, I, S, M>(
    n: usize,
    bound: u64,
    norm: Norm,
    cap: u64,
    init: I,
    step: S,
    merge: M,
) -> Result<A, CountingError>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &[i64]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let size = enumeration_size(n, bound, norm);
    if size > cap as f64 {
        return Err(CountingError::OverCap { size, cap });
    }
    let m = upper_len(n);
    if m == 0 {
        let mut acc = init();
        if norm == Norm::Box || bound > 0 {
            step(&mut acc, &[]);
        }
        return Ok(acc);
    }
    let (lim, budget) = match norm {
        Norm::Box => (bound as i64, None),
        Norm::L2 => match l2_budget(bound) {
            Some(b) => (l2_entry_max(bound) as i64, Some(b)),
            None => return Ok(init()),
        },
    };
    let firsts: Vec<i64> = (-lim..=lim).collect();
    let partials: Vec<A> = firsts
        .par_iter()
        .map(|&first| {
            let mut acc = init();
            let mut v = vec![0i64; m];
            v[0] = first;
            match budget {
                None => box_rec(&mut v, 1, lim, &mut acc, &step),
                Some(b) => {
                    let used = (first * first) as u64;
                    if used <= b {
                        l2_rec(&mut v, 1, b - used, &mut acc, &step);
                    }
                }
            }
            acc
        })
        .collect();
    Ok(partials.into_iter().fold(init(), merge))
}

fn box_rec<A, S: Fn(&mut A, &[i64])>(v: &mut [i64], k: usize, lim: i64, acc: &mut A, step: &S) {
    if k == v.len() {
        step(acc, v);
        return;
    }
    for x in -lim..=lim {
        v[k] = x;
        box_rec(v, k + 1, lim, acc, step);
    }
}

fn l2_rec<A, S: Fn(&mut A, &[i64])>(v: &mut [i64], k: usize, budget: u64, acc: &mut A, step: &S) {
    if k == v.len() {
        step(acc, v);
        return;
    }
    let lim = crate::primes::isqrt(budget) as i64;
    for x in -lim..=lim {
        v[k] = x;
        l2_rec(v, k + 1, budget - (x * x) as u64, acc, step);
    }
}

fn merge_counts(mut a: BTreeMap<usize, u64>, b: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Exact histogram of ranks over the region.
pub fn count_alternating_by_rank(n: usize, bound: u64, norm: Norm, cap: u64) -> Result<RankHistogram, CountingError> {
    let counts = fold_alternating(
        n,
        bound,
        norm,
        cap,
        BTreeMap::new,
        |acc: &mut BTreeMap<usize, u64>, upper| {
            let a = AlternatingMatrix::new(n, upper.to_vec()).expect("length");
            *acc.entry(alternating_rank_small(&a)).or_insert(0) += 1;
        },
        merge_counts,
    )?;
    Ok(RankHistogram {
        n,
        bound,
        norm,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pfaffian, rank};

    #[test]
    fn box_examples() {
        let h = count_alternating_by_rank(2, 1, Norm::Box, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(h.counts, BTreeMap::from([(0, 1), (2, 2)]));
        let h = count_alternating_by_rank(3, 1, Norm::Box, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(h.counts, BTreeMap::from([(0, 1), (2, 26)]));
    }

    #[test]
    fn n4_box1_matches_pfaffian_and_bareiss() {
        let h = count_alternating_by_rank(4, 1, Norm::Box, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(h.total(), 729);
        let mut pf_zero = 0;
        let mut by_bareiss = BTreeMap::new();
        for idx in 0..729u32 {
            let mut t = idx;
            let upper: Vec<i64> = (0..6)
                .map(|_| {
                    let d = (t % 3) as i64 - 1;
                    t /= 3;
                    d
                })
                .collect();
            let a = AlternatingMatrix::<i64>::new(4, upper).unwrap();
            if pfaffian(&a) == 0 {
                pf_zero += 1;
            }
            *by_bareiss.entry(rank(&a.to_full())).or_insert(0u64) += 1;
        }
        assert_eq!(h.counts, by_bareiss);
        assert_eq!(h.rank_exactly(4), 729 - pf_zero);
        assert_eq!(h.corank_at_least(2), pf_zero);
    }

    #[test]
    fn small_rank_fast_path_agrees_exhaustively() {
        for n in 2..=5 {
            let bound = if n == 5 { 1 } else { 2 };
            fold_alternating(
                n,
                bound,
                Norm::Box,
                DEFAULT_ENUMERATION_CAP,
                || (),
                |_, upper| {
                    let a = AlternatingMatrix::new(n, upper.to_vec()).unwrap();
                    let r = rank(&a.to_full());
                    assert_eq!(alternating_rank_small(&a), r);
                    assert_eq!(r % 2, 0);
                },
                |_, _| (),
            )
            .unwrap();
        }
    }

    #[test]
    fn l2_counts_lattice_points() {
        // n = 3: three free entries with 2 (a^2 + b^2 + c^2) < T^2
        for t in 1..12u64 {
            let h = count_alternating_by_rank(3, t, Norm::L2, DEFAULT_ENUMERATION_CAP).unwrap();
            let mut direct = 0;
            let r = t as i64;
            for a in -r..=r {
                for b in -r..=r {
                    for c in -r..=r {
                        if 2 * (a * a + b * b + c * c) < r * r {
                            direct += 1;
                        }
                    }
                }
            }
            assert_eq!(h.total(), direct, "T={t}");
            assert_eq!(h.rank_exactly(0), 1);
        }
        assert_eq!(count_alternating_by_rank(3, 0, Norm::L2, DEFAULT_ENUMERATION_CAP).unwrap().total(), 0);
    }

    #[test]
    fn cap_rejects() {
        assert!(matches!(
            count_alternating_by_rank(6, 10, Norm::Box, DEFAULT_ENUMERATION_CAP),
            Err(CountingError::OverCap { .. })
        ));
    }
}
