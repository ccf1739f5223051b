//! Empirical distributions of model outputs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{count_alternating_by_rank, Norm};
use crate::linalg::{alternating_p_part_local, alternating_rank_auto, cokernel, PadicMatrix};
use crate::model::{random_alternating, ModelError};
use crate::rng::{chunks, task_index, task_rng};

/// Exhaustive enumeration limit for exact corank probabilities.
pub const EXACT_CORANK_CAP: u64 = 1_000_000_000;

const CHUNK: u64 = 1_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalDistribution<K: Ord> {
    pub counts: BTreeMap<K, u64>,
    pub total: u64,
}

impl<K: Ord> Default for EmpiricalDistribution<K> {
    fn default() -> Self {
        Self {
            counts: BTreeMap::new(),
            total: 0,
        }
    }
}

impl<K: Ord> EmpiricalDistribution<K> {
    pub fn add(&mut self, key: K) {
        *self.counts.entry(key).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn merge(mut self, other: Self) -> Self {
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
        self.total += other.total;
        self
    }

    pub fn count(&self, key: &K) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn frequency(&self, key: &K) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.count(key) as f64 / self.total as f64
        }
    }

    pub fn estimate(&self, key: &K) -> BinomialEstimate {
        BinomialEstimate::new(self.count(key), self.total)
    }
}

/// `hits / samples` with binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinomialEstimate {
    pub hits: u64,
    pub samples: u64,
    pub p_hat: f64,
    pub stderr: f64,
}

impl BinomialEstimate {
    pub fn new(hits: u64, samples: u64) -> Self {
        assert!(hits <= samples);
        let p_hat = if samples == 0 { 0.0 } else { hits as f64 / samples as f64 };
        let stderr = if samples == 0 {
            0.0
        } else {
            (p_hat * (1.0 - p_hat) / samples as f64).sqrt()
        };
        Self {
            hits,
            samples,
            p_hat,
            stderr,
        }
    }

    /// A proportion over a full population.
    pub fn exact(hits: u64, samples: u64) -> Self {
        Self {
            stderr: 0.0,
            ..Self::new(hits, samples)
        }
    }

    pub fn within_sigmas(&self, target: f64, k: f64) -> bool {
        (self.p_hat - target).abs() <= k * self.stderr
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    MonteCarlo,
}

/// Probability that a uniform alternating matrix with entries in `[-x, x]`
/// has corank at least `r`.
pub fn empirical_corank_prob(
    n: usize,
    x: u64,
    r: usize,
    mode: Mode,
    samples: u64,
    seed: u64,
) -> Result<BinomialEstimate, ModelError> {
    match mode {
        Mode::Exact => {
            let h = count_alternating_by_rank(n, x, Norm::Box, EXACT_CORANK_CAP)?;
            Ok(BinomialEstimate::exact(h.corank_at_least(r), h.total()))
        }
        Mode::MonteCarlo => {
            let hits: u64 = chunks(samples, CHUNK * 10)
                .into_par_iter()
                .enumerate()
                .map(|(task, (_, len))| {
                    let mut rng = task_rng(seed, task_index(1, task as u64));
                    (0..len)
                        .filter(|_| {
                            let a = random_alternating(n, x, &mut rng);
                            n - alternating_rank_auto(&a) >= r
                        })
                        .count() as u64
                })
                .sum();
            Ok(BinomialEstimate::new(hits, samples))
        }
    }
}

/// Runs `per_task` on fixed-size chunks of `samples` conditioned draws and
/// merges. The draw loop gives up after `attempts_per_sample` tries per
/// requested sample.
fn conditioned<K, F>(samples: u64, seed: u64, group: u64, attempts_per_sample: u64, f: F) -> Result<EmpiricalDistribution<K>, ModelError>
where
    K: Ord + Send,
    F: Fn(&mut crate::rng::TaskRng) -> Result<Option<K>, ModelError> + Sync,
{
    let parts = chunks(samples, CHUNK)
        .into_par_iter()
        .enumerate()
        .map(|(task, (_, len))| {
            let mut rng = task_rng(seed, task_index(group, task as u64));
            let mut dist = EmpiricalDistribution::default();
            let budget = len.saturating_mul(attempts_per_sample).max(1_000);
            let mut attempts = 0u64;
            while dist.total < len {
                if attempts == budget {
                    return Err(ModelError::Conditioning {
                        attempts,
                        accepted: dist.total,
                    });
                }
                attempts += 1;
                if let Some(k) = f(&mut rng)? {
                    dist.add(k);
                }
            }
            Ok(dist)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(parts.into_iter().fold(EmpiricalDistribution::default(), EmpiricalDistribution::merge))
}

/// Distribution of `coker(A)[p^inf]` labels among alternating draws of
/// corank exactly `r`.
pub fn empirical_sha_distribution(
    n: usize,
    x: u64,
    r: usize,
    p: u64,
    samples: u64,
    seed: u64,
) -> Result<EmpiricalDistribution<String>, ModelError> {
    if r > 1 {
        return Err(ModelError::Config(format!("corank condition r = {r} must be 0 or 1")));
    }
    if n % 2 != r % 2 || n < r {
        return Err(ModelError::Config(format!("n = {n} and r = {r} have different parity")));
    }
    if !crate::primes::is_prime(p) {
        return Err(ModelError::Config(format!("{p} is not prime")));
    }
    conditioned(samples, seed, 2, 1_000, |rng| {
        let a = random_alternating(n, x, rng);
        let corank = n - alternating_rank_auto(&a);
        if corank != r {
            return Ok(None);
        }
        let g = alternating_p_part_local(&a, p, corank, 6)?;
        Ok(Some(g.label()))
    })
}

/// Distribution of `coker(A)[p^inf]` labels for uniform `n x n` p-adic
/// matrices, starting at precision `k` and refining until certified.
pub fn empirical_cl_distribution(n: usize, p: u64, k: u32, samples: u64, seed: u64) -> Result<EmpiricalDistribution<String>, ModelError> {
    if k < 5 {
        return Err(ModelError::Config(format!("precision k = {k} below 5")));
    }
    if !crate::primes::is_prime(p) {
        return Err(ModelError::Config(format!("{p} is not prime")));
    }
    if k > crate::linalg::max_precision(p) {
        return Err(ModelError::Config(format!("precision k = {k} too large for p = {p}")));
    }
    conditioned(samples, seed, 3, 1, |rng| {
        let mut m = PadicMatrix::sample(n, p, k, rng);
        Ok(Some(m.cokernel_p_part(rng).label()))
    })
}

/// Fraction of corank-0 draws whose full cokernel is `C x C` for a cyclic `C`.
pub fn square_cyclic_fraction(n: usize, x: u64, samples: u64, seed: u64) -> Result<BinomialEstimate, ModelError> {
    if n % 2 == 1 {
        return Err(ModelError::Config(format!("odd n = {n} has no corank-0 draws")));
    }
    let dist = conditioned(samples, seed, 4, 1_000, |rng| {
        let a = random_alternating(n, x, rng);
        if alternating_rank_auto(&a) < n {
            return Ok(None);
        }
        let c = cokernel(&a.to_bigint());
        debug_assert!(c.is_paired());
        Ok(Some(c.is_square_of_cyclic()))
    })?;
    Ok(dist.estimate(&true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::AbelianPGroup;

    #[test]
    fn exact_corank_examples() {
        let e = empirical_corank_prob(2, 1, 2, Mode::Exact, 0, 0).unwrap();
        assert_eq!((e.hits, e.samples), (1, 3));
        let e = empirical_corank_prob(3, 1, 1, Mode::Exact, 0, 0).unwrap();
        assert_eq!(e.p_hat, 1.0);
        assert!(empirical_corank_prob(8, 10, 2, Mode::Exact, 0, 0).is_err());
    }

    #[test]
    fn monte_carlo_matches_exact() {
        let exact = empirical_corank_prob(4, 2, 2, Mode::Exact, 0, 0).unwrap();
        let mc = empirical_corank_prob(4, 2, 2, Mode::MonteCarlo, 50_000, 9).unwrap();
        assert!(mc.within_sigmas(exact.p_hat, 3.0), "{mc:?} vs {exact:?}");
    }

    #[test]
    fn sha_distribution_is_conditioned_and_paired() {
        let d = empirical_sha_distribution(4, 50, 0, 2, 2_000, 1).unwrap();
        assert_eq!(d.total, 2_000);
        assert_eq!(d.counts.values().sum::<u64>(), d.total);
        for label in d.counts.keys() {
            let g: AbelianPGroup = label.parse().unwrap();
            assert!(g.halved().is_some(), "{label}");
        }
        let d1 = empirical_sha_distribution(3, 50, 1, 3, 500, 1).unwrap();
        assert_eq!(d1.total, 500);
        assert!(empirical_sha_distribution(4, 50, 1, 2, 10, 1).is_err());
        assert!(empirical_sha_distribution(4, 50, 2, 2, 10, 1).is_err());
    }

    #[test]
    fn cl_distribution_sums_and_rejects_low_k() {
        let d = empirical_cl_distribution(4, 3, 6, 3_000, 2).unwrap();
        assert_eq!(d.total, 3_000);
        let trivial = AbelianPGroup::trivial(3).unwrap().label();
        let target = crate::groups::cl_measure(&AbelianPGroup::trivial(3).unwrap(), 1e-12).value;
        assert!(d.estimate(&trivial).within_sigmas(target, 4.0));
        assert!(empirical_cl_distribution(4, 3, 4, 10, 2).is_err());
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| empirical_sha_distribution(6, 100, 0, 2, 3_000, 77).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn square_cyclic_small() {
        let e = square_cyclic_fraction(4, 30, 1_000, 5).unwrap();
        assert_eq!(e.samples, 1_000);
        assert!(e.p_hat > 0.5);
        assert!(square_cyclic_fraction(3, 30, 10, 5).is_err());
    }
}
