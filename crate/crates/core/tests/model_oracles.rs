use altmodel::groups::{delaunay_measure, AbelianPGroup, SymplecticPGroup};
use altmodel::linalg::{alternating_p_part_local, cokernel, pfaffian, AlternatingMatrix};
use altmodel::model::{
    count_curves_exact, empirical_corank_prob, random_alternating, sample_curve_in_band_u128, square_cyclic_fraction,
    Mode, DEFAULT_COUNT_CAP,
};
use altmodel::rng::task_rng;
use num_bigint::BigInt;
use num_traits::Zero;

#[test]
fn band_sampler_matches_exact_counts() {
    let h: u128 = 1_000_000;
    let lo = count_curves_exact(h / 2, DEFAULT_COUNT_CAP).unwrap();
    let mid = count_curves_exact(3 * h / 4, DEFAULT_COUNT_CAP).unwrap();
    let hi = count_curves_exact(h, DEFAULT_COUNT_CAP).unwrap();
    let expected = (mid - lo) as f64 / (hi - lo) as f64;

    let mut rng = task_rng(7, 0);
    let samples = 20_000;
    let mut lower = 0u64;
    for _ in 0..samples {
        let (_, _, height) = sample_curve_in_band_u128(h, &mut rng);
        assert!(2 * height > h && height <= h);
        if height <= 3 * h / 4 {
            lower += 1;
        }
    }
    let p = lower as f64 / samples as f64;
    let sigma = (expected * (1.0 - expected) / samples as f64).sqrt();
    assert!((p - expected).abs() < 4.0 * sigma, "{p} vs {expected}");
}

// n = 4: corank is 0 or >= 2, and it is >= 2 exactly when the Pfaffian vanishes.
fn pfaffian_zero_fraction(x: i64) -> f64 {
    let r: Vec<i64> = (-x..=x).collect();
    let mut zero = 0u64;
    let mut total = 0u64;
    for &a in &r {
        for &b in &r {
            for &c in &r {
                for &d in &r {
                    for &e in &r {
                        for &f in &r {
                            total += 1;
                            if a * f - b * e + c * d == 0 {
                                zero += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    zero as f64 / total as f64
}

#[test]
fn corank_probability_exact_and_monte_carlo() {
    let oracle = pfaffian_zero_fraction(2);
    let exact = empirical_corank_prob(4, 2, 2, Mode::Exact, 0, 0).unwrap();
    assert!((exact.p_hat - oracle).abs() < 1e-12);
    let mc = empirical_corank_prob(4, 2, 2, Mode::MonteCarlo, 40_000, 11).unwrap();
    assert!(mc.within_sigmas(oracle, 4.0), "{} vs {oracle}", mc.p_hat);
}

#[test]
fn cokernel_agrees_with_pfaffian_and_local_part() {
    let mut rng = task_rng(3, 1);
    for n in [2usize, 4, 6, 8] {
        for _ in 0..40 {
            let a: AlternatingMatrix<BigInt> = random_alternating(n, 6, &mut rng).to_bigint();
            let pf = pfaffian(&a);
            let c = cokernel(&a);
            if pf.is_zero() {
                assert!(c.free_rank >= 2);
                continue;
            }
            assert_eq!(c.free_rank, 0);
            assert!(c.is_paired());
            assert_eq!(c.torsion_order(), &pf * &pf);
            for p in [2u64, 3, 5] {
                let global = c.p_part(p).unwrap();
                let local = alternating_p_part_local(&a, p, 0, 2).unwrap();
                assert_eq!(global, local);
            }
        }
    }
}

fn cyclic_square_mass(p: u64) -> f64 {
    (0..14)
        .map(|k| {
            let j = if k == 0 {
                AbelianPGroup::trivial(p).unwrap()
            } else {
                AbelianPGroup::cyclic(p, k).unwrap()
            };
            delaunay_measure::<f64>(&SymplecticPGroup::new(j), 0, 1e-14, 64).value
        })
        .sum()
}

#[test]
fn square_cyclic_fraction_follows_rank_zero_measure() {
    let closed = |p: f64| {
        let trivial: f64 = (1..60).map(|i| 1.0 - p.powi(1 - 2 * i)).product();
        trivial * (1.0 + 1.0 / ((1.0 - p.powi(-2)) * (p - 1.0)))
    };
    for p in [2u64, 3, 5] {
        assert!((cyclic_square_mass(p) - closed(p as f64)).abs() < 1e-3, "p = {p}");
    }
    let density: f64 = altmodel::primes::primes_up_to(100_000).into_iter().map(|p| closed(p as f64)).product();
    let e = square_cyclic_fraction(10, 10_000, 4_000, 21).unwrap();
    assert!(e.within_sigmas(density, 4.0), "{} vs {density}", e.p_hat);
}
