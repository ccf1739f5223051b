//! Exact verification suites.

use altmodel::calibration::{quadrature::real_period_quadrature, real_period};
use altmodel::counting::{check_det_identity, check_inner_product_identity, LatticeBasis};
use altmodel::linalg::{
    cokernel, cokernel_of, determinant, is_perfect_square, pfaffian, smith_normal_form, torsion_order_big,
    AlternatingMatrix, IntegerMatrix,
};
use altmodel::model::{predicted_table, random_alternating};
use altmodel::rng::{task_index, task_rng};
use clap::ValueEnum;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Lattice,
    Snf,
    Pfaffian,
    Table,
    Period,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Lattice, Suite::Snf, Suite::Pfaffian, Suite::Table, Suite::Period],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Lattice => "lattice",
            Suite::Snf => "snf",
            Suite::Pfaffian => "pfaffian",
            Suite::Table => "table",
            Suite::Period => "period",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// First few failing cases.
    pub examples: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 5 {
                self.examples.push(what());
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        Self {
            suite: suite.name().to_string(),
            passed: checks.iter().all(|c| c.failures == 0),
            checks,
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!("[{}] {}\n", if self.passed { "PASS" } else { "FAIL" }, self.suite);
        for c in &self.checks {
            s += &format!("  {:<40} {:>8} cases {:>6} failures\n", c.name, c.cases, c.failures);
            for e in &c.examples {
                s += &format!("    {e}\n");
            }
        }
        s
    }
}

pub fn run_suite(suite: Suite, samples: u64, seed: u64) -> SuiteReport {
    match suite {
        Suite::All => unreachable!("expanded by caller"),
        Suite::Lattice => lattice(samples, seed),
        Suite::Snf => snf(samples, seed),
        Suite::Pfaffian => pfaffian_suite(samples, seed),
        Suite::Table => table(),
        Suite::Period => period(samples, seed),
    }
}

fn lattice(samples: u64, seed: u64) -> SuiteReport {
    let mut rng = task_rng(seed, task_index(32, 0));
    let mut inner = Check::new("R-basis inner products");
    let mut det = Check::new("R-basis Gram determinant");
    let mut drawn = 0;
    while drawn < samples {
        let r = rng.random_range(2..=4usize);
        let dim = rng.random_range(r..=6usize);
        let vectors: Vec<Vec<BigInt>> = (0..r)
            .map(|_| (0..dim).map(|_| BigInt::from(rng.random_range(-20i64..=20))).collect())
            .collect();
        let Ok(basis) = LatticeBasis::new(vectors) else { continue };
        drawn += 1;
        let show = || format!("{:?}", basis.vectors());
        inner.record(check_inner_product_identity(&basis) == Ok(true), show);
        det.record(check_det_identity(&basis) == Ok(true), show);
    }
    SuiteReport::new(Suite::Lattice, vec![inner, det])
}

/// `#{c in (Z/m)^n : A c = 0 mod m}`, by enumeration.
fn kernel_count_mod(a: &[i64], n: usize, m: i64) -> u64 {
    let mut c = vec![0i64; n];
    let mut count = 0;
    loop {
        if (0..n).all(|i| (0..n).map(|j| a[i * n + j] * c[j]).sum::<i64>().rem_euclid(m) == 0) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            c[k] += 1;
            if c[k] < m {
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

fn det_small(a: &[i64], n: usize) -> i64 {
    match n {
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        _ => unreachable!(),
    }
}

/// Moduli whose kernel counts pin down `Z^n / A Z^n`: every `p^k` dividing
/// `det A`, or all prime powers up to 8 when `A` is singular (its torsion
/// then divides a 2x2 minor, at most 8 in absolute value).
fn probe_moduli(det: i64) -> Vec<i64> {
    if det == 0 {
        return vec![2, 3, 4, 5, 7, 8];
    }
    let mut out = Vec::new();
    let mut d = det.abs();
    let mut p = 2;
    while d > 1 {
        let mut q = 1;
        while d % p == 0 {
            d /= p;
            q *= p;
            out.push(q);
        }
        p += 1;
    }
    out
}

fn snf(samples: u64, seed: u64) -> SuiteReport {
    let mut quotient = Check::new("cokernel vs quotient enumeration");
    for n in 1..=3usize {
        let total = 5u64.pow((n * n) as u32);
        for code in 0..total {
            let mut x = code;
            let a: Vec<i64> = (0..n * n)
                .map(|_| {
                    let v = (x % 5) as i64 - 2;
                    x /= 5;
                    v
                })
                .collect();
            let m = IntegerMatrix::new(n, n, a.clone()).expect("shape");
            let c = cokernel_of(&m);
            let det = det_small(&a, n);
            let mut ok = (det == 0) == (c.free_rank > 0);
            if det != 0 {
                ok &= c.torsion.iter().product::<i64>() == det.abs();
            }
            for q in probe_moduli(det) {
                let expect = q.pow(c.free_rank as u32) * c.torsion.iter().map(|t| t.gcd(&q)).product::<i64>();
                ok &= kernel_count_mod(&a, n, q) == expect as u64;
            }
            quotient.record(ok, || format!("{a:?} -> {c:?}"));
        }
    }

    let mut paired = Check::new("alternating cokernels paired");
    for (n, x) in [(4usize, 2i64), (5, 1)] {
        let m = n * (n - 1) / 2;
        let base = (2 * x + 1) as u64;
        for code in 0..base.pow(m as u32) {
            let mut k = code;
            let upper: Vec<i64> = (0..m)
                .map(|_| {
                    let v = (k % base) as i64 - x;
                    k /= base;
                    v
                })
                .collect();
            let a = AlternatingMatrix::new(n, upper).expect("length");
            let c = cokernel(&a);
            paired.record(c.is_paired() && is_perfect_square(&torsion_order_big(&c)), || format!("{a:?}"));
        }
    }

    let mut rng = task_rng(seed, task_index(33, 0));
    let mut recon = Check::new("U A V = diag, unimodular U, V");
    let mut chain = Check::new("divisor chain");
    for _ in 0..samples {
        let rows = rng.random_range(1..=6usize);
        let cols = rng.random_range(1..=6usize);
        let a = IntegerMatrix::new(
            rows,
            cols,
            (0..rows * cols).map(|_| BigInt::from(rng.random_range(-20i64..=20))).collect(),
        )
        .expect("shape");
        let s = smith_normal_form(&a);
        let d = s.diagonal();
        let prod = s.u.mul(&a).and_then(|ua| ua.mul(&s.v)).expect("shapes");
        let unimodular = determinant(&s.u).abs().is_one() && determinant(&s.v).abs().is_one();
        recon.record(prod == d && unimodular, || format!("{a:?}"));
        let ok = s.divisors.iter().all(|x| !x.is_negative())
            && s.divisors.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            });
        chain.record(ok, || format!("{:?}", s.divisors));
        let alt = random_alternating(rng.random_range(1..=8usize), 30, &mut rng).to_bigint();
        let c = cokernel(&alt);
        paired.record(c.is_paired() && is_perfect_square(&torsion_order_big(&c)), || format!("{alt:?}"));
    }
    SuiteReport::new(Suite::Snf, vec![quotient, paired, recon, chain])
}

fn pfaffian_suite(samples: u64, seed: u64) -> SuiteReport {
    let mut rng = task_rng(seed, task_index(34, 0));
    let mut check = Check::new("Pf^2 = det");
    for _ in 0..samples {
        let n = rng.random_range(1..=8usize);
        let a = random_alternating(n, 50, &mut rng).to_bigint();
        let pf = pfaffian(&a);
        check.record(&pf * &pf == determinant(&a.to_full()), || format!("{a:?}"));
    }
    SuiteReport::new(Suite::Pfaffian, vec![check])
}

/// Published percentages at `H = 10^10 .. 10^15`.
pub const PRINTED_TABLE: [(f64, [f64; 4]); 6] = [
    (1e10, [30.8, 42.7, 19.2, 7.3]),
    (1e11, [32.6, 43.9, 17.4, 6.0]),
    (1e12, [34.2, 45.0, 15.8, 5.0]),
    (1e13, [35.6, 45.9, 14.4, 4.1]),
    (1e14, [36.9, 46.6, 13.0, 3.4]),
    (1e15, [38.1, 47.2, 11.9, 2.8]),
];

fn table() -> SuiteReport {
    let mut check = Check::new("predicted percentages within 0.1");
    let rows = predicted_table(&PRINTED_TABLE.map(|(h, _)| h));
    for (row, (h, want)) in rows.iter().zip(PRINTED_TABLE) {
        let got = row.percentages();
        let ok = got.iter().zip(want).all(|(g, w)| (g - w).abs() <= 0.1);
        check.record(ok, || format!("H={h:e}: {got:?} vs {want:?}"));
    }
    SuiteReport::new(Suite::Table, vec![check])
}

fn period(samples: u64, seed: u64) -> SuiteReport {
    let mut rng = task_rng(seed, task_index(35, 0));
    let mut agm = Check::new("AGM vs quadrature (1e-8)");
    let mut scaling = Check::new("scaling covariance (1e-9)");
    let mut done = 0;
    while done < samples {
        let a = rng.random_range(-2_000i64..=2_000);
        let b = rng.random_range(-50_000i64..=50_000);
        if 4 * a * a * a + 27 * b * b == 0 {
            continue;
        }
        done += 1;
        let (af, bf) = (a as f64, b as f64);
        let w = real_period(af, bf, 1e-10);
        let q = real_period_quadrature(af, bf, 1e-12);
        let ok = match (&w, &q) {
            (Ok(w), Ok(q)) => (w.omega - q).abs() <= 1e-8 * w.omega.max(1.0),
            _ => false,
        };
        agm.record(ok, || format!("({a}, {b}): {w:?} vs {q:?}"));
        for l in [2i64, 3, 5] {
            let s = real_period((a * l.pow(4)) as f64, (b * l.pow(6)) as f64, 1e-10);
            let ok = match (&w, &s) {
                (Ok(w), Ok(s)) => (s.omega * l as f64 - w.omega).abs() <= 1e-9 * w.omega.max(1.0),
                _ => false,
            };
            scaling.record(ok, || format!("({a}, {b}) lambda={l}"));
        }
    }
    SuiteReport::new(Suite::Period, vec![agm, scaling])
}
