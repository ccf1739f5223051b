//! Small prime utilities: sieve, deterministic Miller-Rabin for `u64`, and
//! factorization of 64-bit integers.

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic for all `u64` (first twelve prime bases).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact integer square root.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Prime factorization of any `u64` as sorted `(prime, exponent)` pairs.
///
/// Trial division by small primes, then Pollard rho (Brent variant) on the
/// cofactor.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for d in [2u64, 3, 5] {
        while n % d == 0 {
            n /= d;
            primes.push(d);
        }
    }
    let mut d = 7u64;
    while d < 10_000 && d * d <= n {
        while n % d == 0 {
            n /= d;
            primes.push(d);
        }
        d += 2;
    }
    if n > 1 {
        split(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let r = isqrt(n);
    if r * r == n {
        split(r, out);
        split(r, out);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = rho(n, c) {
            break d;
        }
        c += 1;
    };
    split(d, out);
    split(n / d, out);
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn rho(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
    let mut power = 1u64;
    let mut lam = 0u64;
    while g == 1 {
        if power == lam {
            x = y;
            power *= 2;
            lam = 0;
        }
        y = f(y);
        lam += 1;
        g = gcd(x.abs_diff(y), n);
    }
    (g != n).then_some(g)
}

/// p-adic valuation of a nonzero `u128`.
pub fn valuation(mut x: u128, p: u64) -> u32 {
    debug_assert!(x != 0);
    let p = p as u128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_primality_agree() {
        let ps = primes_up_to(10_000);
        assert_eq!(ps.len(), 1229);
        for n in 0..10_000u64 {
            assert_eq!(is_prime(n), ps.binary_search(&n).is_ok(), "n = {n}");
        }
        assert!(is_prime(1_000_003));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(64), vec![(2, 6)]);
        assert_eq!(factorize(1_000_003 * 1_000_003), vec![(1_000_003, 2)]);
        assert_eq!(factorize(999_983 * 1_000_003), vec![(999_983, 1), (1_000_003, 1)]);
        assert_eq!(factorize(1_000_003 * 1_000_033), vec![(1_000_003, 1), (1_000_033, 1)]);
        assert_eq!(factorize(600_851_475_143), vec![(71, 1), (839, 1), (1471, 1), (6857, 1)]);
    }
}
