//! Integer helpers: modular arithmetic, primality, factorization, orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of a 64-bit integer as sorted (prime, exponent) pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= n && p < 1000 {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += 1;
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    collect_powers(primes)
}

fn collect_powers(mut primes: Vec<u64>) -> Vec<(u64, u32)> {
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub const TRIAL_LIMIT: u64 = 1_000_000;
pub const COFACTOR_CAP: u64 = 1_000_000_000_000_000_000;

/// Factor a nonzero integer: trial division to 10^6, then the cofactor
/// (at most 10^18) by Miller-Rabin and Pollard rho.
pub fn factor_bigint(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::Invalid("cannot factor zero".into()));
    }
    let mut m = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            primes.push(p);
            m /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        match m.to_u64() {
            Some(c) if c <= COFACTOR_CAP => {
                for (q, k) in factor_u64(c) {
                    primes.extend(std::iter::repeat_n(q, k as usize));
                }
            }
            _ => return Err(Error::Unfactored(m.to_string())),
        }
    }
    Ok(collect_powers(primes))
}

/// p-adic valuation of a nonzero big integer.
pub fn val_p(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub fn val_p_u64(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of q modulo m (m >= 1, gcd(q, m) = 1).
pub fn mult_order(q: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let phi = euler_phi(m);
    let mut ord = phi;
    for (l, _) in factor_u64(phi) {
        while ord % l == 0 && pow_mod(q, ord / l, m) == 1 {
            ord /= l;
        }
    }
    ord
}

/// Returns (p, k) when n = p^k with p prime and k >= 1.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factor_u64(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, k) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Signed 2-adic order of a rational number; None for zero.
pub fn ord2(x: &num_rational::Ratio<i64>) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(x.numer().trailing_zeros() as i64 - x.denom().trailing_zeros() as i64)
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn bigpow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

pub fn is_one_mod(n: &BigInt, m: u64) -> bool {
    n.mod_floor(&BigInt::from(m)).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_small() {
        let brute: Vec<u64> = (0..500)
            .filter(|&n| n > 1 && (2..n).all(|d| n % d != 0))
            .collect();
        let fast: Vec<u64> = (0..500).filter(|&n| is_prime(n)).collect();
        assert_eq!(brute, fast);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u64, 2, 12, 28561, 999_983 * 1_000_003, 2u64.pow(40) * 13] {
            let f = factor_u64(n);
            assert_eq!(f.iter().map(|(p, k)| p.pow(*k)).product::<u64>(), n);
            assert!(f.iter().all(|(p, _)| is_prime(*p)));
        }
        let big = BigInt::from(-4096i64) * BigInt::from(371293i64);
        assert_eq!(factor_bigint(&big).unwrap(), vec![(2, 12), (13, 5)]);
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(13, 8), 2);
        assert_eq!(mult_order(2, 5), 4);
        assert_eq!(mult_order(7, 5), 4);
        assert_eq!(mult_order(5, 1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_power(169), Some((13, 2)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn ord2_signed() {
        use num_rational::Ratio;
        assert_eq!(ord2(&Ratio::new(3, 4)), Some(-2));
        assert_eq!(ord2(&Ratio::new(12, 1)), Some(2));
        assert_eq!(ord2(&Ratio::new(0, 1)), None);
    }
}
