//! Integer helpers: trial-division factorization and prime extractors.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
/// `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, e))` when `n = p^e` with `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [single] => Some(*single),
        _ => None,
    }
}

/// Smallest prime factor of `n`.
pub fn p_minus(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Precondition(format!("P-({n}) needs n >= 2")));
    }
    Ok(factorize(n)[0].0)
}

/// Largest prime factor of `n`.
pub fn p_plus(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Precondition(format!("P+({n}) needs n >= 2")));
    }
    Ok(factorize(n).last().unwrap().0)
}

/// 1-based position of the prime `p` in 2, 3, 5, 7, ...
pub fn prime_index(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok((2..=p).filter(|&q| is_prime(q)).count() as u32)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// p-adic valuation of `n > 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_extractors() {
        assert_eq!(p_minus(12).unwrap(), 2);
        assert_eq!(p_plus(12).unwrap(), 3);
        assert_eq!(p_minus(30).unwrap(), 2);
        assert_eq!(p_plus(30).unwrap(), 5);
        assert_eq!(p_minus(7).unwrap(), 7);
        assert!(p_minus(1).is_err());
        assert!(p_plus(0).is_err());
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn prime_positions() {
        assert_eq!(prime_index(2).unwrap(), 1);
        assert_eq!(prime_index(3).unwrap(), 2);
        assert_eq!(prime_index(5).unwrap(), 3);
        assert_eq!(prime_index(13).unwrap(), 6);
        assert!(prime_index(9).is_err());
    }
}
