//! Closed-form conjectured values and the wideness predicates.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::rational::Rational;

/// `k*(G) = Σ (1 − 1/n_j)` over the prime-power components.
pub fn k_star(g: &GroupSpec) -> Rational {
    g.components()
        .iter()
        .map(|&n| Rational::new(n as i64 - 1, n as i64))
        .sum()
}

/// `K*(G) = k*(G) + 1/exp(G)`; zero for the trivial group, which has no
/// irreducible sequences.
#[allow(non_snake_case)]
pub fn K_star(g: &GroupSpec) -> Rational {
    if g.is_trivial() {
        return Rational::zero();
    }
    k_star(g) + Rational::new(1, g.exponent() as i64)
}

/// `K₁*(G) = Σ (n − 1)/(n − n/p)` over components `C_n`, `n` a power of `p`.
#[allow(non_snake_case)]
pub fn K1_star(g: &GroupSpec) -> Rational {
    g.component_info()
        .iter()
        .map(|c| {
            let n = c.order as i64;
            Rational::new(n - 1, n - n / c.prime as i64)
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WideVariant {
    Wide,
    TwoWide,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidenessReport {
    pub p: u64,
    pub n: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub variant: WideVariant,
}

/// `Π (q^{α+1} − 1)/(q^{α+1} − q^α)` over the factorization of `n`.
fn divisor_product(n: u64) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (q, a) in factorize(n) {
        let qa = BigInt::from(q).pow(a);
        let qa1 = &qa * q;
        num *= &qa1 - 1;
        den *= qa1 - qa;
    }
    Rational::from_big(num, den)
}

fn wideness(p: u64, n: u64, variant: WideVariant) -> Result<WidenessReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let lhs = match variant {
        WideVariant::Wide => Rational::new(p as i64, p as i64 - 1),
        WideVariant::TwoWide => {
            let pp = BigInt::from(p) * p;
            Rational::from_big(&pp + 2 * BigInt::from(p) - 2, pp)
        }
    };
    let rhs = divisor_product(n);
    let holds = lhs >= rhs && n % p != 0;
    Ok(WidenessReport {
        p,
        n,
        lhs,
        rhs,
        holds,
        variant,
    })
}

/// `p ≺ n`.
pub fn is_wide(p: u64, n: u64) -> Result<WidenessReport> {
    wideness(p, n, WideVariant::Wide)
}

/// `p ≺₂ n`.
pub fn is_2wide(p: u64, n: u64) -> Result<WidenessReport> {
    wideness(p, n, WideVariant::TwoWide)
}

fn integer_chain(n: u64, variant: WideVariant) -> Result<bool> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let parts = factorize(n);
    for i in 0..parts.len().saturating_sub(1) {
        let rest: u64 = parts[i + 1..].iter().map(|&(q, a)| q.pow(a)).product();
        if !wideness(parts[i].0, rest, variant)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_wide_integer(n: u64) -> Result<bool> {
    integer_chain(n, WideVariant::Wide)
}

pub fn is_2wide_integer(n: u64) -> Result<bool> {
    integer_chain(n, WideVariant::TwoWide)
}
