//! Exact integer arithmetic: factorization, totients, prime parts and
//! primitive prime divisors.

mod cyclotomic;
mod factor;
mod natural;
mod primes;

use thiserror::Error;

pub use cyclotomic::{
    cyclotomic_factored, cyclotomic_value, divisors_u32, factor_pow_minus_one,
    factor_pow_plus_one, mobius,
};
pub use factor::{euler_phi, factorize, pow_nat, prime_set, r_part, render_primes, Factored};
pub use natural::Natural;
pub use primes::{is_prime, sieve, small_primes, SIEVE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero has no prime factorization")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("zsigmondy requires q >= 2 and n >= 2, got q = {q}, n = {n}")]
    ZsigmondyDomain { q: String, n: u32 },
    #[error("value {0} does not fit the requested integer type")]
    Overflow(String),
}

/// Multiplicative order of `q` modulo the prime `p`, assuming `p` does not divide `q`.
pub fn multiplicative_order<N: Natural>(q: &N, p: &N) -> u64 {
    let one = N::one();
    let base = q.clone() % p.clone();
    let mut x = base.clone();
    let mut k = 1u64;
    while x != one {
        x = x.mul_mod(&base, p);
        k += 1;
    }
    k
}

/// All primitive prime divisors of `q^n - 1`, ascending.
pub fn primitive_prime_divisors<N: Natural>(q: &N, n: u32) -> Result<Vec<N>, ArithError> {
    let two = N::from_u64(2).expect("2 fits");
    if *q < two || n < 2 {
        return Err(ArithError::ZsigmondyDomain { q: q.to_string(), n });
    }
    let qb = q.to_biguint();
    let phi = cyclotomic_factored(n, &qb)?;
    let mut out = Vec::new();
    for p in phi.factors().keys() {
        if multiplicative_order(&qb, p) == n as u64 {
            out.push(N::from_biguint(p).ok_or_else(|| ArithError::Overflow(p.to_string()))?);
        }
    }
    Ok(out)
}

/// Smallest primitive prime divisor of `q^n - 1`, or `None` in the Zsigmondy
/// exceptional cases.
pub fn zsigmondy<N: Natural>(q: &N, n: u32) -> Result<Option<N>, ArithError> {
    Ok(primitive_prime_divisors(q, n)?.into_iter().next())
}
