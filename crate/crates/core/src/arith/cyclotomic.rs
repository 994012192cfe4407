use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::factor::{factorize, Factored};
use super::ArithError;

pub type BigFactored = Factored<BigUint>;

/// Möbius function.
pub fn mobius(n: u32) -> i8 {
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors_u32(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Value of the cyclotomic polynomial `Φ_d` at `q`.
pub fn cyclotomic_value(d: u32, q: &BigUint) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for e in divisors_u32(d) {
        let term = Pow::pow(q, e) - BigUint::one();
        match mobius(d / e) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

fn cache() -> &'static Mutex<HashMap<(BigUint, u32), BigFactored>> {
    static CACHE: OnceLock<Mutex<HashMap<(BigUint, u32), BigFactored>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `(b, k)` with `q = b^k` and `k` maximal.
fn perfect_power(q: &BigUint) -> (BigUint, u32) {
    let bits = q.bits() as u32;
    for k in (2..=bits).rev() {
        let b = q.nth_root(k);
        if b > BigUint::one() && Pow::pow(&b, k) == *q {
            return (b, k);
        }
    }
    (q.clone(), 1)
}

/// Factorization of `Φ_d(q)`, memoized process-wide.
pub fn cyclotomic_factored(d: u32, q: &BigUint) -> Result<BigFactored, ArithError> {
    let key = (q.clone(), d);
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let (b, k) = perfect_power(q);
    let f = if k > 1 {
        // Phi_d(b^k) is the product of Phi_m(b) over m | dk with m / gcd(m, k) = d.
        let mut acc = BigFactored::one();
        for m in divisors_u32(d * k).into_iter().filter(|m| m / m.gcd(&k) == d) {
            acc = acc.mul(&cyclotomic_factored(m, &b)?);
        }
        acc
    } else {
        factorize(&cyclotomic_value(d, q))?
    };
    cache().lock().expect("cache lock").insert(key, f.clone());
    Ok(f)
}

/// Factorization of `q^k - 1` through its cyclotomic pieces.
pub fn factor_pow_minus_one(q: &BigUint, k: u32) -> Result<BigFactored, ArithError> {
    if k == 0 || q.is_zero() || q.is_one() {
        return Err(ArithError::Zero);
    }
    let mut acc = BigFactored::one();
    for d in divisors_u32(k) {
        acc = acc.mul(&cyclotomic_factored(d, q)?);
    }
    Ok(acc)
}

/// Factorization of `q^k + 1` through its cyclotomic pieces.
pub fn factor_pow_plus_one(q: &BigUint, k: u32) -> Result<BigFactored, ArithError> {
    if k == 0 || q.is_zero() {
        return Err(ArithError::Zero);
    }
    let mut acc = BigFactored::one();
    for d in divisors_u32(2 * k) {
        if k % d != 0 {
            acc = acc.mul(&cyclotomic_factored(d, q)?);
        }
    }
    Ok(acc)
}
