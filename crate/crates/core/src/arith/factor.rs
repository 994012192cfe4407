use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Pow;
use serde::{Serialize, Serializer};

use super::natural::Natural;
use super::primes::{factor_map, is_prime};
use super::ArithError;

/// A positive integer together with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factored<N: Natural> {
    value: N,
    factors: BTreeMap<N, u32>,
}

impl<N: Natural> Factored<N> {
    pub fn one() -> Self {
        Self { value: N::one(), factors: BTreeMap::new() }
    }

    /// Builds from a prime -> exponent map. Entries with zero exponent are dropped.
    /// Every key must be prime.
    pub fn from_factors(factors: BTreeMap<N, u32>) -> Result<Self, ArithError> {
        let mut value = N::one();
        let mut clean = BTreeMap::new();
        for (p, e) in factors {
            if e == 0 {
                continue;
            }
            if !is_prime(&p) {
                return Err(ArithError::NotPrime(p.to_string()));
            }
            for _ in 0..e {
                value = value * p.clone();
            }
            clean.insert(p, e);
        }
        Ok(Self { value, factors: clean })
    }

    pub fn value(&self) -> &N {
        &self.value
    }

    pub fn factors(&self) -> &BTreeMap<N, u32> {
        &self.factors
    }

    pub fn exponent(&self, p: &N) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> BTreeSet<N> {
        self.factors.keys().cloned().collect()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            *factors.entry(p.clone()).or_insert(0) += e;
        }
        Self { value: self.value.clone() * other.value.clone(), factors }
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        let factors = self.factors.iter().map(|(p, e)| (p.clone(), e * k)).collect();
        let mut value = N::one();
        for _ in 0..k {
            value = value * self.value.clone();
        }
        Self { value, factors }
    }

    /// Exact quotient; `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            let slot = factors.get_mut(p)?;
            if *slot < *e {
                return None;
            }
            *slot -= e;
            if *slot == 0 {
                factors.remove(p);
            }
        }
        Some(Self { value: self.value.clone() / other.value.clone(), factors })
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let factors: BTreeMap<N, u32> = self
            .factors
            .iter()
            .filter_map(|(p, e)| {
                let f = other.exponent(p).min(*e);
                (f > 0).then(|| (p.clone(), f))
            })
            .collect();
        Self::rebuild(factors)
    }

    fn rebuild(factors: BTreeMap<N, u32>) -> Self {
        let mut value = N::one();
        for (p, e) in &factors {
            for _ in 0..*e {
                value = value * p.clone();
            }
        }
        Self { value, factors }
    }

    /// Largest divisor whose prime divisors all lie in `primes`.
    pub fn part(&self, primes: &BTreeSet<N>) -> Self {
        Self::rebuild(
            self.factors
                .iter()
                .filter(|(p, _)| primes.contains(*p))
                .map(|(p, e)| (p.clone(), *e))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|(p, e)| other.exponent(p) >= *e)
    }

    /// Euler's totient.
    pub fn phi(&self) -> N {
        let mut acc = N::one();
        for (p, e) in &self.factors {
            acc = acc * (p.clone() - N::one());
            for _ in 1..*e {
                acc = acc * p.clone();
            }
        }
        acc
    }

    /// Number of positive divisors.
    pub fn divisor_count(&self) -> u64 {
        self.factors.values().map(|e| *e as u64 + 1).product()
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<N> {
        let mut out = vec![N::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            for d in &out {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..*e {
                    pk = pk * p.clone();
                    next.push(pk.clone());
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    pub fn convert<M: Natural>(&self) -> Option<Factored<M>> {
        let value = M::from_biguint(&self.value.to_biguint())?;
        let factors = self
            .factors
            .iter()
            .map(|(p, e)| M::from_biguint(&p.to_biguint()).map(|q| (q, *e)))
            .collect::<Option<_>>()?;
        Some(Factored { value, factors })
    }
}

impl<N: Natural> fmt::Display for Factored<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl<N: Natural> Serialize for Factored<N> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Factored", 2)?;
        st.serialize_field("value", &self.value.to_string())?;
        let pairs: Vec<(String, u32)> =
            self.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        st.serialize_field("factors", &pairs)?;
        st.end()
    }
}

/// Prime factorization of a positive integer.
pub fn factorize<N: Natural>(n: &N) -> Result<Factored<N>, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    let factors = if let Some(v) = n.to_u64() {
        lift(factor_map(&v))
    } else if let Some(v) = n.to_u128() {
        lift(factor_map(&v))
    } else {
        factor_map(n)
    };
    Ok(Factored { value: n.clone(), factors })
}

fn lift<M: Natural, N: Natural>(m: BTreeMap<M, u32>) -> BTreeMap<N, u32> {
    m.into_iter()
        .map(|(p, e)| (N::from_biguint(&p.to_biguint()).expect("prime below input"), e))
        .collect()
}

/// Set of primes dividing `n`.
pub fn prime_set<N: Natural>(n: &N) -> Result<BTreeSet<N>, ArithError> {
    Ok(factorize(n)?.primes())
}

pub fn euler_phi<N: Natural>(n: &N) -> Result<N, ArithError> {
    Ok(factorize(n)?.phi())
}

/// Largest power of the prime `r` dividing `n`.
pub fn r_part<N: Natural>(n: &N, r: &N) -> Result<N, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    if !is_prime(r) {
        return Err(ArithError::NotPrime(r.to_string()));
    }
    let mut rest = n.clone();
    let mut acc = N::one();
    while (rest.clone() % r.clone()).is_zero() {
        rest = rest / r.clone();
        acc = acc * r.clone();
    }
    Ok(acc)
}

/// `base^exp` as a natural.
pub fn pow_nat<N: Natural>(base: &N, exp: u32) -> N {
    let b = base.to_biguint();
    N::from_biguint(&Pow::pow(&b, exp)).expect("power overflows the scalar type")
}

/// Sorted prime list of a set, rendered as decimal strings.
pub fn render_primes<N: Natural>(set: &BTreeSet<N>) -> String {
    let parts: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn fm(pairs: &[(u64, u32)]) -> BTreeMap<u64, u32> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(factorize(&5616u64).unwrap().factors(), &fm(&[(2, 4), (3, 3), (13, 1)]));
        assert_eq!(
            factorize(&7920u64).unwrap().factors(),
            &fm(&[(2, 4), (3, 2), (5, 1), (11, 1)])
        );
        assert!(factorize(&1u64).unwrap().is_one());
        assert_eq!(factorize(&0u64), Err(ArithError::Zero));
    }

    #[test]
    fn big_value_round_trip() {
        let n: BigUint = (BigUint::from(2u8) << 130usize) - BigUint::from(1u8);
        let f = factorize(&n).unwrap();
        let mut prod = BigUint::from(1u8);
        for (p, e) in f.factors() {
            assert!(is_prime(p));
            for _ in 0..*e {
                prod *= p;
            }
        }
        assert_eq!(prod, n);
    }

    #[test]
    fn r_part_and_phi() {
        assert_eq!(r_part(&5616u64, &2).unwrap(), 16);
        assert_eq!(r_part(&5616u64, &5).unwrap(), 1);
        assert!(matches!(r_part(&12u64, &4), Err(ArithError::NotPrime(_))));
        assert_eq!(euler_phi(&36u64).unwrap(), 12);
        assert_eq!(euler_phi(&1u64).unwrap(), 1);
    }

    #[test]
    fn arithmetic_on_factored() {
        let a = factorize(&360u64).unwrap();
        let b = factorize(&84u64).unwrap();
        assert_eq!(*a.mul(&b).value(), 30240);
        assert_eq!(*a.gcd(&b).value(), 12);
        assert!(a.checked_div(&b).is_none());
        assert_eq!(*a.checked_div(&factorize(&8u64).unwrap()).unwrap().value(), 45);
        assert_eq!(a.divisors().len() as u64, a.divisor_count());
        assert_eq!(a.to_string(), "2^3*3^2*5");
    }
}
