use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, ToPrimitive, Unsigned, Zero};

/// Unsigned integer type usable by the factorization routines.
pub trait Natural:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Integer
    + Unsigned
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// `a * b mod m` without overflow.
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self;

    fn to_biguint(&self) -> BigUint;

    /// `None` when the value does not fit.
    fn from_biguint(v: &BigUint) -> Option<Self>;

    fn pow_mod(&self, exp: &Self, m: &Self) -> Self {
        let two = Self::one() + Self::one();
        let mut base = self.clone() % m.clone();
        let mut e = exp.clone();
        let mut acc = Self::one() % m.clone();
        while !e.is_zero() {
            if e.is_odd() {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e = e / two.clone();
        }
        acc
    }

    fn add_mod(&self, rhs: &Self, m: &Self) -> Self {
        let a = self.clone() % m.clone();
        let b = rhs.clone() % m.clone();
        let gap = m.clone() - b.clone();
        if a >= gap {
            a - gap
        } else {
            a + b
        }
    }
}

impl Natural for u64 {
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        ((*self as u128 * *rhs as u128) % *m as u128) as u64
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }

    fn from_biguint(v: &BigUint) -> Option<Self> {
        v.to_u64()
    }
}

impl Natural for u128 {
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        if let (Ok(a), Ok(b)) = (u64::try_from(*self), u64::try_from(*rhs)) {
            return (a as u128 * b as u128) % *m;
        }
        let prod = BigUint::from(*self) * BigUint::from(*rhs) % BigUint::from(*m);
        prod.to_u128().expect("residue below modulus")
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }

    fn from_biguint(v: &BigUint) -> Option<Self> {
        v.to_u128()
    }
}

impl Natural for BigUint {
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        (self * rhs) % m
    }

    fn pow_mod(&self, exp: &Self, m: &Self) -> Self {
        if m.is_one() {
            return Self::zero();
        }
        self.modpow(exp, m)
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }

    fn from_biguint(v: &BigUint) -> Option<Self> {
        Some(v.clone())
    }
}
