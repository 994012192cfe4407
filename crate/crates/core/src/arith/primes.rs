use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::natural::Natural;

/// Trial-division bound.
pub const SIEVE_LIMIT: u32 = 1_000_000;

/// Primes below [`SIEVE_LIMIT`], computed once.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(SIEVE_LIMIT))
}

/// Sieve of Eratosthenes: all primes `< limit`.
pub fn sieve(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if composite[i] {
            continue;
        }
        out.push(i as u32);
        let mut j = i * i;
        while j < n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

const WITNESSES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first twelve prime bases, which is deterministic
/// below 3.3e24; larger inputs get twenty bases.
pub fn is_prime<N: Natural>(n: &N) -> bool {
    let two = N::from_u64(2).unwrap();
    if *n < two {
        return false;
    }
    for &p in &WITNESSES {
        let p = N::from_u64(p).unwrap();
        if *n == p {
            return true;
        }
        if (n.clone() % p).is_zero() {
            return false;
        }
    }
    let one = N::one();
    let n_minus_1 = n.clone() - one.clone();
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d = d / two.clone();
        s += 1;
    }
    let deterministic = n.bits_at_most(81);
    let rounds = if deterministic { 12 } else { WITNESSES.len() };
    'witness: for &a in &WITNESSES[..rounds] {
        let a = N::from_u64(a).unwrap();
        let mut x = a.pow_mod(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.mul_mod(&x, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

trait BitsAtMost {
    fn bits_at_most(&self, bits: u64) -> bool;
}

impl<N: Natural> BitsAtMost for N {
    fn bits_at_most(&self, bits: u64) -> bool {
        self.to_biguint().bits() <= bits
    }
}

/// Brent's variant of Pollard rho. `n` must be odd and composite.
fn pollard_brent<N: Natural>(n: &N) -> N {
    let one = N::one();
    let mut c = one.clone();
    loop {
        let f = |x: &N| x.mul_mod(x, n).add_mod(&c, n);
        let mut y = N::from_u64(2).unwrap();
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 128;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { x.clone() - y.clone() } else { y.clone() - x.clone() };
                    q = q.mul_mod(&diff, n);
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { x.clone() - ys.clone() } else { ys.clone() - x.clone() };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n && !g.is_zero() {
            return g;
        }
        c = c + one.clone();
    }
}

/// Montgomery arithmetic modulo an odd `n < 2^127`, with `R = 2^128`.
struct Montgomery {
    n: u128,
    /// `-n^{-1} mod R`.
    n_neg_inv: u128,
    /// `R^2 mod n`.
    r2: u128,
}

/// High and low halves of the 256-bit product `a b`.
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let mask = u64::MAX as u128;
    let (a0, a1) = (a & mask, a >> 64);
    let (b0, b1) = (b & mask, b >> 64);
    let ll = a0 * b0;
    let lh = a0 * b1;
    let hl = a1 * b0;
    let hh = a1 * b1;
    let mid = (ll >> 64) + (lh & mask) + (hl & mask);
    let lo = (ll & mask) | (mid << 64);
    let hi = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (hi, lo)
}

impl Montgomery {
    fn new(n: u128) -> Self {
        debug_assert!(n % 2 == 1 && n < 1 << 127);
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r_mod = (u128::MAX % n + 1) % n;
        let r2 = (BigUint::from(r_mod) * BigUint::from(r_mod) % BigUint::from(n)).to_u128().expect("below n");
        Montgomery { n, n_neg_inv: inv.wrapping_neg(), r2 }
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mh, _) = mul_wide(m, self.n);
        let t = hi + mh + (lo != 0) as u128;
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }
}

/// Pollard-Brent on Montgomery residues; `n` odd, composite, below `2^127`.
fn pollard_brent_u128(n: u128) -> u128 {
    let mont = Montgomery::new(n);
    let gcd = |a: u128| num_integer::Integer::gcd(&a, &n);
    let mut c_plain: u128 = 1;
    loop {
        let c = mont.to_mont(c_plain);
        let f = |x: u128| mont.add(mont.mul(x, x), c);
        let mut y = mont.to_mont(2);
        let mut x = y;
        let mut ys = y;
        let mut q = mont.to_mont(1);
        let mut g: u128 = 1;
        let mut r: u64 = 1;
        let m: u64 = 256;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mont.mul(q, x.abs_diff(y));
                }
                g = gcd(q);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys));
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c_plain += 1;
    }
}

fn find_divisor<N: Natural>(n: &N) -> N {
    match n.to_u128() {
        Some(v) if v % 2 == 1 && v < 1 << 127 => N::from_u128(pollard_brent_u128(v)).expect("divisor fits"),
        _ => pollard_brent(n),
    }
}

fn split_into<N: Natural>(n: N, out: &mut BTreeMap<N, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = find_divisor(&n);
    let rest = n / d.clone();
    split_into(d, out);
    split_into(rest, out);
}

/// Prime factorization of `n > 0` as a map prime -> exponent.
pub(crate) fn factor_map<N: Natural>(n: &N) -> BTreeMap<N, u32> {
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        let pn = N::from_u32(p).unwrap();
        if pn.clone() * pn.clone() > rest {
            break;
        }
        let mut e = 0;
        while (rest.clone() % pn.clone()).is_zero() {
            rest = rest / pn.clone();
            e += 1;
        }
        if e > 0 {
            out.insert(pn, e);
        }
    }
    split_into(rest, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn montgomery_matches_bigint() {
        for n in [0xffff_ffff_ffff_ffc5u128, (1u128 << 89) - 1, (1u128 << 127) - 1, 1_000_000_007 * 998_244_353] {
            let mont = Montgomery::new(n);
            let (a, b) = (n / 3 + 17, n - 5);
            let back = mont.mul(mont.mul(mont.to_mont(a), mont.to_mont(b)), 1);
            let want = BigUint::from(a) * BigUint::from(b) % BigUint::from(n);
            assert_eq!(BigUint::from(back), want);
        }
    }

    #[test]
    fn rho_splits_large_semiprime() {
        let (p, q) = (1_000_000_007u128, 1_000_000_000_000_000_003u128);
        let d = pollard_brent_u128(p * q);
        assert!(d == p || d == q);
    }

    #[test]
    fn sieve_counts() {
        assert_eq!(sieve(100).len(), 25);
        assert_eq!(small_primes().len(), 78_498);
    }

    #[test]
    fn primality_known_values() {
        assert!(is_prime(&2u64));
        assert!(!is_prime(&1u64));
        assert!(!is_prime(&561u64));
        assert!(is_prime(&1_000_000_007u64));
        assert!(is_prime(&((1u128 << 89) - 1)));
        assert!(!is_prime(&((1u128 << 67) - 1)));
        let m127 = (BigUint::from(1u8) << 127usize) - BigUint::from(1u8);
        assert!(is_prime(&m127));
    }

    #[test]
    fn rho_splits_semiprime() {
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let f = factor_map(&(p * q));
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn mersenne_67() {
        let n = (1u128 << 67) - 1;
        let f = factor_map(&n);
        let got: Vec<_> = f.into_iter().collect();
        assert_eq!(got, vec![(193_707_721, 1), (761_838_257_287, 1)]);
    }
}
