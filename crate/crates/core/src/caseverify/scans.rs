use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::arith::{factor_pow_minus_one, is_prime, prime_set, Natural};

use super::{CheckResult, Quantity, Section, Verdict};

const L2R: &str = "pi(r+1) <= pi((r-1)/2) with gcd((r+1)/2, (r-1)/2) = 1";
const FACTORIAL: &str = "pi((p-1)!) = pi(p-1)";
const THREE_COMPONENTS: &str = "pi(p!/(2(p-2)(p-3))) <= pi(p-3)";
const THREE_POWER: &str = "3^r - 1 = 2^e";
const TWO_POWER: &str = "2^r - 1 = r^e";

fn odd_primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(3)..=hi).filter(|n| n % 2 == 1 && is_prime(n))
}

fn pi_u64(n: u64) -> BTreeSet<u64> {
    prime_set(&n).expect("positive")
}

fn pi_big(n: &BigUint) -> BTreeSet<BigUint> {
    prime_set(n).expect("positive")
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn l2r_check(r: u64) -> CheckResult {
    let lhs = pi_u64(r + 1);
    let rhs = pi_u64((r - 1) / 2);
    let coprime = ((r + 1) / 2).gcd(&((r - 1) / 2)) == 1;
    let holds = lhs.is_subset(&rhs);
    let verdict = if holds || !coprime { Verdict::Contradiction } else { Verdict::FailsAsClaimed };
    CheckResult::new(
        format!("l2r:r={r}"),
        Section::Scans,
        L2R,
        format!("L2({r})"),
        Quantity::set(&lhs),
        Quantity::set(&rhs),
        verdict,
    )
}

/// `L2(r)`: for odd primes `5 <= r <= r_max` the containment fails and the
/// two halves are coprime. `r = 3` is recorded separately as the boundary.
pub fn scan_l2r(r_max: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut boundary = l2r_check(3);
    boundary.check_id = "l2r_boundary:r=3".into();
    out.push(boundary.with_note("boundary value; L2(3) is not simple"));
    out.extend(odd_primes(5, r_max).map(l2r_check));
    out
}

/// Alternating groups: `pi((p-1)!) != pi(p-1)` for primes `5 <= p <= p_max`,
/// and for `p - 2` also prime the three-component containment fails.
pub fn scan_alternating(p_max: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for p in odd_primes(5, p_max) {
        let lhs = pi_big(&factorial(p - 1));
        let rhs = pi_big(&BigUint::from(p - 1));
        out.push(CheckResult::new(
            format!("alternating_factorial:p={p}"),
            Section::Scans,
            FACTORIAL,
            format!("Alt(n), n in {{{p},{},{}}}", p + 1, p + 2),
            Quantity::set(&lhs),
            Quantity::set(&rhs),
            if lhs == rhs { Verdict::Contradiction } else { Verdict::FailsAsClaimed },
        ));
        if !is_prime(&(p - 2)) {
            continue;
        }
        let (q, rem) = factorial(p).div_rem(&BigUint::from(2 * (p - 2) * (p - 3)));
        assert!(rem == BigUint::ZERO, "p!/(2(p-2)(p-3)) is integral for p >= 5");
        let lhs = pi_big(&q);
        let rhs = pi_u64(p - 3);
        let holds = lhs.iter().all(|x| rhs.contains(&u64::try_from(x).expect("small prime")));
        out.push(CheckResult::new(
            format!("alternating_three_components:p={p}"),
            Section::Scans,
            THREE_COMPONENTS,
            format!("Alt({p}), |U| = {}", p - 2),
            Quantity::set(&lhs),
            Quantity::set(&rhs),
            if holds { Verdict::Contradiction } else { Verdict::FailsAsClaimed },
        ));
    }
    out
}

fn is_power_of(n: &BigUint, base: &BigUint) -> bool {
    let mut m = n.clone();
    while m > BigUint::one() {
        let (q, r) = m.div_rem(base);
        if r != BigUint::ZERO {
            return false;
        }
        m = q;
    }
    true
}

/// `3^r - 1` is never a power of 2 and `2^r - 1` never a power of `r`, for
/// odd primes `r <= r_max`. The second is decided by factoring and, as an
/// independent route, by `2^r mod r`. `r = 2` is recorded as the boundary.
pub fn scan_power_equations(r_max: u64) -> Vec<CheckResult> {
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    let mut out = Vec::new();

    let eight = Pow::pow(&three, 2u32) - 1u32;
    out.push(
        CheckResult::new(
            "power_three_boundary:r=2",
            Section::Scans,
            THREE_POWER,
            "r = 2",
            Quantity::nat(eight.clone()),
            Quantity::set(&pi_big(&eight)),
            if is_power_of(&eight, &two) { Verdict::ExceptionConfirmed } else { Verdict::Contradiction },
        )
        .with_note("boundary value; 3^2 - 1 = 2^3 and r = 2 is not odd"),
    );

    for r in odd_primes(3, r_max) {
        let rr = u32::try_from(r).expect("small exponent");
        let a = factor_pow_minus_one(&three, rr).expect("3 >= 2");
        let a_pi = a.primes();
        let a_power = a_pi.len() == 1 && a_pi.contains(&two);
        out.push(CheckResult::new(
            format!("power_three:r={r}"),
            Section::Scans,
            THREE_POWER,
            format!("r = {r}"),
            Quantity::nat(a.value().clone()),
            Quantity::set(&a_pi),
            if a_power { Verdict::Contradiction } else { Verdict::FailsAsClaimed },
        ));

        let b = factor_pow_minus_one(&two, rr).expect("2 >= 2");
        let b_pi = b.primes();
        let rb = BigUint::from(r);
        let by_factoring = b_pi.len() == 1 && b_pi.contains(&rb);
        let residue = two.pow_mod(&rb, &rb);
        let by_residue = residue != two;
        let verdict = match (by_factoring, by_residue) {
            (false, false) => Verdict::FailsAsClaimed,
            (true, true) => Verdict::Contradiction,
            _ => Verdict::Discrepancy,
        };
        out.push(
            CheckResult::new(
                format!("power_two:r={r}"),
                Section::Scans,
                TWO_POWER,
                format!("r = {r}"),
                Quantity::nat(b.value().clone()),
                Quantity::set(&b_pi),
                verdict,
            )
            .with_note(format!("2^r mod r = {residue}")),
        );
    }
    out
}
