use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::{factor_pow_minus_one, factor_pow_plus_one, factorize};
use crate::Factorization;

use super::expr::{prime_power_parts, PrimePowers};
use super::DbError;

/// Lie-type family labels as printed in the tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LieFamily {
    A,
    #[serde(rename = "2A")]
    A2,
    B,
    C,
    D,
    #[serde(rename = "2D")]
    D2,
    G2,
    #[serde(rename = "2G2")]
    G2Ree,
    #[serde(rename = "3D4")]
    D4Triality,
    F4,
    #[serde(rename = "2F4")]
    F4Ree,
    E6,
    #[serde(rename = "2E6")]
    E6Twisted,
    E7,
    E8,
    #[serde(rename = "2B2")]
    B2Suzuki,
}

impl LieFamily {
    pub fn code(self) -> &'static str {
        match self {
            LieFamily::A => "A",
            LieFamily::A2 => "2A",
            LieFamily::B => "B",
            LieFamily::C => "C",
            LieFamily::D => "D",
            LieFamily::D2 => "2D",
            LieFamily::G2 => "G2",
            LieFamily::G2Ree => "2G2",
            LieFamily::D4Triality => "3D4",
            LieFamily::F4 => "F4",
            LieFamily::F4Ree => "2F4",
            LieFamily::E6 => "E6",
            LieFamily::E6Twisted => "2E6",
            LieFamily::E7 => "E7",
            LieFamily::E8 => "E8",
            LieFamily::B2Suzuki => "2B2",
        }
    }

    /// Families whose rank is fixed by the type.
    pub fn fixed_rank(self) -> Option<u32> {
        match self {
            LieFamily::G2 | LieFamily::G2Ree | LieFamily::B2Suzuki => Some(2),
            LieFamily::D4Triality | LieFamily::F4 | LieFamily::F4Ree => Some(4),
            LieFamily::E6 | LieFamily::E6Twisted => Some(6),
            LieFamily::E7 => Some(7),
            LieFamily::E8 => Some(8),
            _ => None,
        }
    }
}

impl FromStr for LieFamily {
    type Err = DbError;

    fn from_str(s: &str) -> Result<Self, DbError> {
        Ok(match s {
            "A" => LieFamily::A,
            "2A" => LieFamily::A2,
            "B" => LieFamily::B,
            "C" => LieFamily::C,
            "D" => LieFamily::D,
            "2D" => LieFamily::D2,
            "G2" => LieFamily::G2,
            "2G2" => LieFamily::G2Ree,
            "3D4" => LieFamily::D4Triality,
            "F4" => LieFamily::F4,
            "2F4" => LieFamily::F4Ree,
            "E6" => LieFamily::E6,
            "2E6" => LieFamily::E6Twisted,
            "E7" => LieFamily::E7,
            "E8" => LieFamily::E8,
            "2B2" => LieFamily::B2Suzuki,
            _ => return Err(DbError::InvalidGroup(format!("unknown Lie family {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sporadic {
    M11,
    M12,
    M22,
    M23,
    M24,
    J1,
    J2,
    J3,
    J4,
    HS,
    McL,
    Suz,
    He,
    Ru,
    ON,
    Co1,
    Co2,
    Co3,
    Fi22,
    Fi23,
    Fi24,
    HN,
    Ly,
    Th,
    B,
    M,
}

/// Prime factorizations of the sporadic group orders.
const SPORADIC_ORDERS: [(Sporadic, &str, &[(u32, u32)]); 26] = [
    (Sporadic::M11, "M11", &[(2, 4), (3, 2), (5, 1), (11, 1)]),
    (Sporadic::M12, "M12", &[(2, 6), (3, 3), (5, 1), (11, 1)]),
    (Sporadic::M22, "M22", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)]),
    (Sporadic::M23, "M23", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)]),
    (Sporadic::M24, "M24", &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)]),
    (Sporadic::J1, "J1", &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)]),
    (Sporadic::J2, "J2", &[(2, 7), (3, 3), (5, 2), (7, 1)]),
    (Sporadic::J3, "J3", &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)]),
    (
        Sporadic::J4,
        "J4",
        &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)],
    ),
    (Sporadic::HS, "HS", &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)]),
    (Sporadic::McL, "McL", &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)]),
    (Sporadic::Suz, "Suz", &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)]),
    (Sporadic::He, "He", &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)]),
    (Sporadic::Ru, "Ru", &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)]),
    (Sporadic::ON, "ON", &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)]),
    (Sporadic::Co1, "Co1", &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)]),
    (Sporadic::Co2, "Co2", &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)]),
    (Sporadic::Co3, "Co3", &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)]),
    (Sporadic::Fi22, "Fi22", &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)]),
    (
        Sporadic::Fi23,
        "Fi23",
        &[(2, 18), (3, 13), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)],
    ),
    (
        Sporadic::Fi24,
        "Fi24'",
        &[(2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (17, 1), (23, 1), (29, 1)],
    ),
    (Sporadic::HN, "HN", &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)]),
    (Sporadic::Ly, "Ly", &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)]),
    (Sporadic::Th, "Th", &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)]),
    (
        Sporadic::B,
        "B",
        &[
            (2, 41),
            (3, 13),
            (5, 6),
            (7, 2),
            (11, 1),
            (13, 1),
            (17, 1),
            (19, 1),
            (23, 1),
            (31, 1),
            (47, 1),
        ],
    ),
    (
        Sporadic::M,
        "M",
        &[
            (2, 46),
            (3, 20),
            (5, 9),
            (7, 6),
            (11, 2),
            (13, 3),
            (17, 1),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
            (41, 1),
            (47, 1),
            (59, 1),
            (71, 1),
        ],
    ),
];

const TITS_ORDER: &[(u32, u32)] = &[(2, 11), (3, 3), (5, 2), (13, 1)];

impl Sporadic {
    pub fn all() -> impl Iterator<Item = Sporadic> {
        SPORADIC_ORDERS.iter().map(|(s, _, _)| *s)
    }

    pub fn name(self) -> &'static str {
        SPORADIC_ORDERS.iter().find(|(s, _, _)| *s == self).map(|(_, n, _)| *n).expect("listed")
    }

    fn order_table(self) -> &'static [(u32, u32)] {
        SPORADIC_ORDERS.iter().find(|(s, _, _)| *s == self).map(|(_, _, f)| *f).expect("listed")
    }
}

impl FromStr for Sporadic {
    type Err = DbError;

    fn from_str(s: &str) -> Result<Self, DbError> {
        SPORADIC_ORDERS
            .iter()
            .find(|(_, n, _)| *n == s)
            .map(|(g, _, _)| *g)
            .ok_or_else(|| DbError::InvalidGroup(format!("unknown sporadic group {s:?}")))
    }
}

/// A finite simple group named by family and parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SimpleGroupId {
    Alternating(u32),
    Lie { family: LieFamily, rank: u32, q: BigUint },
    Sporadic(Sporadic),
    /// The derived subgroup of 2F4(2).
    Tits,
}

impl SimpleGroupId {
    pub fn lie(family: LieFamily, rank: u32, q: u64) -> Self {
        SimpleGroupId::Lie { family, rank, q: BigUint::from(q) }
    }

    /// Parses names such as `Alt(5)`, `A2(3)`, `2A3(2)`, `E8(2)`, `M11`, `Tits`.
    pub fn parse(s: &str) -> Result<Self, DbError> {
        let s = s.trim();
        if s == "Tits" || s == "2F4(2)'" {
            return Ok(SimpleGroupId::Tits);
        }
        if let Ok(sp) = s.parse::<Sporadic>() {
            return Ok(SimpleGroupId::Sporadic(sp));
        }
        let bad = || DbError::InvalidGroup(format!("cannot parse group name {s:?}"));
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let head = &s[..open];
        let arg: u64 = s[open + 1..s.len() - 1].trim().parse().map_err(|_| bad())?;
        if head == "Alt" {
            return Ok(SimpleGroupId::Alternating(arg as u32));
        }
        for code in ["3D4", "2G2", "2F4", "2E6", "2B2", "G2", "F4", "E6", "E7", "E8"] {
            if head == code {
                let family: LieFamily = code.parse()?;
                let rank = family.fixed_rank().expect("fixed rank");
                return Ok(SimpleGroupId::lie(family, rank, arg));
            }
        }
        for code in ["2A", "2D", "A", "B", "C", "D"] {
            if let Some(rank) = head.strip_prefix(code) {
                let rank: u32 = rank.parse().map_err(|_| bad())?;
                return Ok(SimpleGroupId::lie(code.parse()?, rank, arg));
            }
        }
        Err(bad())
    }
}

impl fmt::Display for SimpleGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleGroupId::Alternating(n) => write!(f, "Alt({n})"),
            SimpleGroupId::Lie { family, rank, q } => {
                if family.fixed_rank().is_some() {
                    write!(f, "{}({q})", family.code())
                } else {
                    write!(f, "{}{rank}({q})", family.code())
                }
            }
            SimpleGroupId::Sporadic(s) => write!(f, "{}", s.name()),
            SimpleGroupId::Tits => write!(f, "2F4(2)'"),
        }
    }
}

fn invalid(id: &SimpleGroupId, why: &str) -> DbError {
    DbError::InvalidGroup(format!("{id}: {why}"))
}

fn literal(pairs: &[(u32, u32)]) -> Factorization {
    Factorization::from_factors(pairs.iter().map(|(p, e)| (BigUint::from(*p), *e)).collect())
        .expect("listed primes")
}

/// Exact order of a finite simple group.
pub fn order_of(id: &SimpleGroupId) -> Result<BigUint, DbError> {
    Ok(order_factored(id)?.value().clone())
}

/// Exact order of a finite simple group with its factorization.
pub fn order_factored(id: &SimpleGroupId) -> Result<Factorization, DbError> {
    match id {
        SimpleGroupId::Alternating(n) => {
            if *n < 5 {
                return Err(invalid(id, "alternating groups are simple only for n >= 5"));
            }
            let mut acc = PrimePowers::one();
            for i in 3..=*n {
                acc = acc.mul(&PrimePowers::from_natural(&BigUint::from(i))?);
            }
            to_factorization(&acc)
        }
        SimpleGroupId::Sporadic(s) => Ok(literal(s.order_table())),
        SimpleGroupId::Tits => Ok(literal(TITS_ORDER)),
        SimpleGroupId::Lie { family, rank, q } => lie_order(id, *family, *rank, q),
    }
}

fn to_factorization(p: &PrimePowers) -> Result<Factorization, DbError> {
    if !p.is_integral() {
        return Err(DbError::Eval(format!("{p} is not an integer")));
    }
    let map = p.exponents().iter().map(|(k, e)| (k.clone(), *e as u32)).collect();
    Factorization::from_factors(map).map_err(|e| DbError::Eval(e.to_string()))
}

fn lie_order(id: &SimpleGroupId, family: LieFamily, n: u32, q: &BigUint) -> Result<Factorization, DbError> {
    use LieFamily::*;
    let (p, f) = prime_power_parts(q).ok_or_else(|| invalid(id, "q is not a prime power"))?;
    if let Some(r) = family.fixed_rank() {
        if r != n {
            return Err(invalid(id, "rank does not match the family"));
        }
    }
    let min_rank = match family {
        A => 1,
        A2 => 2,
        B => 2,
        C => 3,
        D | D2 => 4,
        _ => n,
    };
    if n < min_rank {
        return Err(invalid(id, "rank below the family's range"));
    }
    let two = BigUint::from(2u8);
    let three = BigUint::from(3u8);
    let odd_power = |c: &BigUint| p == *c && f % 2 == 1;
    let not_simple = match family {
        A => n == 1 && (q == &two || q == &three),
        A2 => n == 2 && q == &two,
        B => n == 2 && q == &two,
        G2 => q == &two,
        B2Suzuki => !odd_power(&two) || q == &two,
        G2Ree => !odd_power(&three) || q == &three,
        F4Ree => !odd_power(&two) || q == &two,
        _ => false,
    };
    if not_simple {
        return Err(invalid(id, "parameters do not give a simple group"));
    }

    let mut acc = PrimePowers::one();
    let qpow = |e: u64| PrimePowers::from_factored(&literal_pow(&p, f as u64 * e));
    let minus = |k: u32| -> Result<PrimePowers, DbError> {
        Ok(PrimePowers::from_factored(&factor_pow_minus_one(q, k).map_err(|e| DbError::Eval(e.to_string()))?))
    };
    let plus = |k: u32| -> Result<PrimePowers, DbError> {
        Ok(PrimePowers::from_factored(&factor_pow_plus_one(q, k).map_err(|e| DbError::Eval(e.to_string()))?))
    };
    let small_gcd = |a: u64, b: &BigUint| -> Result<PrimePowers, DbError> {
        let g = BigUint::from(a).gcd(b);
        PrimePowers::from_natural(&g)
    };
    let n64 = n as u64;
    match family {
        A => {
            acc = acc.mul(&qpow(n64 * (n64 + 1) / 2));
            for i in 2..=n + 1 {
                acc = acc.mul(&minus(i)?);
            }
            acc = acc.div(&small_gcd(n64 + 1, &(q - 1u8))?);
        }
        A2 => {
            acc = acc.mul(&qpow(n64 * (n64 + 1) / 2));
            for i in 2..=n + 1 {
                acc = acc.mul(&if i % 2 == 0 { minus(i)? } else { plus(i)? });
            }
            acc = acc.div(&small_gcd(n64 + 1, &(q + 1u8))?);
        }
        B | C => {
            acc = acc.mul(&qpow(n64 * n64));
            for i in 1..=n {
                acc = acc.mul(&minus(2 * i)?);
            }
            acc = acc.div(&small_gcd(2, &(q - 1u8))?);
        }
        D | D2 => {
            acc = acc.mul(&qpow(n64 * (n64 - 1)));
            let qn = num_traits::Pow::pow(q, n);
            if family == D {
                acc = acc.mul(&minus(n)?);
                acc = acc.div(&small_gcd(4, &(qn - 1u8))?);
            } else {
                acc = acc.mul(&plus(n)?);
                acc = acc.div(&small_gcd(4, &(qn + 1u8))?);
            }
            for i in 1..n {
                acc = acc.mul(&minus(2 * i)?);
            }
        }
        G2 => {
            acc = acc.mul(&qpow(6)).mul(&minus(6)?).mul(&minus(2)?);
        }
        G2Ree => {
            acc = acc.mul(&qpow(3)).mul(&plus(3)?).mul(&minus(1)?);
        }
        D4Triality => {
            let q8q4 = num_traits::Pow::pow(q, 8u32) + num_traits::Pow::pow(q, 4u32) + 1u8;
            acc = acc
                .mul(&qpow(12))
                .mul(&PrimePowers::from_natural(&q8q4)?)
                .mul(&minus(6)?)
                .mul(&minus(2)?);
        }
        F4 => {
            acc = acc.mul(&qpow(24));
            for i in [12, 8, 6, 2] {
                acc = acc.mul(&minus(i)?);
            }
        }
        F4Ree => {
            acc = acc.mul(&qpow(12)).mul(&plus(6)?).mul(&minus(4)?).mul(&plus(3)?).mul(&minus(1)?);
        }
        E6 => {
            acc = acc.mul(&qpow(36));
            for i in [12, 9, 8, 6, 5, 2] {
                acc = acc.mul(&minus(i)?);
            }
            acc = acc.div(&small_gcd(3, &(q - 1u8))?);
        }
        E6Twisted => {
            acc = acc.mul(&qpow(36));
            for i in [12, 8, 6, 2] {
                acc = acc.mul(&minus(i)?);
            }
            acc = acc.mul(&plus(9)?).mul(&plus(5)?);
            acc = acc.div(&small_gcd(3, &(q + 1u8))?);
        }
        E7 => {
            acc = acc.mul(&qpow(63));
            for i in [18, 14, 12, 10, 8, 6, 2] {
                acc = acc.mul(&minus(i)?);
            }
            acc = acc.div(&small_gcd(2, &(q - 1u8))?);
        }
        E8 => {
            acc = acc.mul(&qpow(120));
            for i in [30, 24, 20, 18, 14, 12, 8, 2] {
                acc = acc.mul(&minus(i)?);
            }
        }
        B2Suzuki => {
            acc = acc.mul(&qpow(2)).mul(&plus(2)?).mul(&minus(1)?);
        }
    }
    to_factorization(&acc)
}

fn literal_pow(p: &BigUint, e: u64) -> Factorization {
    if e == 0 {
        return Factorization::one();
    }
    let mut m = std::collections::BTreeMap::new();
    m.insert(p.clone(), e as u32);
    Factorization::from_factors(m).expect("prime")
}

/// Whether `q` is a prime power (q >= 2).
pub fn is_prime_power(q: u64) -> bool {
    q >= 2 && factorize(&q).map(|f| f.factors().len() == 1).unwrap_or(false)
}
