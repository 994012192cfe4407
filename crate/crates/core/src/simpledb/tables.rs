use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_set};
use crate::Factorization;

use super::expr::{Env, Expr, PrimePowers};
use super::group_id::{is_prime_power, order_factored, LieFamily, SimpleGroupId, Sporadic};
use super::DbError;

/// Source text of the table transcriptions.
pub const TABLES_TOML: &str = include_str!("../../data/tables.toml");

#[derive(Clone, Debug, Deserialize)]
struct RawFile {
    version: u32,
    row: Vec<RawRow>,
    sporadic: Vec<RawSporadic>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawRow {
    table: u8,
    key: String,
    family: String,
    rank: String,
    q: String,
    params: Vec<String>,
    condition: String,
    condition_text: String,
    w: String,
    theta0: Vec<String>,
    theta0_text: String,
    #[serde(default)]
    lets: BTreeMap<String, String>,
    #[serde(default)]
    reconstructed: Option<String>,
    #[serde(default = "yes")]
    pi_equality: bool,
    variants: Vec<RawVariant>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
struct RawVariant {
    u: String,
    quotient: String,
    #[serde(default)]
    when: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawSporadic {
    name: String,
    rows: Vec<RawSporadicEntry>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawSporadicEntry {
    u: u64,
    pi_a_over_n: Vec<u64>,
    pi_c: Vec<u64>,
}

/// Kind of a free parameter in a table row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParamKind {
    /// Prime, bounded by `p_max`.
    Prime,
    /// Prime power, bounded by `q_max`.
    PrimePower,
    /// Positive integer, bounded by `n_max`.
    Integer,
}

#[derive(Clone, Debug)]
pub struct TorusVariant {
    pub u_formula: Expr,
    pub quotient_formula: Expr,
    pub when: Option<Expr>,
    pub u_text: String,
    pub quotient_text: String,
}

/// One row of Tables 1-3.
#[derive(Clone, Debug)]
pub struct LieTableRow {
    pub table: u8,
    pub index: usize,
    pub key: String,
    pub family: LieFamily,
    pub rank: Expr,
    pub q: Expr,
    pub params: Vec<(String, ParamKind)>,
    pub condition: Expr,
    pub condition_text: String,
    pub w_order: Expr,
    pub theta0_markers: Vec<Expr>,
    pub theta0_text: String,
    pub lets: Vec<(String, Expr)>,
    pub reconstructed: Option<String>,
    /// False for the row set aside before the pi(|S|/|U|) = pi(|W|) test.
    pub pi_equality_applies: bool,
    pub variants: Vec<TorusVariant>,
}

/// One Table 4 entry for a fixed torus order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SporadicTorus {
    pub u: u64,
    pub pi_a_over_n: BTreeSet<u64>,
    pub pi_c: BTreeSet<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SporadicRow {
    pub name: String,
    pub group: SimpleGroupId,
    pub entries: Vec<SporadicTorus>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamBounds {
    pub q_max: u64,
    pub p_max: u64,
    pub n_max: u64,
}

impl Default for ParamBounds {
    fn default() -> Self {
        Self { q_max: 32, p_max: 13, n_max: 13 }
    }
}

/// A row evaluated at one parameter tuple and one torus variant.
#[derive(Clone, Debug)]
pub struct LieInstance {
    pub table: u8,
    pub row_index: usize,
    pub row_key: String,
    pub variant: usize,
    pub params: Vec<(String, u64)>,
    pub group: SimpleGroupId,
    pub q: u64,
    pub order: Factorization,
    pub u: Factorization,
    pub w: Factorization,
    pub quotient_printed: PrimePowers,
    /// `|S| / (|U| |W|)` from the family order formula.
    pub quotient_exact: PrimePowers,
    pub theta0: BTreeSet<BigUint>,
    pub pi_equality_applies: bool,
    pub reconstructed: bool,
}

impl LieInstance {
    /// `u * w * printed quotient == |S|`.
    pub fn cross_check_holds(&self) -> bool {
        self.quotient_printed == self.quotient_exact
    }

    /// `|S| / (u * w * printed quotient)`.
    pub fn cross_check_ratio(&self) -> BigRational {
        self.quotient_exact.div(&self.quotient_printed).value()
    }

    pub fn label(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut s = format!("T{} {} [{}]", self.table, self.row_key, ps.join(","));
        s.push_str(&format!(" {} |U|={}", self.group, self.u.value()));
        s
    }
}

/// Parsed tables plus the file version.
#[derive(Clone, Debug)]
pub struct Tables {
    pub version: u32,
    pub rows: Vec<LieTableRow>,
    pub sporadic: Vec<SporadicRow>,
}

fn parse(src: &str) -> Result<Expr, DbError> {
    Expr::parse(src)
}

impl Tables {
    pub fn parse(text: &str) -> Result<Tables, DbError> {
        let raw: RawFile = toml::from_str(text).map_err(|e| DbError::Parse(e.to_string()))?;
        let mut rows = Vec::with_capacity(raw.row.len());
        for (index, r) in raw.row.into_iter().enumerate() {
            if !(1..=3).contains(&r.table) {
                return Err(DbError::Parse(format!("row {}: table must be 1, 2 or 3", r.key)));
            }
            let params = r
                .params
                .iter()
                .map(|p| {
                    let kind = match p.as_str() {
                        "p" => ParamKind::Prime,
                        "q" => ParamKind::PrimePower,
                        "n" => ParamKind::Integer,
                        other => return Err(DbError::Parse(format!("row {}: unknown parameter {other}", r.key))),
                    };
                    Ok((p.clone(), kind))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let variants = r
                .variants
                .iter()
                .map(|v| {
                    Ok(TorusVariant {
                        u_formula: parse(&v.u)?,
                        quotient_formula: parse(&v.quotient)?,
                        when: v.when.as_deref().map(parse).transpose()?,
                        u_text: v.u.clone(),
                        quotient_text: v.quotient.clone(),
                    })
                })
                .collect::<Result<Vec<_>, DbError>>()?;
            rows.push(LieTableRow {
                table: r.table,
                index,
                family: r.family.parse()?,
                rank: parse(&r.rank)?,
                q: parse(&r.q)?,
                params,
                condition: parse(&r.condition)?,
                condition_text: r.condition_text,
                w_order: parse(&r.w)?,
                theta0_markers: r.theta0.iter().map(|t| parse(t)).collect::<Result<_, _>>()?,
                theta0_text: r.theta0_text,
                lets: r
                    .lets
                    .iter()
                    .map(|(k, v)| Ok((k.clone(), parse(v)?)))
                    .collect::<Result<_, DbError>>()?,
                reconstructed: r.reconstructed,
                pi_equality_applies: r.pi_equality,
                variants,
                key: r.key,
            });
        }
        let sporadic = raw
            .sporadic
            .into_iter()
            .map(|s| {
                let group = if s.name == "2F4(2)'" {
                    SimpleGroupId::Tits
                } else {
                    SimpleGroupId::Sporadic(s.name.parse::<Sporadic>()?)
                };
                let entries = s
                    .rows
                    .into_iter()
                    .map(|e| SporadicTorus {
                        u: e.u,
                        pi_a_over_n: e.pi_a_over_n.into_iter().collect(),
                        pi_c: e.pi_c.into_iter().collect(),
                    })
                    .collect();
                Ok(SporadicRow { name: s.name, group, entries })
            })
            .collect::<Result<_, DbError>>()?;
        Ok(Tables { version: raw.version, rows, sporadic })
    }

    /// The embedded transcription.
    pub fn embedded() -> &'static Tables {
        static T: OnceLock<Tables> = OnceLock::new();
        T.get_or_init(|| Tables::parse(TABLES_TOML).expect("embedded tables parse"))
    }

    pub fn rows_of(&self, table: u8) -> impl Iterator<Item = &LieTableRow> {
        self.rows.iter().filter(move |r| r.table == table)
    }
}

fn rat(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn to_u64(v: &BigRational, what: &str) -> Result<u64, DbError> {
    if !v.is_integer() {
        return Err(DbError::Eval(format!("{what} = {v} is not an integer")));
    }
    v.to_integer().to_u64().ok_or_else(|| DbError::Eval(format!("{what} = {v} out of range")))
}

fn domain(kind: ParamKind, b: &ParamBounds) -> Vec<u64> {
    match kind {
        ParamKind::Prime => (2..=b.p_max).filter(|p| is_prime(p)).collect(),
        ParamKind::PrimePower => (2..=b.q_max).filter(|q| is_prime_power(*q)).collect(),
        ParamKind::Integer => (1..=b.n_max).collect(),
    }
}

fn factored_natural(e: &Expr, env: &Env, what: &str) -> Result<Factorization, DbError> {
    let pp = e.eval_factored(env)?;
    if !pp.is_integral() {
        return Err(DbError::Eval(format!("{what} = {} is not an integer", pp.value())));
    }
    let map = pp.exponents().iter().map(|(p, k)| (p.clone(), *k as u32)).collect();
    Factorization::from_factors(map).map_err(|e| DbError::Eval(e.to_string()))
}

impl LieTableRow {
    /// All parameter tuples in the grid, ascending, before the condition is applied.
    fn grid(&self, bounds: &ParamBounds) -> Vec<Vec<u64>> {
        let mut tuples: Vec<Vec<u64>> = vec![Vec::new()];
        for (_, kind) in &self.params {
            let dom = domain(*kind, bounds);
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    dom.iter().map(move |v| {
                        let mut t = t.clone();
                        t.push(*v);
                        t
                    })
                })
                .collect();
        }
        tuples
    }

    fn env_for(&self, values: &[u64]) -> Result<Env, DbError> {
        let mut env = Env::new();
        for ((name, _), v) in self.params.iter().zip(values) {
            env.insert(name.clone(), rat(*v));
        }
        for (name, e) in &self.lets {
            let v = e.eval_num(&env)?;
            env.insert(name.clone(), v);
        }
        Ok(env)
    }

    /// Evaluates every admissible (parameter tuple, torus variant) in the grid.
    pub fn instantiate(&self, bounds: &ParamBounds) -> Result<Vec<LieInstance>, DbError> {
        let mut out = Vec::new();
        for values in self.grid(bounds) {
            let base: Env = self
                .params
                .iter()
                .zip(&values)
                .map(|((n, _), v)| (n.clone(), rat(*v)))
                .collect();
            let q = to_u64(&self.q.eval_num(&base)?, "q")?;
            if q > bounds.q_max || !self.condition.eval_bool(&base)? {
                continue;
            }
            let env = self.env_for(&values)?;
            let rank = to_u64(&self.rank.eval_num(&env)?, "rank")? as u32;
            let group = SimpleGroupId::Lie { family: self.family, rank, q: BigUint::from(q) };
            let order = order_factored(&group)?;
            let w = factored_natural(&self.w_order, &env, "|W|")?;
            let mut theta0 = BTreeSet::new();
            for m in &self.theta0_markers {
                let v = to_u64(&m.eval_num(&env)?, "theta0 marker")?;
                theta0.extend(prime_set(&v).map_err(|e| DbError::Eval(e.to_string()))?.into_iter().map(BigUint::from));
            }
            for (vi, var) in self.variants.iter().enumerate() {
                if let Some(w) = &var.when {
                    if !w.eval_bool(&env)? {
                        continue;
                    }
                }
                let u = factored_natural(&var.u_formula, &env, "|U|")?;
                let quotient_printed = var.quotient_formula.eval_factored(&env)?;
                let quotient_exact = PrimePowers::from_factored(&order)
                    .div(&PrimePowers::from_factored(&u))
                    .div(&PrimePowers::from_factored(&w));
                out.push(LieInstance {
                    table: self.table,
                    row_index: self.index,
                    row_key: self.key.clone(),
                    variant: vi,
                    params: self.params.iter().map(|(n, _)| n.clone()).zip(values.iter().copied()).collect(),
                    group: group.clone(),
                    q,
                    order: order.clone(),
                    u,
                    w: w.clone(),
                    quotient_printed,
                    quotient_exact,
                    theta0: theta0.clone(),
                    pi_equality_applies: self.pi_equality_applies,
                    reconstructed: self.reconstructed.is_some(),
                });
            }
        }
        Ok(out)
    }
}

/// Instances of one table (1, 2 or 3) within `bounds`, in row order then
/// ascending parameter order.
pub fn instantiate_rows(table: u8, bounds: &ParamBounds) -> Result<Vec<LieInstance>, DbError> {
    let mut out = Vec::new();
    for row in Tables::embedded().rows_of(table) {
        out.extend(row.instantiate(bounds)?);
    }
    Ok(out)
}

/// Table 4, transcribed literally.
pub fn sporadic_rows() -> &'static [SporadicRow] {
    &Tables::embedded().sporadic
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(v: &'a [LieInstance], key: &str, params: &[(&str, u64)]) -> Vec<&'a LieInstance> {
        v.iter()
            .filter(|i| {
                i.row_key == key
                    && params.iter().all(|(k, x)| i.params.iter().any(|(n, y)| n == k && y == x))
            })
            .collect()
    }

    #[test]
    fn embedded_parses() {
        let t = Tables::embedded();
        assert_eq!(t.version, 1);
        assert_eq!(t.rows_of(1).count(), 20);
        assert_eq!(t.rows_of(2).count(), 12);
        assert_eq!(t.rows_of(3).count(), 4);
        assert_eq!(t.sporadic.len(), 27);
    }

    #[test]
    fn l3_3_row() {
        let t1 = instantiate_rows(1, &ParamBounds::default()).unwrap();
        let hit = find(&t1, "A_{p-1}(q)", &[("p", 3), ("q", 3)]);
        assert_eq!(hit.len(), 1);
        let i = hit[0];
        assert_eq!(*i.u.value(), BigUint::from(13u8));
        assert_eq!(*i.w.value(), BigUint::from(6u8));
        assert_eq!(i.quotient_printed.natural(), Some(BigUint::from(72u8)));
        assert_eq!(*i.order.value(), BigUint::from(5616u32));
        assert!(i.cross_check_holds());
        let s_over_u = PrimePowers::from_factored(&i.order).div(&PrimePowers::from_factored(&i.u));
        assert_eq!(s_over_u.natural(), Some(BigUint::from(432u32)));
    }

    #[test]
    fn suzuki_and_a1_examples() {
        let t2 = instantiate_rows(2, &ParamBounds::default()).unwrap();
        let us: Vec<u64> = find(&t2, "A_1(q), q even", &[("q", 8)])
            .iter()
            .map(|i| i.u.value().to_u64().unwrap())
            .collect();
        assert_eq!(us, vec![9, 7]);
        let t3 = instantiate_rows(3, &ParamBounds::default()).unwrap();
        let us: Vec<u64> = find(&t3, "2B_2(q)", &[("q", 8)])
            .iter()
            .map(|i| i.u.value().to_u64().unwrap())
            .collect();
        assert_eq!(us, vec![7, 13, 5]);
        assert!(find(&t3, "2B_2(q)", &[("q", 8)]).iter().all(|i| i.cross_check_holds()));
    }

    #[test]
    fn empty_grid_has_no_instances() {
        let b = ParamBounds { q_max: 1, p_max: 13, n_max: 13 };
        for t in 1..=3 {
            assert!(instantiate_rows(t, &b).unwrap().is_empty());
        }
    }

    #[test]
    fn sporadic_examples() {
        let rows = sporadic_rows();
        let m11 = rows.iter().find(|r| r.name == "M11").unwrap();
        assert_eq!(m11.entries[0].u, 5);
        assert_eq!(m11.entries[0].pi_a_over_n, BTreeSet::from([2, 3, 11]));
        assert_eq!(m11.entries[0].pi_c, BTreeSet::from([2]));
        let tits = rows.last().unwrap();
        assert_eq!(tits.group, SimpleGroupId::Tits);
        assert_eq!(tits.entries[0].pi_a_over_n, BTreeSet::from([2, 3, 5]));
    }
}
