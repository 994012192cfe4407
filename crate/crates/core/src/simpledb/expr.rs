//! Arithmetic expressions over table parameters, evaluated exactly either as
//! rationals or directly in factored form.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::{factor_pow_minus_one, factor_pow_plus_one, factorize, is_prime};

use super::DbError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Pow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Not(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(BigRational),
    Bool(bool),
}

pub type Env = HashMap<String, BigRational>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(&'static str),
    LParen,
    RParen,
    Comma,
}

const OPS: [&str; 15] =
    ["&&", "||", "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/", "%", "^", "!"];

fn lex(src: &str) -> Result<Vec<Tok>, DbError> {
    let bytes = src.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    'outer: while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(src[start..i].parse().expect("digits")));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(src[start..i].to_string()));
            continue;
        }
        match c {
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            ',' => out.push(Tok::Comma),
            _ => {
                for op in OPS {
                    if src[i..].starts_with(op) {
                        out.push(Tok::Op(op));
                        i += op.len();
                        continue 'outer;
                    }
                }
                return Err(DbError::Parse(format!("unexpected character {c:?} in {src:?}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> DbError {
        DbError::Parse(format!("{msg} at token {} in {:?}", self.pos, self.src))
    }

    fn eat_op(&mut self, ops: &[&str]) -> Option<&'static str> {
        if let Some(Tok::Op(op)) = self.peek() {
            if ops.contains(op) {
                let op = *op;
                self.pos += 1;
                return Some(op);
            }
        }
        None
    }

    fn expect(&mut self, t: Tok) -> Result<(), DbError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {t:?}")))
        }
    }

    fn or(&mut self) -> Result<Expr, DbError> {
        let mut lhs = self.and()?;
        while self.eat_op(&["||"]).is_some() {
            lhs = Expr::Bin(BinOp::Or, Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, DbError> {
        let mut lhs = self.cmp()?;
        while self.eat_op(&["&&"]).is_some() {
            lhs = Expr::Bin(BinOp::And, Box::new(lhs), Box::new(self.cmp()?));
        }
        Ok(lhs)
    }

    fn cmp(&mut self) -> Result<Expr, DbError> {
        let lhs = self.add()?;
        if let Some(op) = self.eat_op(&["==", "!=", "<=", ">=", "<", ">"]) {
            let op = match op {
                "==" => BinOp::Eq,
                "!=" => BinOp::Ne,
                "<=" => BinOp::Le,
                ">=" => BinOp::Ge,
                "<" => BinOp::Lt,
                _ => BinOp::Gt,
            };
            return Ok(Expr::Bin(op, Box::new(lhs), Box::new(self.add()?)));
        }
        Ok(lhs)
    }

    fn add(&mut self) -> Result<Expr, DbError> {
        let mut lhs = self.mul()?;
        while let Some(op) = self.eat_op(&["+", "-"]) {
            let op = if op == "+" { BinOp::Add } else { BinOp::Sub };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.mul()?));
        }
        Ok(lhs)
    }

    fn mul(&mut self) -> Result<Expr, DbError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.eat_op(&["*", "/", "%"]) {
            let op = match op {
                "*" => BinOp::Mul,
                "/" => BinOp::Div,
                _ => BinOp::Rem,
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, DbError> {
        if self.eat_op(&["-"]).is_some() {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op(&["!"]).is_some() {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DbError> {
        let base = self.primary()?;
        if self.eat_op(&["^"]).is_some() {
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, DbError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let mut args = Vec::new();
                    if self.peek() != Some(&Tok::RParen) {
                        loop {
                            args.push(self.or()?);
                            if self.peek() == Some(&Tok::Comma) {
                                self.pos += 1;
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.or()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.err("expected a number, name or '('")),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, DbError> {
        let toks = lex(src)?;
        let mut p = Parser { toks, pos: 0, src };
        let e = p.or()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, env: &Env) -> Result<Value, DbError> {
        eval(self, env)
    }

    pub fn eval_num(&self, env: &Env) -> Result<BigRational, DbError> {
        match eval(self, env)? {
            Value::Num(v) => Ok(v),
            Value::Bool(_) => Err(DbError::Eval(format!("{self} is boolean, expected a number"))),
        }
    }

    pub fn eval_bool(&self, env: &Env) -> Result<bool, DbError> {
        match eval(self, env)? {
            Value::Bool(b) => Ok(b),
            Value::Num(_) => Err(DbError::Eval(format!("{self} is numeric, expected a predicate"))),
        }
    }

    /// Evaluates to an exact positive rational in factored form.
    pub fn eval_factored(&self, env: &Env) -> Result<PrimePowers, DbError> {
        factored(self, env)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Not(e) => write!(f, "!({e})"),
            Expr::Bin(op, a, b) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Rem => "%",
                    BinOp::Pow => "^",
                    BinOp::Eq => "==",
                    BinOp::Ne => "!=",
                    BinOp::Lt => "<",
                    BinOp::Le => "<=",
                    BinOp::Gt => ">",
                    BinOp::Ge => ">=",
                    BinOp::And => "&&",
                    BinOp::Or => "||",
                };
                write!(f, "({a} {s} {b})")
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn int(v: &BigRational, ctx: &str) -> Result<BigInt, DbError> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(DbError::Eval(format!("{ctx}: {v} is not an integer")))
    }
}

fn small(v: &BigRational, ctx: &str) -> Result<i64, DbError> {
    int(v, ctx)?
        .to_i64()
        .filter(|x| x.abs() <= 1_000_000)
        .ok_or_else(|| DbError::Eval(format!("{ctx}: {v} is out of range")))
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn nat(v: &BigRational, ctx: &str) -> Result<BigUint, DbError> {
    let i = int(v, ctx)?;
    i.to_biguint().ok_or_else(|| DbError::Eval(format!("{ctx}: {v} is negative")))
}

/// `(p, k)` with `q = p^k`, or an error when `q` is not a prime power.
pub fn prime_power_parts(q: &BigUint) -> Option<(BigUint, u32)> {
    if q < &BigUint::from(2u8) {
        return None;
    }
    let f = factorize(q).ok()?;
    if f.factors().len() != 1 {
        return None;
    }
    f.factors().iter().next().map(|(p, e)| (p.clone(), *e))
}

fn eval(e: &Expr, env: &Env) -> Result<Value, DbError> {
    use Value::*;
    Ok(match e {
        Expr::Num(n) => Num(rat(n.clone())),
        Expr::Var(v) => Num(env
            .get(v)
            .cloned()
            .ok_or_else(|| DbError::Eval(format!("unbound name {v}")))?),
        Expr::Neg(a) => Num(-a.eval_num(env)?),
        Expr::Not(a) => Bool(!a.eval_bool(env)?),
        Expr::Bin(op, a, b) => match op {
            BinOp::And => Bool(a.eval_bool(env)? && b.eval_bool(env)?),
            BinOp::Or => Bool(a.eval_bool(env)? || b.eval_bool(env)?),
            _ => {
                let x = a.eval_num(env)?;
                let y = b.eval_num(env)?;
                match op {
                    BinOp::Add => Num(x + y),
                    BinOp::Sub => Num(x - y),
                    BinOp::Mul => Num(x * y),
                    BinOp::Div => {
                        if y.is_zero() {
                            return Err(DbError::Eval(format!("division by zero in {e}")));
                        }
                        Num(x / y)
                    }
                    BinOp::Rem => {
                        let xi = int(&x, "%")?;
                        let yi = int(&y, "%")?;
                        if yi.is_zero() {
                            return Err(DbError::Eval(format!("modulo by zero in {e}")));
                        }
                        Num(rat(xi.mod_floor(&yi)))
                    }
                    BinOp::Pow => {
                        let k = small(&y, "exponent")?;
                        if k >= 0 {
                            Num(Pow::pow(x, k as u64))
                        } else if x.is_zero() {
                            return Err(DbError::Eval(format!("zero to a negative power in {e}")));
                        } else {
                            Num(Pow::pow(x.recip(), (-k) as u64))
                        }
                    }
                    BinOp::Eq => Bool(x == y),
                    BinOp::Ne => Bool(x != y),
                    BinOp::Lt => Bool(x < y),
                    BinOp::Le => Bool(x <= y),
                    BinOp::Gt => Bool(x > y),
                    BinOp::Ge => Bool(x >= y),
                    BinOp::And | BinOp::Or => unreachable!(),
                }
            }
        },
        Expr::Call(name, args) => call(name, args, env)?,
    })
}

fn arity(name: &str, args: &[Expr], n: usize) -> Result<(), DbError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(DbError::Eval(format!("{name} takes {n} arguments, got {}", args.len())))
    }
}

fn call(name: &str, args: &[Expr], env: &Env) -> Result<Value, DbError> {
    use Value::*;
    match name {
        "gcd" => {
            arity(name, args, 2)?;
            let a = int(&args[0].eval_num(env)?, "gcd")?;
            let b = int(&args[1].eval_num(env)?, "gcd")?;
            Ok(Num(rat(a.gcd(&b))))
        }
        "binom" => {
            arity(name, args, 2)?;
            let n = small(&args[0].eval_num(env)?, "binom")?;
            let k = small(&args[1].eval_num(env)?, "binom")?;
            if k < 0 || n < 0 || k > n {
                return Ok(Num(rat(0)));
            }
            let mut acc = BigInt::one();
            for i in 0..k {
                acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
            }
            Ok(Num(rat(acc)))
        }
        "fact" => {
            arity(name, args, 1)?;
            let n = small(&args[0].eval_num(env)?, "fact")?;
            if n < 0 {
                return Err(DbError::Eval(format!("fact of negative {n}")));
            }
            Ok(Num(rat((1..=n).fold(BigInt::one(), |a, i| a * i))))
        }
        "prod" => {
            arity(name, args, 4)?;
            let var = match &args[0] {
                Expr::Var(v) => v.clone(),
                other => return Err(DbError::Eval(format!("prod index must be a name, got {other}"))),
            };
            let lo = small(&args[1].eval_num(env)?, "prod")?;
            let hi = small(&args[2].eval_num(env)?, "prod")?;
            let mut local = env.clone();
            let mut acc = rat(1);
            for i in lo..=hi {
                local.insert(var.clone(), rat(i));
                acc *= args[3].eval_num(&local)?;
            }
            Ok(Num(acc))
        }
        "sqrt" => {
            arity(name, args, 1)?;
            let v = nat(&args[0].eval_num(env)?, "sqrt")?;
            let r = v.sqrt();
            if &r * &r != v {
                return Err(DbError::Eval(format!("sqrt({v}) is not an integer")));
            }
            Ok(Num(rat(BigInt::from(r))))
        }
        "if" => {
            arity(name, args, 3)?;
            if args[0].eval_bool(env)? {
                args[1].eval(env)
            } else {
                args[2].eval(env)
            }
        }
        "is_prime" => {
            arity(name, args, 1)?;
            let v = args[0].eval_num(env)?;
            Ok(Bool(v.is_integer() && v.is_positive() && is_prime(&nat(&v, "is_prime")?)))
        }
        "is_pow2" => {
            arity(name, args, 1)?;
            let v = args[0].eval_num(env)?;
            if !v.is_integer() || !v.is_positive() {
                return Ok(Bool(false));
            }
            let n = nat(&v, "is_pow2")?;
            Ok(Bool(n.count_ones() == 1))
        }
        "char" | "logq" => {
            arity(name, args, 1)?;
            let q = nat(&args[0].eval_num(env)?, name)?;
            let (p, k) = prime_power_parts(&q)
                .ok_or_else(|| DbError::Eval(format!("{name}({q}): not a prime power")))?;
            Ok(Num(if name == "char" { rat(BigInt::from(p)) } else { rat(k) }))
        }
        _ => Err(DbError::Eval(format!("unknown function {name}"))),
    }
}

/// Positive rational as a map prime -> signed exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePowers(BTreeMap<BigUint, i64>);

impl PrimePowers {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_natural(n: &BigUint) -> Result<Self, DbError> {
        let f = factorize(n).map_err(|e| DbError::Eval(e.to_string()))?;
        Ok(Self(f.factors().iter().map(|(p, e)| (p.clone(), *e as i64)).collect()))
    }

    pub fn from_factored(f: &crate::Factorization) -> Self {
        Self(f.factors().iter().map(|(p, e)| (p.clone(), *e as i64)).collect())
    }

    pub fn from_rational(v: &BigRational) -> Result<Self, DbError> {
        if !v.is_positive() {
            return Err(DbError::Eval(format!("{v} is not positive")));
        }
        let num = Self::from_natural(&v.numer().to_biguint().expect("positive"))?;
        let den = Self::from_natural(&v.denom().to_biguint().expect("positive"))?;
        Ok(num.div(&den))
    }

    pub fn exponents(&self) -> &BTreeMap<BigUint, i64> {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let mut m = self.0.clone();
        for (p, e) in &other.0 {
            let slot = m.entry(p.clone()).or_insert(0);
            *slot += sign * e;
            if *slot == 0 {
                m.remove(p);
            }
        }
        Self(m)
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        Self(self.0.iter().map(|(p, e)| (p.clone(), e * k)).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.values().all(|e| *e > 0)
    }

    /// Primes with positive exponent.
    pub fn numerator_primes(&self) -> BTreeSet<BigUint> {
        self.0.iter().filter(|(_, e)| **e > 0).map(|(p, _)| p.clone()).collect()
    }

    pub fn value(&self) -> BigRational {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, e) in &self.0 {
            let pe = Pow::pow(p, e.unsigned_abs() as u32);
            if *e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        BigRational::new(BigInt::from_biguint(Sign::Plus, num), BigInt::from_biguint(Sign::Plus, den))
    }

    /// Integer value, when integral.
    pub fn natural(&self) -> Option<BigUint> {
        let v = self.value();
        v.is_integer().then(|| v.to_integer().to_biguint().expect("positive"))
    }
}

impl fmt::Display for PrimePowers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Matches `b^k + 1` or `b^k - 1` with integral `b >= 2` and `k >= 1`.
fn cyclotomic_shape(e: &Expr, env: &Env) -> Result<Option<(BigUint, u32, i8)>, DbError> {
    let (op, a, c) = match e {
        Expr::Bin(op @ (BinOp::Add | BinOp::Sub), a, c) => (*op, a, c),
        _ => return Ok(None),
    };
    let (pow_side, constant) = match (&**a, &**c) {
        (Expr::Bin(BinOp::Pow, _, _), k) => {
            let v = k.eval_num(env)?;
            (&**a, if op == BinOp::Add { v } else { -v })
        }
        (k, Expr::Bin(BinOp::Pow, _, _)) if op == BinOp::Add => (&**c, k.eval_num(env)?),
        _ => return Ok(None),
    };
    let signed = if constant == rat(1) {
        1i8
    } else if constant == rat(-1) {
        -1i8
    } else {
        return Ok(None);
    };
    let Expr::Bin(BinOp::Pow, b, k) = pow_side else { return Ok(None) };
    let b = b.eval_num(env)?;
    let k = k.eval_num(env)?;
    if !b.is_integer() || !k.is_integer() || b < rat(2) || k < rat(1) {
        return Ok(None);
    }
    let Some(k) = k.to_integer().to_u32() else { return Ok(None) };
    Ok(Some((b.to_integer().to_biguint().expect("positive"), k, signed)))
}

fn factored(e: &Expr, env: &Env) -> Result<PrimePowers, DbError> {
    match e {
        Expr::Bin(BinOp::Mul, a, b) => Ok(factored(a, env)?.mul(&factored(b, env)?)),
        Expr::Bin(BinOp::Div, a, b) => Ok(factored(a, env)?.div(&factored(b, env)?)),
        Expr::Bin(BinOp::Pow, a, b) => {
            let k = small(&b.eval_num(env)?, "exponent")?;
            Ok(factored(a, env)?.pow(k))
        }
        Expr::Bin(BinOp::Add | BinOp::Sub, _, _) => {
            if let Some((b, k, sign)) = cyclotomic_shape(e, env)? {
                let f = if sign > 0 { factor_pow_plus_one(&b, k) } else { factor_pow_minus_one(&b, k) }
                    .map_err(|err| DbError::Eval(err.to_string()))?;
                return Ok(PrimePowers::from_factored(&f));
            }
            PrimePowers::from_rational(&e.eval_num(env)?)
        }
        Expr::Call(name, args) if name == "fact" => {
            let n = small(&args[0].eval_num(env)?, "fact")?;
            let mut acc = PrimePowers::one();
            for i in 2..=n {
                acc = acc.mul(&PrimePowers::from_natural(&BigUint::from(i as u64))?);
            }
            Ok(acc)
        }
        Expr::Call(name, args) if name == "prod" => {
            let Expr::Var(var) = &args[0] else {
                return Err(DbError::Eval("prod index must be a name".into()));
            };
            let lo = small(&args[1].eval_num(env)?, "prod")?;
            let hi = small(&args[2].eval_num(env)?, "prod")?;
            let mut local = env.clone();
            let mut acc = PrimePowers::one();
            for i in lo..=hi {
                local.insert(var.clone(), rat(i));
                acc = acc.mul(&factored(&args[3], &local)?);
            }
            Ok(acc)
        }
        Expr::Call(name, args) if name == "if" => {
            if args.len() != 3 {
                return Err(DbError::Eval("if takes 3 arguments".into()));
            }
            if args[0].eval_bool(env)? {
                factored(&args[1], env)
            } else {
                factored(&args[2], env)
            }
        }
        _ => PrimePowers::from_rational(&e.eval_num(env)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), rat(*v))).collect()
    }

    fn num(src: &str, e: &Env) -> BigRational {
        Expr::parse(src).unwrap().eval_num(e).unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        let e = env(&[("q", 3)]);
        assert_eq!(num("1 + 2*3", &e), rat(7));
        assert_eq!(num("2^3^2", &e), rat(512));
        assert_eq!(num("-q^2", &e), rat(-9));
        assert_eq!(num("(-1)^q", &e), rat(-1));
        assert_eq!(num("q^-1", &e), BigRational::new(1.into(), 3.into()));
        assert_eq!(num("7 % 3 + 10/4", &e), BigRational::new(7.into(), 2.into()));
    }

    #[test]
    fn functions() {
        let e = env(&[("p", 5), ("q", 27)]);
        assert_eq!(num("binom(p, 2)", &e), rat(10));
        assert_eq!(num("fact(p)", &e), rat(120));
        assert_eq!(num("gcd(12, 18)", &e), rat(6));
        assert_eq!(num("prod(i, 1, p - 1, i)", &e), rat(24));
        assert_eq!(num("prod(i, 3, 2, i)", &e), rat(1));
        assert_eq!(num("sqrt(3*q)", &e), rat(9));
        assert_eq!(num("char(q) + logq(q)", &e), rat(6));
        assert_eq!(num("if(q % 4 == 1, 1, -1)", &e), rat(-1));
        let b = |s: &str| Expr::parse(s).unwrap().eval_bool(&e).unwrap();
        assert!(b("is_prime(p) && !is_pow2(p) && is_pow2(8)"));
        assert!(b("p >= 5 || q < 0"));
        assert!(Expr::parse("sqrt(q)").unwrap().eval_num(&e).is_err());
        assert!(Expr::parse("char(12)").unwrap().eval_num(&e).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(Expr::parse("1 +").is_err());
        assert!(Expr::parse("(1").is_err());
        assert!(Expr::parse("1 $ 2").is_err());
        assert!(Expr::parse("1 2").is_err());
    }

    #[test]
    fn factored_agrees_with_value() {
        let srcs = [
            "q^binom(p, 2)*prod(i, 1, p - 1, q^i - 1)/fact(p)",
            "(q^p + 1)/((q + 1)*gcd(p, q + 1))",
            "q^6*(q^2 - 1)*(q + 1)*(q^3 - 1)/12",
            "1 + q^4",
        ];
        for (p, q) in [(3, 3), (5, 2), (7, 4), (3, 25)] {
            let e = env(&[("p", p), ("q", q)]);
            for s in srcs {
                let ex = Expr::parse(s).unwrap();
                assert_eq!(ex.eval_factored(&e).unwrap().value(), ex.eval_num(&e).unwrap(), "{s} p={p} q={q}");
            }
        }
    }

    #[test]
    fn cyclotomic_shapes() {
        let e = env(&[("q", 2)]);
        let f = Expr::parse("q^12 - 1").unwrap().eval_factored(&e).unwrap();
        assert_eq!(f.to_string(), "3^2*5*7*13");
        let f = Expr::parse("q^5 + 1").unwrap().eval_factored(&e).unwrap();
        assert_eq!(f.to_string(), "3*11");
        assert!(Expr::parse("q - 2").unwrap().eval_factored(&e).is_err());
    }

    #[test]
    fn prime_powers_ops() {
        let a = PrimePowers::from_natural(&BigUint::from(360u32)).unwrap();
        let b = PrimePowers::from_natural(&BigUint::from(84u32)).unwrap();
        let q = a.div(&b);
        assert!(!q.is_integral());
        assert_eq!(q.value(), BigRational::new(30.into(), 7.into()));
        assert_eq!(q.numerator_primes().len(), 3);
        assert_eq!(a.mul(&b).natural(), Some(BigUint::from(30240u32)));
    }
}
