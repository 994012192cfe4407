//! Mechanical re-run of the case analysis over simple groups with
//! disconnected prime graph: torus tables, sporadic table, number-theoretic
//! scans, exceptional cases and corpus properties, collected into a
//! deterministic report.

mod corpus_suite;
mod exceptional;
mod report;
mod scans;
mod sporadic;
mod torus;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{prime_set, Natural};
use crate::permgrp::{GroupSpec, PermError, PermutationGroup};
use crate::simpledb::{corpus, corpus_entry, DbError};

pub use corpus_suite::verify_corpus;
pub use exceptional::check_exceptional_cases;
pub use report::{full_report, verify_cases, StepStatus, Summary, VerificationReport, ScanLimits};
pub use scans::{scan_alternating, scan_l2r, scan_power_equations};
pub use sporadic::{torus_normalizer, verify_table4, TorusNormalizer};
pub use torus::{
    check_cross_check, check_pi_equality, check_quotient_containment, not_exercised_rows,
    verify_lie_table, verify_lie_tables, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Db(#[from] DbError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("unknown table {0}; expected 1, 2, 3 or 4")]
    UnknownTable(u8),
    #[error("report is not valid JSON: {0}")]
    Json(String),
}

/// Outcome of one check, decided by computed values only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// A claimed impossibility: the tested relation fails.
    #[serde(rename = "fails_as_paper_claims")]
    FailsAsClaimed,
    /// A claimed identity or consistency: the tested relation holds.
    #[serde(rename = "holds_as_paper_claims")]
    HoldsAsClaimed,
    /// One of the named exceptional survivors, confirmed.
    ExceptionConfirmed,
    /// Printed data is internally inconsistent. Reported, not fatal.
    Discrepancy,
    /// Computed values contradict a claim.
    Contradiction,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::FailsAsClaimed => "fails_as_paper_claims",
            Verdict::HoldsAsClaimed => "holds_as_paper_claims",
            Verdict::ExceptionConfirmed => "exception_confirmed",
            Verdict::Discrepancy => "discrepancy",
            Verdict::Contradiction => "contradiction",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Part of the analysis a check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    LieTables,
    SporadicTable,
    Scans,
    ExceptionalCases,
    Corpus,
}

impl Section {
    pub const ALL: [Section; 5] =
        [Section::LieTables, Section::SporadicTable, Section::Scans, Section::ExceptionalCases, Section::Corpus];

    pub fn as_str(self) -> &'static str {
        match self {
            Section::LieTables => "lie_tables",
            Section::SporadicTable => "sporadic_table",
            Section::Scans => "scans",
            Section::ExceptionalCases => "exceptional_cases",
            Section::Corpus => "corpus",
        }
    }
}

/// Natural number serialized as a JSON integer when it fits in 64 bits and
/// as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Num(pub BigUint);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number or a decimal string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(BigUint::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::custom("not a decimal natural"));
                }
                v.parse().map(Num).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A computed side of a check: a prime set, a natural, or a rational or
/// boolean rendered as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Set(Vec<Num>),
    Natural(Num),
    Text(String),
}

impl Quantity {
    pub fn set<N: Natural>(s: &BTreeSet<N>) -> Self {
        Quantity::Set(s.iter().map(|p| Num(p.to_biguint())).collect())
    }

    pub fn nat(n: impl Into<BigUint>) -> Self {
        Quantity::Natural(Num(n.into()))
    }

    pub fn rational(v: &BigRational) -> Self {
        if v.is_integer() {
            if let Some(n) = v.to_integer().to_biguint() {
                return Quantity::nat(n);
            }
        }
        Quantity::Text(v.to_string())
    }

    pub fn text(s: impl Into<String>) -> Self {
        Quantity::Text(s.into())
    }

    /// The prime set, when this is a set.
    pub fn as_set(&self) -> Option<BTreeSet<BigUint>> {
        match self {
            Quantity::Set(v) => Some(v.iter().map(|n| n.0.clone()).collect()),
            _ => None,
        }
    }

    pub fn as_natural(&self) -> Option<&BigUint> {
        match self {
            Quantity::Natural(n) => Some(&n.0),
            _ => None,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Set(v) => {
                let parts: Vec<String> = v.iter().map(|n| n.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            Quantity::Natural(n) => write!(f, "{n}"),
            Quantity::Text(s) => f.write_str(s),
        }
    }
}

/// One verified relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub section: Section,
    /// The relation tested, in words.
    pub anchor: String,
    pub instance: String,
    pub computed_lhs: Quantity,
    pub computed_rhs: Quantity,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub(crate) fn new(
        check_id: impl Into<String>,
        section: Section,
        anchor: &str,
        instance: impl Into<String>,
        computed_lhs: Quantity,
        computed_rhs: Quantity,
        verdict: Verdict,
    ) -> Self {
        CheckResult {
            check_id: check_id.into(),
            section,
            anchor: anchor.to_string(),
            instance: instance.into(),
            computed_lhs,
            computed_rhs,
            verdict,
            witness: None,
            note: None,
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// One-line rendering for terminal output.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{:<22} {}  [{}]  lhs={} rhs={}",
            self.verdict.as_str(),
            self.check_id,
            self.anchor,
            self.computed_lhs,
            self.computed_rhs
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness={}", w.prime));
        }
        if let Some(n) = &self.note {
            s.push_str(&format!(" ({n})"));
        }
        s
    }
}

/// `m | n` and `pi(n/m) <= pi(m)` imply `pi(m) = pi(n)`. Returns whether the
/// hypothesis held; the conclusion is asserted when it did.
pub fn check_pi_lemma<N: Natural>(m: &N, n: &N) -> bool {
    assert!(!m.is_zero() && !n.is_zero(), "check_pi_lemma needs positive arguments");
    if !(n.clone() % m.clone()).is_zero() {
        return false;
    }
    let pm = prime_set(m).expect("positive");
    let quotient = n.clone() / m.clone();
    let hypothesis = prime_set(&quotient).expect("positive").is_subset(&pm);
    if hypothesis {
        assert_eq!(pm, prime_set(n).expect("positive"), "pi lemma conclusion");
    }
    hypothesis
}

/// Corpus groups enumerated once and shared between checks.
#[derive(Default)]
pub struct CorpusGroups {
    groups: BTreeMap<&'static str, PermutationGroup>,
}

impl CorpusGroups {
    /// Enumerates the named corpus entries.
    pub fn load(labels: &[&str]) -> Result<Self, VerifyError> {
        let mut groups = BTreeMap::new();
        for &l in labels {
            let e = corpus_entry(l)?;
            groups.insert(e.label, GroupSpec::parse(e.source)?.enumerate()?);
        }
        Ok(CorpusGroups { groups })
    }

    /// Enumerates the whole corpus.
    pub fn load_all() -> Result<Self, VerifyError> {
        let labels: Vec<&str> = corpus().iter().map(|e| e.label).collect();
        Self::load(&labels)
    }

    pub fn get(&self, label: &str) -> Option<&PermutationGroup> {
        self.groups.get(label)
    }

    /// Groups in corpus order.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &PermutationGroup)> + '_ {
        corpus().iter().filter_map(|e| self.groups.get(e.label).map(|g| (e.label, g)))
    }
}

/// Corpus groups needed by the exceptional cases and the sporadic brute force.
pub const CASE_GROUPS: [&str; 7] = ["L3(3)", "Aut(L3(3))", "U3(3)", "U4(2)", "M11", "M12", "J2"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_lemma_examples() {
        assert!(check_pi_lemma(&6u64, &72));
        assert!(check_pi_lemma(&7u64, &7));
        assert!(!check_pi_lemma(&4u64, &12));
        assert!(!check_pi_lemma(&5u64, &12));
    }

    #[test]
    fn quantity_round_trips() {
        let big: BigUint = BigUint::from(u64::MAX) * 3u32;
        let qs = vec![
            Quantity::set(&BTreeSet::from([2u64, 3, 5])),
            Quantity::nat(1728u32),
            Quantity::nat(big.clone()),
            Quantity::text("1/2"),
            Quantity::set(&BTreeSet::from([big])),
        ];
        let json = serde_json::to_string(&qs).unwrap();
        assert!(json.starts_with("[[2,3,5],1728,\""));
        let back: Vec<Quantity> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, qs);
    }

    #[test]
    fn verdict_names() {
        assert_eq!(serde_json::to_string(&Verdict::FailsAsClaimed).unwrap(), "\"fails_as_paper_claims\"");
        assert_eq!(serde_json::to_string(&Verdict::ExceptionConfirmed).unwrap(), "\"exception_confirmed\"");
        for v in [Verdict::HoldsAsClaimed, Verdict::Discrepancy, Verdict::Contradiction] {
            assert_eq!(serde_json::to_string(&v).unwrap(), format!("\"{}\"", v.as_str()));
        }
    }
}
