use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use ordertype::simpledb::{
    instantiate_rows, order_of, sporadic_rows, LieInstance, ParamBounds, PrimePowers, Tables, TABLES_TOML,
};
use ordertype::arith::factorize;
use sha2::{Digest, Sha256};

const TABLES_SHA256: &str = "8b464883876ece6a89ea51e883d664acd8abc1cc4b0da42753a7e9e7a0caf748";

const ORACLE: &str = include_str!("fixtures/tables_oracle.tsv");

fn oracle_key(i: &LieInstance) -> String {
    let rank = match &i.group {
        ordertype::simpledb::SimpleGroupId::Lie { rank, .. } => *rank,
        _ => unreachable!(),
    };
    format!("T{}\t{}\tn={}\tq={}\tv={}", i.table, i.row_key, rank, i.q, i.variant)
}

fn oracle_lines(kind: &str) -> Vec<Vec<&'static str>> {
    ORACLE
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').collect::<Vec<_>>())
        .filter(|f| f[0] == kind)
        .collect()
}

fn all_instances() -> Vec<LieInstance> {
    let b = ParamBounds::default();
    (1..=3).flat_map(|t| instantiate_rows(t, &b).unwrap()).collect()
}

#[test]
fn data_file_hash_is_pinned() {
    let digest = Sha256::digest(TABLES_TOML.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, TABLES_SHA256);
}

#[test]
fn instance_count_matches_oracle() {
    let expected: usize = oracle_lines("instances")[0][1].parse().unwrap();
    assert_eq!(all_instances().len(), expected);
}

#[test]
fn cross_check_mismatches_match_oracle() {
    let expected: BTreeMap<String, String> = oracle_lines("mismatch")
        .into_iter()
        .map(|f| (f[1..6].join("\t"), f[6].to_string()))
        .collect();
    let got: BTreeMap<String, String> = all_instances()
        .iter()
        .filter(|i| !i.cross_check_holds())
        .map(|i| (oracle_key(i), i.cross_check_ratio().to_string()))
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn every_instance_order_matches_order_of() {
    for i in all_instances() {
        assert_eq!(*i.order.value(), order_of(&i.group).unwrap(), "{}", i.label());
        let u = PrimePowers::from_factored(&i.u);
        assert!(u.is_integral());
    }
}

#[test]
fn theta0_within_weyl_and_characteristic() {
    for i in all_instances() {
        if i.row_key == "A_1(q), q = 2^r, 3^r" {
            continue;
        }
        let ch = factorize(&i.q).unwrap().primes().into_iter().next().unwrap();
        for p in &i.theta0 {
            let p = p.to_u64().unwrap();
            assert!(p == ch || i.w.factors().contains_key(&BigUint::from(p)), "{} theta0 prime {p}", i.label());
        }
    }
}

#[test]
fn rows_not_exercised_are_reported() {
    let b = ParamBounds::default();
    let t = Tables::embedded();
    let idle: Vec<&str> = t
        .rows
        .iter()
        .filter(|r| r.instantiate(&b).unwrap().is_empty())
        .map(|r| r.key.as_str())
        .collect();
    assert!(idle.is_empty(), "{idle:?}");
}

#[test]
fn sporadic_rows_are_consistent() {
    let rows = sporadic_rows();
    assert_eq!(rows.len(), 27);
    for r in rows {
        let order = factorize(&order_of(&r.group).unwrap()).unwrap();
        for e in &r.entries {
            assert!(order.factors().contains_key(&BigUint::from(e.u)), "{} u={}", r.name, e.u);
            for p in e.pi_a_over_n.iter().chain(&e.pi_c) {
                let listed = order.factors().contains_key(&BigUint::from(*p));
                if r.name == "Th" && *p == 11 {
                    assert!(!listed);
                } else {
                    assert!(listed, "{} u={} lists {p}", r.name, e.u);
                }
            }
        }
    }
}
