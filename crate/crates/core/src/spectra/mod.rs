//! Order equations `|G| = sum v_n(G) phi(n)`, spectra, and the order-lifting
//! identity for quotients by normal subgroups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{euler_phi, prime_set};
use crate::gkgraph::build_gk;
use crate::permgrp::{PermutationGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("{count} elements of order {n} is not a multiple of phi({n}) = {phi}")]
    NotMultipleOfPhi { n: u64, count: u64, phi: u64 },
    #[error("spectrum is not closed under divisors: {n} present but {d} missing")]
    NotDivisorClosed { n: u64, d: u64 },
}

/// One row of the order equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderRow {
    /// `|M_G(n)|`, the number of elements of order `n`.
    pub count: u64,
    /// `v_n(G)`, the number of cyclic subgroups of order `n`.
    pub cyclic_degree: u64,
}

/// `|G| = sum over n in pi_e(G) of v_n(G) phi(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderEquation {
    pub group_order: u64,
    pub rows: BTreeMap<u64, OrderRow>,
}

impl OrderEquation {
    /// Builds the equation from element-order counts, validating every invariant.
    pub fn from_counts(counts: &BTreeMap<u64, u64>) -> Result<Self, SpectraError> {
        let mut rows = BTreeMap::new();
        for (&n, &count) in counts {
            let phi = euler_phi(&n).expect("orders are positive");
            if count % phi != 0 {
                return Err(SpectraError::NotMultipleOfPhi { n, count, phi });
            }
            rows.insert(n, OrderRow { count, cyclic_degree: count / phi });
        }
        let group_order = counts.values().sum();
        let eq = Self { group_order, rows };
        let spec = eq.spectrum();
        for &n in &spec {
            for d in 1..n {
                if n % d == 0 && !spec.contains(&d) {
                    return Err(SpectraError::NotDivisorClosed { n, d });
                }
            }
        }
        Ok(eq)
    }

    /// `pi_e(G)`.
    pub fn spectrum(&self) -> BTreeSet<u64> {
        self.rows.keys().copied().collect()
    }

    /// `v_n(G)`, zero when `n` is not an element order.
    pub fn cyclic_degree(&self, n: u64) -> u64 {
        self.rows.get(&n).map_or(0, |r| r.cyclic_degree)
    }

    /// `|M_G(n)|`.
    pub fn count(&self, n: u64) -> u64 {
        self.rows.get(&n).map_or(0, |r| r.count)
    }

    /// `|G(d)| = sum over n | d of |M_G(n)|`.
    pub fn count_order_dividing(&self, d: u64) -> u64 {
        self.rows.iter().filter(|(n, _)| d % **n == 0).map(|(_, r)| r.count).sum()
    }

    pub fn exponent(&self) -> u64 {
        self.rows.keys().fold(1, |a, b| a.lcm(b))
    }

    /// `sum v_n phi(n)`, which must equal the group order.
    pub fn total(&self) -> u64 {
        self.rows.iter().map(|(n, r)| r.cyclic_degree * euler_phi(n).expect("positive")).sum()
    }
}

impl fmt::Display for OrderEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.group_order)?;
        let terms: Vec<String> = self
            .rows
            .iter()
            .map(|(n, r)| if *n == 1 { "1".to_string() } else { format!("{}*phi({n})", r.cyclic_degree) })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `pi_e(G)`.
pub fn spectrum(group: &PermutationGroup) -> BTreeSet<u64> {
    group.order_counts().into_keys().collect()
}

pub fn order_equation(group: &PermutationGroup) -> OrderEquation {
    OrderEquation::from_counts(&group.order_counts()).expect("an enumerated group satisfies its order equation")
}

pub fn same_order_type(g1: &PermutationGroup, g2: &PermutationGroup) -> bool {
    order_equation(g1) == order_equation(g2)
}

/// Maximal elements of a set of naturals under divisibility.
pub fn maximal_under_divisibility(set: &BTreeSet<u64>) -> BTreeSet<u64> {
    set.iter().copied().filter(|&a| !set.iter().any(|&b| b != a && b % a == 0)).collect()
}

/// `mu(G)`.
pub fn mu_set(eq: &OrderEquation) -> BTreeSet<u64> {
    maximal_under_divisibility(&eq.spectrum())
}

/// Outcome of comparing `|M_G(m)|` with `|M_{G/N}(m)| |N|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderLiftingReport {
    pub m: u64,
    pub normal_order: u64,
    /// Named preconditions and whether each holds.
    pub preconditions: Vec<(String, bool)>,
    /// `|M_G(m)|`.
    pub count_group: u64,
    /// `|M_{G/N}(m)|`, absent when `N` is not normal.
    pub count_quotient: Option<u64>,
    /// Every element of order `m` maps to a coset of order `m`.
    pub orders_preserved: Option<bool>,
    /// `None` when a precondition fails.
    pub passed: Option<bool>,
}

impl OrderLiftingReport {
    pub fn preconditions_hold(&self) -> bool {
        self.preconditions.iter().all(|(_, ok)| *ok)
    }
}

/// Checks `|M_G(m)| = |M_{G/N}(m)| |N|` and that elements of order `m` keep
/// their order in `G/N`. Precondition failures are reported, not asserted.
///
/// Preconditions: `N` normal, `m` an element order coprime to `|N|`, and
/// `pi(m)` inside a single prime-graph component that avoids `pi(N)`.
pub fn check_order_lifting(group: &PermutationGroup, n: &Subgroup, m: u64) -> OrderLiftingReport {
    let normal = group.is_normal(n);
    let coprime = m.gcd(&n.order()) == 1;
    let spec = spectrum(group);
    let graph = build_gk(&spec).expect("enumerated spectra are divisor-closed");
    let pm = prime_set(&m).unwrap_or_default();
    let pn = prime_set(&n.order()).unwrap_or_default();
    let separated = m > 1
        && graph
            .components
            .iter()
            .any(|c| pm.is_subset(c) && c.is_disjoint(&pn));
    let preconditions = vec![
        ("N normal".to_string(), normal),
        ("m in pi_e(G)".to_string(), spec.contains(&m)),
        ("gcd(m, |N|) = 1".to_string(), coprime),
        ("pi(m) in one component disjoint from pi(N)".to_string(), separated),
    ];
    let count_group = group.ids().filter(|&x| group.element_order(x) == m).count() as u64;
    let mut report = OrderLiftingReport {
        m,
        normal_order: n.order(),
        preconditions,
        count_group,
        count_quotient: None,
        orders_preserved: None,
        passed: None,
    };
    if !normal {
        return report;
    }
    let q = group.quotient(n).expect("normality checked");
    let count_quotient = (0..q.order() as usize).filter(|&c| q.element_order(c) == m).count() as u64;
    let preserved = group
        .ids()
        .filter(|&x| group.element_order(x) == m)
        .all(|x| q.element_order(q.coset(x)) == m);
    report.count_quotient = Some(count_quotient);
    report.orders_preserved = Some(preserved);
    if report.preconditions_hold() {
        report.passed = Some(preserved && count_group == count_quotient * n.order());
    }
    report
}
