use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::prime_set;
use crate::permgrp::PermutationGroup;
use crate::simpledb::{order_factored, sporadic_rows};

use super::{CheckResult, CorpusGroups, Quantity, Section, Verdict, VerifyError};

const CONTAINMENT: &str = "pi(|A|/|N|) <= pi(|C|)";
const CONSISTENCY: &str = "|U| and printed primes divide |S|";
const BRUTE_FORCE: &str = "pi(|S : N_S(U)|) = printed pi(|A|/|N|)";

/// Sporadic groups re-derived by enumeration.
pub const BRUTE_FORCED: [&str; 3] = ["M11", "M12", "J2"];

/// Normalizer of a subgroup of prime order `u` whose order is the full
/// `u`-part of the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusNormalizer {
    pub u: u64,
    pub normalizer_order: u64,
    pub index: u64,
    /// Elements of order `u`, counted independently.
    pub elements_of_order_u: u64,
    /// `elements_of_order_u / (u - 1)`, the number of subgroups of order `u`.
    pub subgroup_count: u64,
}

impl TorusNormalizer {
    /// Both routes agree: index of the normalizer equals the number of
    /// conjugate subgroups of order `u`.
    pub fn routes_agree(&self) -> bool {
        self.index == self.subgroup_count
    }
}

/// Locates a subgroup `U` of prime order `u` and computes `|N_G(U)|` by
/// conjugation, and separately the number of subgroups of order `u`.
/// `None` when `g` has no element of order `u`.
pub fn torus_normalizer(g: &PermutationGroup, u: u64) -> Option<TorusNormalizer> {
    let x = g.ids().find(|&x| g.element_order(x) == u)?;
    let n = g.normalizer(&g.cyclic(x));
    let elements = g.ids().filter(|&y| g.element_order(y) == u).count() as u64;
    Some(TorusNormalizer {
        u,
        normalizer_order: n.order(),
        index: g.order() / n.order(),
        elements_of_order_u: elements,
        subgroup_count: elements / (u - 1),
    })
}

/// Table 4: the containment fails for every entry, every printed prime
/// divides `|S|`, and for the enumerated groups the normalizer index
/// reproduces the printed prime set. Brute force needs `groups` to hold
/// M11, M12 and J2; missing groups are skipped.
pub fn verify_table4(groups: &CorpusGroups) -> Result<Vec<CheckResult>, VerifyError> {
    let mut out = Vec::new();
    for row in sporadic_rows() {
        let order = order_factored(&row.group)?;
        let s_primes: BTreeSet<u64> =
            order.primes().iter().map(|p| u64::try_from(p).expect("sporadic primes are small")).collect();
        for e in &row.entries {
            let instance = format!("{} |U|={}", row.name, e.u);
            let holds = e.pi_a_over_n.is_subset(&e.pi_c);
            out.push(CheckResult::new(
                format!("table4:{}:u={}", row.name, e.u),
                Section::SporadicTable,
                CONTAINMENT,
                instance.clone(),
                Quantity::set(&e.pi_a_over_n),
                Quantity::set(&e.pi_c),
                if holds { Verdict::Contradiction } else { Verdict::FailsAsClaimed },
            ));

            let mut printed: BTreeSet<u64> = e.pi_a_over_n.union(&e.pi_c).copied().collect();
            printed.insert(e.u);
            let stray: BTreeSet<u64> = printed.difference(&s_primes).copied().collect();
            let mut r = CheckResult::new(
                format!("table4_consistency:{}:u={}", row.name, e.u),
                Section::SporadicTable,
                CONSISTENCY,
                instance.clone(),
                Quantity::set(&printed),
                Quantity::set(&s_primes),
                if stray.is_empty() { Verdict::HoldsAsClaimed } else { Verdict::Discrepancy },
            );
            if !stray.is_empty() {
                let s: Vec<String> = stray.iter().map(|p| p.to_string()).collect();
                r = r.with_note(format!("{} does not divide |{}|", s.join(","), row.name));
            }
            out.push(r);

            if !BRUTE_FORCED.contains(&row.name.as_str()) {
                continue;
            }
            let Some(g) = groups.get(&row.name) else { continue };
            let t = torus_normalizer(g, e.u).expect("printed torus order is an element order");
            let computed = prime_set(&t.index).expect("positive");
            let verdict = if !t.routes_agree() {
                Verdict::Contradiction
            } else if computed == e.pi_a_over_n {
                Verdict::HoldsAsClaimed
            } else {
                Verdict::Discrepancy
            };
            out.push(
                CheckResult::new(
                    format!("table4_bruteforce:{}:u={}", row.name, e.u),
                    Section::SporadicTable,
                    BRUTE_FORCE,
                    instance,
                    Quantity::set(&computed),
                    Quantity::set(&e.pi_a_over_n),
                    verdict,
                )
                .with_note(format!(
                    "|N_S(U)| = {}, index {} = {} subgroups of order {}",
                    t.normalizer_order, t.index, t.subgroup_count, e.u
                )),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table4_without_groups_has_no_brute_force() {
        let checks = verify_table4(&CorpusGroups::default()).unwrap();
        assert!(checks.iter().all(|c| !c.check_id.starts_with("table4_bruteforce")));
        let contain: Vec<_> = checks.iter().filter(|c| c.anchor == CONTAINMENT).collect();
        assert!(contain.iter().all(|c| c.verdict == Verdict::FailsAsClaimed));
        let disc: Vec<_> = checks.iter().filter(|c| c.verdict == Verdict::Discrepancy).collect();
        assert!(!disc.is_empty());
        assert!(disc.iter().all(|c| c.instance.starts_with("Th ")), "{disc:?}");
    }

    #[test]
    fn m11_normalizers() {
        let groups = CorpusGroups::load(&["M11"]).unwrap();
        let g = groups.get("M11").unwrap();
        let t5 = torus_normalizer(g, 5).unwrap();
        assert_eq!((t5.normalizer_order, t5.index), (20, 396));
        assert!(t5.routes_agree());
        let t11 = torus_normalizer(g, 11).unwrap();
        assert_eq!((t11.normalizer_order, t11.index), (55, 144));
        assert!(torus_normalizer(g, 7).is_none());
    }
}
