use num_integer::Integer;

use crate::arith::{euler_phi, prime_set};
use crate::frobstruct::{check_2frobenius_lemma, check_frobenius_lemma, trichotomy_flags, LemmaReport};
use crate::gkgraph::build_gk;
use crate::permgrp::PermutationGroup;
use crate::spectra::{check_order_lifting, OrderEquation};

use super::{CheckResult, CorpusGroups, Quantity, Section, Verdict};

const ORDER_EQUATION: &str = "sum v_n phi(n) = |G| and |M_G(n)| = v_n phi(n)";
const TRICHOTOMY: &str = "disconnected prime graph: exactly one of Frobenius, 2-Frobenius, almost simple sandwich";
const FROBENIUS: &str = "Frobenius structure lemma";
const TWO_FROBENIUS: &str = "2-Frobenius structure lemma";
const LIFTING: &str = "|M_G(m)| = |M_{G/N}(m)| |N|";
const SAME_TYPE: &str = "Ord(G) = Ord(F) iff |G(d)| = |F(d)| for all d";
const SAME_TYPE_STRUCTURE: &str = "same order type preserves solvability and nilpotency";

fn lemma_check(id: String, anchor: &str, label: &str, report: &LemmaReport) -> CheckResult {
    let asserted: Vec<_> = report.checks.iter().filter(|c| c.asserted).collect();
    let passed = asserted.iter().filter(|c| c.passed).count();
    let mut notes: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}{}: {}", c.name, if c.asserted { "" } else { " [not asserted]" }, c.detail))
        .collect();
    notes.sort();
    let r = CheckResult::new(
        id,
        Section::Corpus,
        anchor,
        label,
        Quantity::nat(passed as u64),
        Quantity::nat(asserted.len() as u64),
        if report.passed() { Verdict::HoldsAsClaimed } else { Verdict::Contradiction },
    );
    if notes.is_empty() {
        r
    } else {
        r.with_note(notes.join("; "))
    }
}

fn group_checks(label: &str, g: &PermutationGroup, out: &mut Vec<CheckResult>) {
    let counts = g.order_counts();
    let eq = OrderEquation::from_counts(&counts);
    let rows_ok = eq.as_ref().is_ok_and(|e| {
        counts.iter().all(|(&n, &c)| c == e.cyclic_degree(n) * euler_phi(&n).expect("positive"))
    });
    let total = eq.as_ref().map(|e| e.total()).unwrap_or(0);
    let mut r = CheckResult::new(
        format!("order_equation:{label}"),
        Section::Corpus,
        ORDER_EQUATION,
        label,
        Quantity::nat(total),
        Quantity::nat(g.order()),
        if rows_ok && total == g.order() { Verdict::HoldsAsClaimed } else { Verdict::Contradiction },
    );
    if let Ok(e) = &eq {
        r = r.with_note(e.to_string());
    }
    out.push(r);

    let spec = eq.map(|e| e.spectrum()).unwrap_or_default();
    let graph = build_gk(&spec).expect("enumerated spectra are divisor-closed");
    if !graph.is_disconnected() {
        return;
    }
    let flags = trichotomy_flags(g);
    let n = flags.branches_holding();
    out.push(
        CheckResult::new(
            format!("trichotomy:{label}"),
            Section::Corpus,
            TRICHOTOMY,
            label,
            Quantity::nat(n as u64),
            Quantity::nat(1u64),
            if n == 1 { Verdict::HoldsAsClaimed } else { Verdict::Contradiction },
        )
        .with_note(format!("{}, s = {}", flags.classification().branch(), graph.s())),
    );
    if let Some(d) = &flags.frobenius {
        let report = check_frobenius_lemma(g, d);
        let inst = format!("{label}, |K| = {}, |H| = {}", d.kernel.order(), d.complement.order());
        out.push(lemma_check(format!("frobenius_lemma:{label}"), FROBENIUS, &inst, &report));
    }
    if let Some(d) = &flags.two_frobenius {
        let report = check_2frobenius_lemma(g, d);
        let inst = format!("{label}, |A| = {}, |B| = {}, |C| = {}", d.a.order(), d.b_order, d.c_order);
        out.push(lemma_check(format!("two_frobenius_lemma:{label}"), TWO_FROBENIUS, &inst, &report));
    }

    for nsub in g.normal_subgroups().iter().filter(|s| !s.is_trivial() && s.order() < g.order()) {
        let pn = prime_set(&nsub.order()).expect("positive");
        for &m in spec.iter().filter(|&&m| m > 1 && m.gcd(&nsub.order()) == 1) {
            let pm = prime_set(&m).expect("positive");
            if !graph.components.iter().any(|c| pm.is_subset(c) && c.is_disjoint(&pn)) {
                continue;
            }
            let rep = check_order_lifting(g, nsub, m);
            let passed = rep.passed.expect("preconditions hold");
            out.push(CheckResult::new(
                format!("order_lifting:{label}:|N|={}:m={m}", nsub.order()),
                Section::Corpus,
                LIFTING,
                format!("{label}, |N| = {}, m = {m}", nsub.order()),
                Quantity::nat(rep.count_group),
                Quantity::nat(rep.count_quotient.expect("normal") * nsub.order()),
                if passed { Verdict::HoldsAsClaimed } else { Verdict::Contradiction },
            ));
        }
    }
}

fn g_d_counts(g: &PermutationGroup, bound: u64) -> Vec<u64> {
    (1..=bound).map(|d| g.count_order_dividing(d)).collect()
}

/// Corpus property suite: order equations, trichotomy, structure lemmas,
/// order lifting, and same-order-type comparisons between groups of equal
/// order.
pub fn verify_corpus(groups: &CorpusGroups) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let all: Vec<(&str, &PermutationGroup)> = groups.iter().collect();
    for &(label, g) in &all {
        group_checks(label, g, &mut out);
    }
    for (i, &(la, a)) in all.iter().enumerate() {
        for &(lb, b) in &all[i + 1..] {
            if a.order() != b.order() {
                continue;
            }
            let bound = a.exponent().lcm(&b.exponent());
            let by_equation = a.order_counts() == b.order_counts();
            let by_counts = g_d_counts(a, bound) == g_d_counts(b, bound);
            let pair = format!("{la} vs {lb}");
            out.push(CheckResult::new(
                format!("same_type:{la}:{lb}"),
                Section::Corpus,
                SAME_TYPE,
                pair.clone(),
                Quantity::text(by_equation.to_string()),
                Quantity::text(by_counts.to_string()),
                if by_equation == by_counts { Verdict::HoldsAsClaimed } else { Verdict::Contradiction },
            ));
            if by_equation {
                let sa = (a.is_solvable(), a.is_nilpotent());
                let sb = (b.is_solvable(), b.is_nilpotent());
                out.push(CheckResult::new(
                    format!("same_type_structure:{la}:{lb}"),
                    Section::Corpus,
                    SAME_TYPE_STRUCTURE,
                    pair,
                    Quantity::text(format!("solvable={}, nilpotent={}", sa.0, sa.1)),
                    Quantity::text(format!("solvable={}, nilpotent={}", sb.0, sb.1)),
                    if sa == sb { Verdict::HoldsAsClaimed } else { Verdict::Contradiction },
                ));
            }
        }
    }
    out
}
