//! Acceptance gate: one PASS/FAIL line per criterion. Criteria listed in
//! `KNOWN_FAILING` are computed in full and reported as FAIL; the run exits
//! non-zero only when an outcome differs from that list.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use ordertype::arith::{euler_phi, multiplicative_order, zsigmondy};
use ordertype::caseverify::{
    check_pi_equality, verify_cases, verify_corpus, verify_table4, CheckResult, CorpusGroups, Quantity, ScanLimits,
    Verdict,
};
use ordertype::frobstruct::{
    check_2frobenius_lemma, detect_2frobenius, detect_frobenius, gk_trichotomy, Classification,
};
use ordertype::gkgraph::build_gk;
use ordertype::permgrp::PermutationGroup;
use ordertype::simpledb::{instantiate_rows, ParamBounds, SimpleGroupId};
use ordertype::spectra::{check_order_lifting, order_equation, spectrum};

/// Criteria whose computed outcome contradicts the stated expectation.
const KNOWN_FAILING: [u32; 2] = [5, 7];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn group<'a>(groups: &'a CorpusGroups, label: &str) -> Result<&'a PermutationGroup, String> {
    groups.get(label).ok_or_else(|| format!("{label} not loaded"))
}

fn c1(start: Instant, groups: &CorpusGroups) -> Outcome {
    let mut n = 0;
    for (label, g) in groups.iter() {
        let eq = order_equation(g);
        ensure(eq.total() == g.order(), || format!("{label}: sum v_n phi(n) = {} != {}", eq.total(), g.order()))?;
        for (&m, row) in &eq.rows {
            let direct = g.ids().filter(|&x| g.element_order(x) == m).count() as u64;
            let phi = euler_phi(&m).expect("positive");
            ensure(direct == row.cyclic_degree * phi, || format!("{label}: |M({m})| = {direct}"))?;
        }
        n += 1;
    }
    ensure(n >= 25, || format!("only {n} groups"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{n} groups, {:.1?}", start.elapsed()))
}

fn c2(groups: &CorpusGroups) -> Outcome {
    let a5 = group(groups, "A5")?;
    let eq = order_equation(a5);
    ensure(eq.spectrum() == BTreeSet::from([1, 2, 3, 5]), || format!("spectrum {:?}", eq.spectrum()))?;
    let v: Vec<u64> = [2, 3, 5].iter().map(|&n| eq.cyclic_degree(n)).collect();
    ensure(v == [15, 10, 6], || format!("v = {v:?}"))?;
    let gk = build_gk(&spectrum(a5)).map_err(|e| e.to_string())?;
    let comps: Vec<BTreeSet<u64>> = gk.components.clone();
    ensure(comps == [BTreeSet::from([2]), BTreeSet::from([3]), BTreeSet::from([5])], || format!("{comps:?}"))?;
    ensure(gk.s() == 3, || format!("s = {}", gk.s()))?;
    ensure(!a5.is_solvable(), || "A5 solvable".into())?;
    Ok("spectrum {1,2,3,5}, v = 15,10,6, s = 3".into())
}

fn c3(groups: &CorpusGroups) -> Outcome {
    let all: Vec<(&str, &PermutationGroup)> = groups.iter().collect();
    let mut pairs = 0;
    let mut same = Vec::new();
    for (i, (la, a)) in all.iter().enumerate() {
        for (lb, b) in &all[i + 1..] {
            let by_equation = order_equation(a) == order_equation(b);
            let bound = num_integer::lcm(a.exponent(), b.exponent());
            let by_counts = (1..=bound).all(|d| a.count_order_dividing(d) == b.count_order_dividing(d));
            ensure(by_equation == by_counts, || format!("{la} vs {lb}: equation {by_equation}, counts {by_counts}"))?;
            if by_equation {
                ensure(a.is_solvable() == b.is_solvable(), || format!("{la} vs {lb}: solvability differs"))?;
                ensure(a.is_nilpotent() == b.is_nilpotent(), || format!("{la} vs {lb}: nilpotency differs"))?;
                same.push(format!("{la}~{lb}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, same type: {}", same.join(", ")))
}

fn c4(start: Instant) -> Outcome {
    let mut none = BTreeSet::new();
    for q in 2u64..=100 {
        let qb = BigUint::from(q);
        for n in 2u32..=20 {
            match zsigmondy(&qb, n).map_err(|e| e.to_string())? {
                None => {
                    none.insert((q, n));
                }
                Some(p) => {
                    ensure(multiplicative_order(&qb, &p) == n as u64, || format!("ord_{p}({q}) != {n}"))?;
                    ensure(&p % n == BigUint::from(1u32), || format!("{p} != 1 mod {n}"))?;
                }
            }
        }
    }
    let mut expected: BTreeSet<(u64, u32)> = (2u64..=100).filter(|q| (q + 1).is_power_of_two()).map(|q| (q, 2)).collect();
    expected.insert((2, 6));
    ensure(none == expected, || format!("none-set {none:?}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("none-set {none:?}, {:.1?}", start.elapsed()))
}

fn c5(groups: &CorpusGroups) -> Outcome {
    let frobenius = [
        ("S3", 3, 2),
        ("A4", 4, 3),
        ("F20", 5, 4),
        ("Z7:Z3", 7, 3),
        ("(Z3xZ3):Q8", 9, 8),
        ("(Z11xZ11):SL2(5)", 121, 120),
    ];
    let mut problems = Vec::new();
    for (label, k, h) in frobenius {
        let g = group(groups, label)?;
        match detect_frobenius(g) {
            Some(d) if (d.kernel.order(), d.complement.order()) == (k, h) => {}
            Some(d) => problems.push(format!("{label}: |K| = {}, |H| = {}", d.kernel.order(), d.complement.order())),
            None => problems.push(format!("{label}: not Frobenius")),
        }
    }
    for label in ["S4", "Z7:Z3:Z2"] {
        let g = group(groups, label)?;
        match detect_2frobenius(g) {
            Some(d) => {
                let report = check_2frobenius_lemma(g, &d);
                if !report.passed() {
                    problems.push(format!("{label}: 2-Frobenius lemma fails"));
                }
            }
            None => problems.push(format!("{label}: not 2-Frobenius")),
        }
    }
    match gk_trichotomy(group(groups, "A5")?) {
        Ok(Classification::AlmostSimpleSandwich { .. }) => {}
        other => problems.push(format!("A5: {other:?}")),
    }
    if problems.is_empty() {
        Ok("all structures detected".into())
    } else {
        Err(problems.join("; "))
    }
}

fn c6(groups: &CorpusGroups) -> Outcome {
    for (label, n, m) in [("A4", 4, 3), ("S4", 4, 3), ("F20", 5, 4)] {
        let g = group(groups, label)?;
        let nsub = g
            .normal_subgroups()
            .iter()
            .find(|s| s.order() == n)
            .ok_or_else(|| format!("{label}: no normal subgroup of order {n}"))?;
        let rep = check_order_lifting(g, nsub, m);
        ensure(rep.passed == Some(true), || format!("{label}, |N| = {n}, m = {m}: {rep:?}"))?;
    }
    let corpus_checks: Vec<CheckResult> =
        verify_corpus(groups).into_iter().filter(|c| c.check_id.starts_with("order_lifting:")).collect();
    let bad: Vec<&str> =
        corpus_checks.iter().filter(|c| c.verdict != Verdict::HoldsAsClaimed).map(|c| c.check_id.as_str()).collect();
    ensure(bad.is_empty(), || format!("failing: {bad:?}"))?;
    let cases = verify_cases(&ScanLimits::default(), groups).map_err(|e| e.to_string())?;
    let aut = find(&cases, "exceptional_count:Aut(L3(3))")?;
    let n1728 = Quantity::nat(1728u32);
    ensure(aut.computed_lhs == n1728 && aut.computed_rhs == n1728, || aut.line())?;
    Ok(format!("3 named instances, {} corpus instances, Aut(L3(3)) 1728 = 1728", corpus_checks.len()))
}

fn find<'a>(checks: &'a [CheckResult], id: &str) -> Result<&'a CheckResult, String> {
    checks.iter().find(|c| c.check_id == id).ok_or_else(|| format!("missing {id}"))
}

fn c7(start: Instant) -> Outcome {
    let bounds = ParamBounds::default();
    let expected: BTreeSet<SimpleGroupId> =
        ["A2(3)", "2A2(3)", "2A3(2)"].iter().map(|s| SimpleGroupId::parse(s).expect("valid")).collect();
    let mut holds = BTreeMap::new();
    let mut instances = 0;
    for t in 1..=3 {
        for i in instantiate_rows(t, &bounds).map_err(|e| e.to_string())? {
            let Some(c) = check_pi_equality(&i) else { continue };
            instances += 1;
            if c.computed_lhs == c.computed_rhs {
                holds.insert(i.group.clone(), i.label());
            } else {
                ensure(c.witness.is_some(), || format!("{}: no witness", c.check_id))?;
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    let got: BTreeSet<SimpleGroupId> = holds.keys().cloned().collect();
    let labels: Vec<String> = holds.values().cloned().collect();
    ensure(got == expected, || format!("equality holds for {}", labels.join("; ")))?;
    Ok(format!("{instances} instances, equality only for {}", labels.join("; ")))
}

fn c8(start: Instant, groups: &CorpusGroups) -> Outcome {
    let checks = verify_table4(groups).map_err(|e| e.to_string())?;
    let rows: Vec<&CheckResult> = checks.iter().filter(|c| c.check_id.starts_with("table4:")).collect();
    ensure(!rows.is_empty(), || "no rows".into())?;
    ensure(rows.iter().all(|c| c.verdict == Verdict::FailsAsClaimed), || "a row satisfies containment".into())?;
    let brute: Vec<&CheckResult> = checks.iter().filter(|c| c.check_id.starts_with("table4_bruteforce:")).collect();
    for label in ["M11", "M12", "J2"] {
        ensure(brute.iter().any(|c| c.check_id.contains(&format!(":{label}:"))), || format!("{label} not recomputed"))?;
    }
    if let Some(c) = brute.iter().find(|c| c.verdict != Verdict::HoldsAsClaimed) {
        return Err(c.line());
    }
    let m11 = find(&checks, "table4_bruteforce:M11:u=5")?;
    let m11_row = find(&checks, "table4:M11:u=5")?;
    ensure(m11.computed_lhs == Quantity::set(&BTreeSet::from([2u64, 3, 11])), || m11.line())?;
    ensure(m11_row.computed_rhs == Quantity::set(&BTreeSet::from([2u64])), || m11_row.line())?;
    within(start, Duration::from_secs(180))?;
    Ok(format!("{} rows fail, {} recomputations match", rows.len(), brute.len()))
}

fn c9(groups: &CorpusGroups) -> Outcome {
    let limits = ScanLimits::default();
    ensure(limits == ScanLimits { l2r_max: 199, alternating_p_max: 97, power_r_max: 61 }, || format!("{limits:?}"))?;
    let checks = verify_cases(&limits, groups).map_err(|e| e.to_string())?;
    let mut counts = BTreeMap::new();
    for prefix in ["l2r:", "alternating_factorial:", "power_three:", "power_two:"] {
        let sel: Vec<&CheckResult> = checks.iter().filter(|c| c.check_id.starts_with(prefix)).collect();
        ensure(!sel.is_empty(), || format!("no {prefix} checks"))?;
        if let Some(c) = sel.iter().find(|c| c.verdict != Verdict::FailsAsClaimed) {
            return Err(c.line());
        }
        counts.insert(prefix.trim_end_matches(':'), sel.len());
    }
    Ok(format!("{counts:?}"))
}

fn c10(groups: &CorpusGroups) -> Outcome {
    let checks = verify_cases(&ScanLimits::default(), groups).map_err(|e| e.to_string())?;
    let l33 = find(&checks, "exceptional_count:L3(3)")?;
    let n1728 = Quantity::nat(1728u32);
    ensure(l33.verdict == Verdict::HoldsAsClaimed, || l33.line())?;
    ensure(l33.computed_lhs == n1728 && l33.computed_rhs == n1728, || l33.line())?;
    ensure(l33.note.as_deref() == Some("|N_S(U)| = 39"), || l33.line())?;
    let printed = find(&checks, "exceptional_count_printed:E")?;
    ensure(printed.verdict == Verdict::Discrepancy, || printed.line())?;
    ensure(printed.computed_rhs == Quantity::nat(864u32), || printed.line())?;
    ensure(checks.iter().all(|c| c.verdict != Verdict::Contradiction), || "contradiction among cases".into())?;
    Ok("1728 = 12*144, |N| = 39, printed 2^5 3^3 flagged discrepancy".into())
}

fn c11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_ordertype"))
            .args(["report", "--json", "--out"])
            .arg(&path)
            .stdout(Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.code().is_some_and(|c| c == 0 || c == 1), || format!("exit {status}"))?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "outputs differ".into())?;
    Ok(format!("{} bytes, identical", outputs[0].len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let loaded = CorpusGroups::load_all();
    let groups = match loaded {
        Ok(g) => g,
        Err(e) => {
            println!("criterion  1 FAIL  corpus did not load: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut results: Vec<(u32, Outcome)> = vec![(1, c1(start, &groups))];
    results.push((2, c2(&groups)));
    results.push((3, c3(&groups)));
    results.push((4, c4(Instant::now())));
    results.push((5, c5(&groups)));
    results.push((6, c6(&groups)));
    results.push((7, c7(Instant::now())));
    results.push((8, c8(Instant::now(), &groups)));
    results.push((9, c9(&groups)));
    results.push((10, c10(&groups)));
    results.push((11, c11()));

    let mut unexpected = 0;
    for (n, r) in &results {
        let known = KNOWN_FAILING.contains(n);
        let (word, detail) = match r {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        if r.is_ok() == known {
            unexpected += 1;
        }
        let tag = if known { "  [known failure]" } else { "" };
        println!("criterion {n:>2} {word}  {detail}{tag}");
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria differ from the expected outcome");
        ExitCode::FAILURE
    }
}
