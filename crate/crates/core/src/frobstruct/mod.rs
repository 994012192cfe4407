//! Frobenius and 2-Frobenius structure of enumerated groups, the checkable
//! parts of their structure lemmas, and the prime-graph trichotomy.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::arith::prime_set;
use crate::gkgraph::build_gk;
use crate::permgrp::{ElemId, PermError, PermutationGroup, Subgroup};
use crate::spectra::spectrum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("prime graph is connected; the trichotomy does not apply")]
    Connected,
}

/// `G = K H` with Frobenius kernel `K` and complement `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusDecomposition {
    pub kernel: Subgroup,
    pub complement: Subgroup,
}

/// `G = A B C` with `AB` Frobenius with kernel `A` and `G/A` Frobenius with
/// kernel `AB/A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFrobeniusDecomposition {
    pub a: Subgroup,
    pub ab: Subgroup,
    pub b_order: u64,
    pub c_order: u64,
}

/// One named check. `asserted` is false for checks reported for information only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    pub asserted: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    /// Every asserted check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.asserted).all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, passed: bool, asserted: bool, detail: impl Into<String>) {
        self.checks.push(LemmaCheck { name: name.to_string(), passed, asserted, detail: detail.into() });
    }
}

/// Branch of the prime-graph trichotomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Frobenius(FrobeniusDecomposition),
    TwoFrobenius(TwoFrobeniusDecomposition),
    /// `M1` solvable, `M2/M1` nonabelian simple, `M1` and `G/M2` `pi_1`-groups.
    AlmostSimpleSandwich { m1_order: u64, m2_order: u64 },
    Unclassifiable,
}

impl Classification {
    pub fn branch(&self) -> &'static str {
        match self {
            Classification::Frobenius(_) => "frobenius",
            Classification::TwoFrobenius(_) => "two_frobenius",
            Classification::AlmostSimpleSandwich { .. } => "almost_simple_sandwich",
            Classification::Unclassifiable => "unclassifiable",
        }
    }
}

/// All three branch predicates, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrichotomyFlags {
    pub frobenius: Option<FrobeniusDecomposition>,
    pub two_frobenius: Option<TwoFrobeniusDecomposition>,
    pub sandwich: Option<(u64, u64)>,
}

impl TrichotomyFlags {
    pub fn branches_holding(&self) -> usize {
        self.frobenius.is_some() as usize + self.two_frobenius.is_some() as usize + self.sandwich.is_some() as usize
    }

    pub fn classification(&self) -> Classification {
        if let Some(d) = &self.frobenius {
            Classification::Frobenius(d.clone())
        } else if let Some(d) = &self.two_frobenius {
            Classification::TwoFrobenius(d.clone())
        } else if let Some((m1_order, m2_order)) = self.sandwich {
            Classification::AlmostSimpleSandwich { m1_order, m2_order }
        } else {
            Classification::Unclassifiable
        }
    }
}

/// `K` normal Hall in `ambient` with `C_ambient(x) <= K` for every `x` in
/// `reps`, the nontrivial elements of `K` up to conjugacy.
fn kernel_criterion(g: &PermutationGroup, k: &Subgroup, ambient: &Subgroup, reps: &[ElemId]) -> bool {
    let ko = k.order();
    let ao = ambient.order();
    if ko <= 1 || ko >= ao || ko.gcd(&(ao / ko)) != 1 {
        return false;
    }
    if g.normality_witness(k, ambient).is_err() {
        return false;
    }
    reps.iter()
        .filter(|&&x| x != g.identity())
        .all(|&x| ambient.members().iter().all(|&y| k.contains(y) || !g.commute(x, y)))
}

fn class_reps_in(g: &PermutationGroup, k: &Subgroup) -> Vec<ElemId> {
    g.conjugacy_classes().iter().map(|c| c[0]).filter(|&x| k.contains(x)).collect()
}

/// Every normal subgroup of `g` satisfying the Frobenius kernel criterion.
pub fn frobenius_kernels(g: &PermutationGroup) -> Vec<Subgroup> {
    let whole = g.whole();
    g.normal_subgroups()
        .iter()
        .filter(|k| kernel_criterion(g, k, &whole, &class_reps_in(g, k)))
        .cloned()
        .collect()
}

/// A subgroup of order `m` meeting `k` trivially, searched over subgroups
/// generated by at most two, then three, elements of order dividing `m`.
fn find_complement(g: &PermutationGroup, k: &Subgroup, m: u64) -> Option<Subgroup> {
    let fits = |h: &Subgroup| h.order() == m && h.members().iter().all(|&x| x == 0 || !k.contains(x));
    let cands: Vec<ElemId> = g.ids().filter(|&x| m % g.element_order(x) == 0 && !k.contains(x)).collect();
    let mut firsts: Vec<ElemId> =
        g.conjugacy_classes().iter().map(|c| c[0]).filter(|x| cands.binary_search(x).is_ok()).collect();
    firsts.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    if m == 1 {
        return Some(g.trivial_subgroup());
    }
    for &x in &firsts {
        let h = g.cyclic(x);
        if fits(&h) {
            return Some(h);
        }
    }
    for &x in &firsts {
        let hx = g.cyclic(x);
        for &y in &cands {
            if hx.contains(y) {
                continue;
            }
            if let Some(h) = g.extend(&hx, &[y], Some(m)) {
                if fits(&h) {
                    return Some(h);
                }
            }
        }
    }
    for &x in &firsts {
        let hx = g.cyclic(x);
        for &y in &cands {
            let Some(hxy) = g.extend(&hx, &[y], Some(m / 2)) else { continue };
            for &z in &cands {
                if let Some(h) = g.extend(&hxy, &[z], Some(m)) {
                    if fits(&h) {
                        return Some(h);
                    }
                }
            }
        }
    }
    None
}

pub fn detect_frobenius(g: &PermutationGroup) -> Option<FrobeniusDecomposition> {
    let kernel = frobenius_kernels(g).into_iter().next()?;
    let m = g.order() / kernel.order();
    let complement = find_complement(g, &kernel, m)?;
    Some(FrobeniusDecomposition { kernel, complement })
}

/// Searches normal pairs `A < AB`, smallest `|A|` first, then smallest `|AB|`.
pub fn detect_2frobenius(g: &PermutationGroup) -> Option<TwoFrobeniusDecomposition> {
    let normals = g.normal_subgroups();
    for a in normals.iter().filter(|a| !a.is_trivial() && a.order() < g.order()) {
        let mut quotient: Option<(PermutationGroup, Vec<usize>)> = None;
        for ab in normals.iter().filter(|ab| ab.order() > a.order() && ab.order() < g.order()) {
            if !a.is_subset_of(ab) || !kernel_criterion(g, a, ab, &class_reps_in(g, a)) {
                continue;
            }
            if quotient.is_none() {
                let q = g.quotient(a).ok()?;
                let qg = q.to_permutation_group().ok()?;
                let to_q: Vec<usize> = (0..g.len() as ElemId)
                    .map(|x| qg.id_of(&q.action(x)).expect("image lies in the quotient") as usize)
                    .collect();
                quotient = Some((qg, to_q));
            }
            let (qg, to_q) = quotient.as_ref().expect("set above");
            let image: Vec<ElemId> = {
                let mut v: Vec<ElemId> = ab.members().iter().map(|&x| to_q[x as usize] as ElemId).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let kq = qg.subgroup_from_members(&image);
            if kernel_criterion(qg, &kq, &qg.whole(), &class_reps_in(qg, &kq)) {
                return Some(TwoFrobeniusDecomposition {
                    a: a.clone(),
                    ab: ab.clone(),
                    b_order: ab.order() / a.order(),
                    c_order: g.order() / ab.order(),
                });
            }
        }
    }
    None
}

fn render(set: &BTreeSet<u64>) -> String {
    let v: Vec<String> = set.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn is_generalized_quaternion(g: &PermutationGroup, p: &Subgroup) -> bool {
    let involutions = p.members().iter().filter(|&&x| g.element_order(x) == 2).count();
    p.order() >= 8 && involutions == 1 && !g.is_cyclic_subgroup(p)
}

/// Structure checks for a Frobenius group. The kernel-Sylow cyclicity
/// statement is reported but not asserted.
pub fn check_frobenius_lemma(g: &PermutationGroup, dec: &FrobeniusDecomposition) -> LemmaReport {
    let mut r = LemmaReport { checks: Vec::new() };
    let k = &dec.kernel;
    let h = &dec.complement;
    let hp = prime_set(&h.order()).unwrap_or_default();
    let kp = prime_set(&k.order()).unwrap_or_default();
    r.push("K nilpotent", g.is_nilpotent_subgroup(k), true, format!("|K| = {}", k.order()));
    let k_abelian = g.is_abelian_subgroup(k);
    r.push(
        "2 | |H| implies K abelian",
        !hp.contains(&2) || k_abelian,
        true,
        format!("|H| = {}, K abelian: {k_abelian}", h.order()),
    );
    let h_solvable = g.is_solvable_subgroup(h);
    let mut bad_odd = BTreeSet::new();
    let mut two_ok = true;
    for &p in &hp {
        let s = g.sylow(h, p);
        let cyclic = g.is_cyclic_subgroup(&s);
        if p == 2 {
            two_ok = cyclic || is_generalized_quaternion(g, &s);
        } else if !cyclic {
            bad_odd.insert(p);
        }
    }
    r.push("odd Sylow subgroups of H cyclic", bad_odd.is_empty(), true, format!("non-cyclic at {}", render(&bad_odd)));
    r.push(
        "Sylow 2-subgroup of H cyclic or generalized quaternion",
        two_ok,
        h_solvable,
        format!("H solvable: {h_solvable}"),
    );
    if !h_solvable {
        let spec = g.subgroup_order_counts(h);
        let no15 = !spec.contains_key(&15);
        r.push(
            "non-solvable H: 120 | |H| and 15 not an element order",
            h.order() % 120 == 0 && no15,
            true,
            format!("|H| = {}, 15 in spectrum: {}", h.order(), !no15),
        );
    }
    let mut bad_kernel = BTreeSet::new();
    for &p in kp.iter().filter(|&&p| p != 2) {
        if !g.is_cyclic_subgroup(&g.sylow(k, p)) {
            bad_kernel.insert(p);
        }
    }
    r.push(
        "odd Sylow subgroups of K cyclic (kernel reading)",
        bad_kernel.is_empty(),
        false,
        format!("non-cyclic at {}", render(&bad_kernel)),
    );
    r
}

/// Structure checks for a 2-Frobenius group.
pub fn check_2frobenius_lemma(g: &PermutationGroup, dec: &TwoFrobeniusDecomposition) -> LemmaReport {
    let mut r = LemmaReport { checks: Vec::new() };
    let graph = build_gk(&spectrum(g)).expect("divisor-closed");
    let pa = prime_set(&dec.a.order()).unwrap_or_default();
    let pb = prime_set(&dec.b_order).unwrap_or_default();
    let pc = prime_set(&dec.c_order).unwrap_or_default();
    r.push("s(G) = 2", graph.s() == 2, true, format!("s = {}", graph.s()));
    let pac: BTreeSet<u64> = pa.union(&pc).copied().collect();
    let pi1 = graph.components.first().cloned().unwrap_or_default();
    let pi2 = graph.components.get(1).cloned().unwrap_or_default();
    r.push("pi_1 = pi(A) u pi(C)", pi1 == pac, true, format!("pi_1 = {}, pi(A) u pi(C) = {}", render(&pi1), render(&pac)));
    r.push("pi_2 = pi(B)", pi2 == pb, true, format!("pi_2 = {}, pi(B) = {}", render(&pi2), render(&pb)));
    r.push("G solvable", g.is_solvable(), true, "");
    r.push("|B| odd", dec.b_order % 2 == 1, true, format!("|B| = {}", dec.b_order));
    let b_cyclic = g.ids().any(|x| g.element_order(x) == dec.b_order);
    r.push("cyclic subgroup of order |B|", b_cyclic, true, "");
    let c_cyclic = g
        .quotient(&dec.ab)
        .map(|q| (0..q.order() as usize).any(|c| q.element_order(c) == dec.c_order))
        .unwrap_or(false);
    r.push("C cyclic", c_cyclic, true, format!("|C| = {}", dec.c_order));
    r
}

/// Largest solvable normal subgroup `M1` and a normal `M2` above it with
/// `M2/M1` nonabelian simple, `M1` and `G/M2` both `pi_1(G)`-groups.
fn sandwich(g: &PermutationGroup) -> Option<(u64, u64)> {
    let graph = build_gk(&spectrum(g)).expect("divisor-closed");
    let pi1 = graph.components.first().cloned().unwrap_or_default();
    let within_pi1 = |n: u64| prime_set(&n).unwrap_or_default().is_subset(&pi1);
    let normals = g.normal_subgroups();
    let m1 = normals.iter().filter(|n| g.is_solvable_subgroup(n)).max_by_key(|n| n.order())?;
    if !within_pi1(m1.order()) {
        return None;
    }
    for m2 in normals.iter().filter(|n| n.order() > m1.order() && m1.is_subset_of(n)) {
        if !within_pi1(g.order() / m2.order()) {
            continue;
        }
        let between = normals
            .iter()
            .any(|n| n.order() > m1.order() && n.order() < m2.order() && m1.is_subset_of(n) && n.is_subset_of(m2));
        if between {
            continue;
        }
        if quotient_is_nonabelian_simple(g, m1, m2) {
            return Some((m1.order(), m2.order()));
        }
    }
    None
}

fn quotient_is_nonabelian_simple(g: &PermutationGroup, m1: &Subgroup, m2: &Subgroup) -> bool {
    let owned;
    let (top, inner): (&PermutationGroup, Subgroup) = if m2.order() == g.order() {
        (g, m1.clone())
    } else {
        owned = g.restrict(m2);
        let ids: Vec<ElemId> = m1.members().iter().map(|&x| owned.id_of(&g.perm(x)).expect("M1 <= M2")).collect();
        let inner = owned.subgroup_from_members(&ids);
        (&owned, inner)
    };
    if inner.is_trivial() {
        return top.normal_subgroups().len() == 2 && !top.is_abelian_subgroup(&top.whole());
    }
    let Ok(q) = top.quotient(&inner) else { return false };
    let Ok(qg) = q.to_permutation_group() else { return false };
    qg.normal_subgroups().len() == 2 && !qg.is_abelian_subgroup(&qg.whole())
}

pub fn trichotomy_flags(g: &PermutationGroup) -> TrichotomyFlags {
    TrichotomyFlags { frobenius: detect_frobenius(g), two_frobenius: detect_2frobenius(g), sandwich: sandwich(g) }
}

/// Classifies a group with disconnected prime graph.
pub fn gk_trichotomy(g: &PermutationGroup) -> Result<Classification, FrobError> {
    if !build_gk(&spectrum(g)).expect("divisor-closed").is_disconnected() {
        return Err(FrobError::Connected);
    }
    Ok(trichotomy_flags(g).classification())
}
