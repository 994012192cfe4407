use std::collections::{BTreeMap, HashSet};

use crate::arith::{factorize, r_part};

use super::group::{ElemId, PermutationGroup};
use super::PermError;

/// A subgroup of an enumerated group, stored as a membership bitset over the
/// parent's element ids together with a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    bits: Vec<u64>,
    members: Vec<ElemId>,
    gens: Vec<ElemId>,
}

impl Subgroup {
    fn empty_bits(n: usize) -> Vec<u64> {
        vec![0; n.div_ceil(64)]
    }

    pub fn order(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.bits[x as usize / 64] >> (x % 64) & 1 == 1
    }

    /// Members in ascending id order.
    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn gens(&self) -> &[ElemId] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    fn set(&mut self, x: ElemId) -> bool {
        let w = &mut self.bits[x as usize / 64];
        let m = 1u64 << (x % 64);
        if *w & m != 0 {
            return false;
        }
        *w |= m;
        self.members.push(x);
        true
    }

    fn finish(mut self) -> Self {
        self.members.sort_unstable();
        self
    }
}

impl PermutationGroup {
    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut h = Subgroup { bits: Subgroup::empty_bits(self.len()), members: Vec::new(), gens: Vec::new() };
        h.set(0);
        h
    }

    pub fn whole(&self) -> Subgroup {
        let n = self.len();
        let mut bits = Subgroup::empty_bits(n);
        for x in 0..n {
            bits[x / 64] |= 1 << (x % 64);
        }
        Subgroup { bits, members: (0..n as ElemId).collect(), gens: self.generator_ids().to_vec() }
    }

    /// Subgroup with exactly the given members, which must form a subgroup.
    pub fn subgroup_from_members(&self, members: &[ElemId]) -> Subgroup {
        let mut h = self.trivial_subgroup();
        for &x in members {
            if h.set(x) {
                h.gens.push(x);
            }
        }
        let h = h.finish();
        self.prune_gens(h)
    }

    fn prune_gens(&self, h: Subgroup) -> Subgroup {
        let mut g = self.trivial_subgroup();
        for &x in &h.gens {
            if !g.contains(x) {
                g = self.extend(&g, &[x], None).expect("no limit");
            }
            if g.order() == h.order() {
                break;
            }
        }
        Subgroup { gens: g.gens, ..h }
    }

    /// `<h, new_gens>`. Returns `None` once the order would exceed `limit`.
    pub fn extend(&self, h: &Subgroup, new_gens: &[ElemId], limit: Option<u64>) -> Option<Subgroup> {
        let total = self.order();
        let mut out = h.clone();
        for &g in new_gens {
            if out.contains(g) {
                continue;
            }
            out.gens.push(g);
            let old = out.members.len();
            let mut queue: Vec<ElemId> = Vec::new();
            for i in 0..old {
                let y = self.mul(out.members[i], g);
                if out.set(y) {
                    queue.push(y);
                }
            }
            let mut i = 0;
            while i < queue.len() {
                let x = queue[i];
                for k in 0..out.gens.len() {
                    let y = self.mul(x, out.gens[k]);
                    if out.set(y) {
                        queue.push(y);
                    }
                }
                if let Some(l) = limit {
                    if out.members.len() as u64 > l {
                        return None;
                    }
                }
                if 2 * out.members.len() as u64 > total {
                    let whole = self.whole();
                    if limit.is_some_and(|l| total > l) {
                        return None;
                    }
                    return Some(Subgroup { gens: out.gens, ..whole });
                }
                i += 1;
            }
        }
        Some(out.finish())
    }

    pub fn subgroup(&self, gens: &[ElemId]) -> Subgroup {
        self.extend(&self.trivial_subgroup(), gens, None).expect("no limit")
    }

    /// Cyclic subgroup `<x>`.
    pub fn cyclic(&self, x: ElemId) -> Subgroup {
        self.subgroup(&[x])
    }

    /// Smallest subgroup containing `xs` and normalized by `ambient`.
    pub fn normal_closure_in(&self, xs: &[ElemId], ambient: &Subgroup) -> Subgroup {
        let mut h = self.subgroup(xs);
        loop {
            let mut grown = false;
            let gens = h.gens.clone();
            for &g in &gens {
                for &s in ambient.gens() {
                    let c = self.conj(g, s);
                    if !h.contains(c) {
                        h = self.extend(&h, &[c], None).expect("no limit");
                        grown = true;
                    }
                }
            }
            if !grown {
                return h;
            }
        }
    }

    pub fn normal_closure(&self, xs: &[ElemId]) -> Subgroup {
        self.normal_closure_in(xs, &self.whole())
    }

    /// `Ok` when `h` is normalized by `ambient`; otherwise a pair `(g, n)` with
    /// `g^-1 n g` outside `h`.
    pub fn normality_witness(&self, h: &Subgroup, ambient: &Subgroup) -> Result<(), (ElemId, ElemId)> {
        for &n in h.gens() {
            for &g in ambient.gens() {
                if !h.contains(self.conj(n, g)) {
                    return Err((g, n));
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normality_witness(h, &self.whole()).is_ok()
    }

    /// `{x in G : x g = g x}`.
    pub fn centralizer(&self, g: ElemId) -> Subgroup {
        let members: Vec<ElemId> = self.ids().filter(|&x| self.commute(x, g)).collect();
        self.subgroup_from_members(&members)
    }

    /// Centralizer of a permutation, rejected when it lies outside the group.
    pub fn centralizer_of(&self, g: &super::Permutation) -> Result<Subgroup, PermError> {
        let id = self.id_of(g).ok_or_else(|| PermError::NotMember(g.to_string()))?;
        Ok(self.centralizer(id))
    }

    /// `{x in G : x^-1 h x = h}`.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<ElemId> =
            self.ids().filter(|&x| h.gens().iter().all(|&n| h.contains(self.conj(n, x)))).collect();
        self.subgroup_from_members(&members)
    }

    /// All normal subgroups, as joins of normal closures of conjugacy classes,
    /// sorted by order and then by members.
    pub fn normal_subgroups(&self) -> &[Subgroup] {
        self.normals_cell().get_or_init(|| {
            let mut seen: HashSet<Vec<u64>> = HashSet::new();
            let mut all = vec![self.trivial_subgroup()];
            seen.insert(all[0].bits.clone());
            let mut base: Vec<Subgroup> = Vec::new();
            for class in self.conjugacy_classes().iter().skip(1) {
                let n = self.normal_closure(&[class[0]]);
                if seen.insert(n.bits.clone()) {
                    base.push(n.clone());
                    all.push(n);
                }
            }
            let mut frontier = base.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for n in &frontier {
                    for b in &base {
                        if b.is_subset_of(n) || n.is_subset_of(b) {
                            continue;
                        }
                        let j = self.extend(n, b.gens(), None).expect("no limit");
                        if seen.insert(j.bits.clone()) {
                            next.push(j.clone());
                            all.push(j);
                        }
                    }
                }
                frontier = next;
            }
            all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
            all
        })
    }

    /// Commutator subgroup of `h`.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut comms = Vec::new();
        let g = h.gens();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                comms.push(self.commutator(g[i], g[j]));
            }
        }
        self.normal_closure_in(&comms, h)
    }

    /// `h, h', h'', ..` down to the first repeated term.
    pub fn derived_series(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let d = self.derived_subgroup(last);
            if d.order() == last.order() {
                return series;
            }
            series.push(d);
        }
    }

    pub fn is_solvable_subgroup(&self, h: &Subgroup) -> bool {
        self.derived_series(h).last().expect("nonempty").is_trivial()
    }

    pub fn is_solvable(&self) -> bool {
        self.is_solvable_subgroup(&self.whole())
    }

    /// All Sylow subgroups normal, tested by counting p-power elements.
    pub fn is_nilpotent_subgroup(&self, h: &Subgroup) -> bool {
        let order = h.order();
        let f = factorize(&order).expect("order positive");
        f.primes().into_iter().all(|p| {
            let count = h.members().iter().filter(|&&x| is_power_of(self.element_order(x), p)).count() as u64;
            count == r_part(&order, &p).expect("prime")
        })
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_nilpotent_subgroup(&self.whole())
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let g = h.gens();
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| self.commute(g[i], g[j])))
    }

    pub fn is_cyclic_subgroup(&self, h: &Subgroup) -> bool {
        h.members().iter().any(|&x| self.element_order(x) == h.order())
    }

    /// Element-order counts within `h`.
    pub fn subgroup_order_counts(&self, h: &Subgroup) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for &x in h.members() {
            *m.entry(self.element_order(x)).or_insert(0) += 1;
        }
        m
    }

    /// A Sylow `p`-subgroup of `h`, grown one normalizing `p`-element at a time.
    pub fn sylow(&self, h: &Subgroup, p: u64) -> Subgroup {
        let target = r_part(&h.order(), &p).expect("p prime");
        let mut s = self.trivial_subgroup();
        while s.order() < target {
            let next = h
                .members()
                .iter()
                .filter(|&&x| !s.contains(x) && is_power_of(self.element_order(x), p))
                .filter(|&&x| s.gens().iter().all(|&n| s.contains(self.conj(n, x))))
                .find_map(|&x| self.extend(&s, &[x], Some(target)).filter(|t| is_power_of(t.order(), p)))
                .expect("a normalizing p-element exists below a Sylow subgroup");
            s = next;
        }
        s
    }
}

pub(crate) fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::super::Permutation;
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermutationGroup {
        let gens = gens.iter().map(|g| Permutation::parse_cycles(degree, g).unwrap()).collect();
        PermutationGroup::generate(degree, gens).unwrap()
    }

    fn orders(v: &[Subgroup]) -> Vec<u64> {
        v.iter().map(|h| h.order()).collect()
    }

    #[test]
    fn normal_subgroup_examples() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        assert_eq!(orders(s4.normal_subgroups()), vec![1, 4, 12, 24]);
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(orders(a5.normal_subgroups()), vec![1, 60]);
        let z6 = group(6, &["(1 2 3 4 5 6)"]);
        assert_eq!(orders(z6.normal_subgroups()), vec![1, 2, 3, 6]);
    }

    #[test]
    fn centralizer_examples() {
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        assert_eq!(s3.centralizer(0).order(), 6);
        let t = Permutation::parse_cycles(3, "(1 2)").unwrap();
        assert_eq!(s3.centralizer_of(&t).unwrap().order(), 2);
        let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
        let v = Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap();
        assert_eq!(a4.centralizer_of(&v).unwrap().order(), 4);
        let odd = Permutation::parse_cycles(4, "(1 2)").unwrap();
        assert!(matches!(a4.centralizer_of(&odd), Err(PermError::NotMember(_))));
    }

    #[test]
    fn solvability_and_nilpotency() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let series: Vec<u64> = s4.derived_series(&s4.whole()).iter().map(|h| h.order()).collect();
        assert_eq!(series, vec![24, 12, 4, 1]);
        assert!(s4.is_solvable());
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(!a5.is_solvable());
        assert_eq!(a5.derived_subgroup(&a5.whole()).order(), 60);
        let d8 = group(4, &["(1 2 3 4)", "(1 3)"]);
        assert!(d8.is_nilpotent());
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        assert!(!s3.is_nilpotent());
        assert!(group(6, &["(1 2 3 4 5 6)"]).is_nilpotent());
    }

    #[test]
    fn sylow_and_normalizer() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let p2 = s4.sylow(&s4.whole(), 2);
        assert_eq!(p2.order(), 8);
        assert_eq!(s4.normalizer(&p2).order(), 8);
        let p3 = s4.sylow(&s4.whole(), 3);
        assert_eq!(s4.normalizer(&p3).order(), 6);
    }

    #[test]
    fn normality_witness_escapes() {
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        let t = s3.id_of(&Permutation::parse_cycles(3, "(1 2)").unwrap()).unwrap();
        let h = s3.cyclic(t);
        let (g, n) = s3.normality_witness(&h, &s3.whole()).unwrap_err();
        assert!(h.contains(n));
        assert!(!h.contains(s3.conj(n, g)));
    }
}
