use std::collections::BTreeMap;

use super::group::{ElemId, PermutationGroup};
use super::perm::Permutation;
use super::subgroup::Subgroup;
use super::PermError;

/// `G/N` with cosets keyed by their lexicographically least member.
#[derive(Clone, Debug)]
pub struct QuotientGroup<'g> {
    parent: &'g PermutationGroup,
    normal: Subgroup,
    coset_of: Vec<u32>,
    reps: Vec<ElemId>,
}

impl PermutationGroup {
    /// Quotient by a normal subgroup; a non-normal subgroup is rejected with
    /// a conjugation witness.
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup<'_>, PermError> {
        if let Err((g, x)) = self.normality_witness(n, &self.whole()) {
            return Err(PermError::NotNormal { g: self.perm(g).to_string(), n: self.perm(x).to_string() });
        }
        let mut coset_of = vec![u32::MAX; self.len()];
        let mut cosets: Vec<Vec<ElemId>> = Vec::new();
        for x in self.ids() {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = cosets.len() as u32;
            let members: Vec<ElemId> = n.members().iter().map(|&k| self.mul(x, k)).collect();
            for &y in &members {
                coset_of[y as usize] = c;
            }
            cosets.push(members);
        }
        let reps: Vec<ElemId> = cosets
            .iter()
            .map(|c| *c.iter().min_by(|&&a, &&b| self.images(a).cmp(self.images(b))).expect("nonempty coset"))
            .collect();
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by(|&a, &b| self.images(reps[a]).cmp(self.images(reps[b])));
        let mut renumber = vec![0u32; reps.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new as u32;
        }
        let reps = order.iter().map(|&i| reps[i]).collect();
        let coset_of = coset_of.into_iter().map(|c| renumber[c as usize]).collect();
        Ok(QuotientGroup { parent: self, normal: n.clone(), coset_of, reps })
    }
}

impl<'g> QuotientGroup<'g> {
    pub fn parent(&self) -> &'g PermutationGroup {
        self.parent
    }

    pub fn normal_subgroup(&self) -> &Subgroup {
        &self.normal
    }

    pub fn order(&self) -> u64 {
        self.reps.len() as u64
    }

    /// Coset index of `x`; the identity coset is 0.
    pub fn coset(&self, x: ElemId) -> usize {
        self.coset_of[x as usize] as usize
    }

    /// Canonical representative of coset `c`.
    pub fn representative(&self, c: usize) -> ElemId {
        self.reps[c]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.coset(self.parent.mul(self.reps[a], self.reps[b]))
    }

    /// Order of the coset `c`: least `k` with `rep^k` in `N`.
    pub fn element_order(&self, c: usize) -> u64 {
        let r = self.reps[c];
        let mut x = r;
        let mut k = 1;
        while !self.normal.contains(x) {
            x = self.parent.mul(x, r);
            k += 1;
        }
        k
    }

    pub fn order_counts(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for c in 0..self.reps.len() {
            *m.entry(self.element_order(c)).or_insert(0) += 1;
        }
        m
    }

    /// Right-multiplication action of `x` on the cosets.
    pub fn action(&self, x: ElemId) -> Permutation {
        let images = (0..self.reps.len()).map(|c| self.coset(self.parent.mul(self.reps[c], x))).collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }

    /// The quotient as a permutation group on its cosets.
    pub fn to_permutation_group(&self) -> Result<PermutationGroup, PermError> {
        let gens = self.parent.generator_ids().iter().map(|&g| self.action(g)).collect();
        PermutationGroup::generate_capped(self.reps.len(), gens, self.parent.size_cap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermutationGroup {
        let gens = gens.iter().map(|g| Permutation::parse_cycles(degree, g).unwrap()).collect();
        PermutationGroup::generate(degree, gens).unwrap()
    }

    #[test]
    fn s4_mod_v4() {
        let s4 = group(4, &["(1 2 3 4)", "(1 2)"]);
        let v4 = s4.normal_subgroups()[1].clone();
        let q = s4.quotient(&v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.order_counts(), BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
        let qp = q.to_permutation_group().unwrap();
        assert_eq!(qp.order(), 6);
        assert_eq!(q.coset(0), 0);
        for a in 0..6 {
            for b in 0..6 {
                let x = q.representative(a);
                let y = q.representative(b);
                for &k in v4.members() {
                    assert_eq!(q.coset(s4.mul(s4.mul(x, k), y)), q.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn a4_mod_v4_and_trivial() {
        let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
        let v4 = a4.normal_subgroups()[1].clone();
        let q = a4.quotient(&v4).unwrap();
        assert_eq!(q.order_counts(), BTreeMap::from([(1, 1), (3, 2)]));
        let t = a4.quotient(&a4.trivial_subgroup()).unwrap();
        assert_eq!(t.order_counts(), a4.order_counts());
    }

    #[test]
    fn non_normal_rejected() {
        let s3 = group(3, &["(1 2 3)", "(1 2)"]);
        let t = s3.id_of(&Permutation::parse_cycles(3, "(1 2)").unwrap()).unwrap();
        let err = s3.quotient(&s3.cyclic(t)).unwrap_err();
        assert!(matches!(err, PermError::NotNormal { .. }));
    }
}
