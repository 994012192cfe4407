use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use ordertype::arith::{euler_phi, factorize, is_prime, multiplicative_order, prime_set, zsigmondy};
use ordertype::caseverify::check_pi_lemma;
use ordertype::gkgraph::build_gk;
use ordertype::permgrp::{Permutation, PermutationGroup};
use ordertype::spectra::{order_equation, same_order_type, spectrum};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).expect("shuffle is a bijection"))
}

/// Degree, generators, and one more permutation of the same degree.
fn generators() -> impl Strategy<Value = (usize, Vec<Permutation>, Permutation)> {
    (2usize..=7).prop_flat_map(|d| (Just(d), prop::collection::vec(perm(d), 1..=3), perm(d)))
}

fn small_group() -> impl Strategy<Value = PermutationGroup> {
    generators().prop_map(|(d, gens, _)| PermutationGroup::generate(d, gens).expect("subgroup of S7"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_multiplies_back(n in 1u64..u64::MAX) {
        let f = factorize(&n).unwrap();
        let mut acc = BigUint::from(1u8);
        for (p, e) in f.factors() {
            prop_assert!(is_prime(p));
            acc *= BigUint::from(*p).pow(*e);
        }
        prop_assert_eq!(acc, BigUint::from(n));
    }

    #[test]
    fn semiprime_u128_splits(a in 1u64 << 40..1u64 << 48, b in 1u64 << 40..1u64 << 48) {
        let n = a as u128 * b as u128;
        let f = factorize(&n).unwrap();
        prop_assert_eq!(*f.value(), n);
        let expected: BTreeSet<u128> = prime_set(&a).unwrap().into_iter().chain(prime_set(&b).unwrap()).map(u128::from).collect();
        prop_assert_eq!(f.primes(), expected);
    }

    #[test]
    fn phi_is_multiplicative(a in 1u64..100_000, b in 1u64..100_000) {
        prop_assume!(a.gcd(&b) == 1);
        prop_assert_eq!(euler_phi(&(a * b)).unwrap(), euler_phi(&a).unwrap() * euler_phi(&b).unwrap());
    }

    #[test]
    fn zsigmondy_prime_is_primitive(q in 2u64..200, n in 2u32..14) {
        let qb = BigUint::from(q);
        if let Some(p) = zsigmondy(&qb, n).unwrap() {
            prop_assert_eq!(multiplicative_order(&qb, &p), n as u64);
            prop_assert_eq!(&p % n, BigUint::from(1u8));
        } else {
            prop_assert!((q, n) == (2, 6) || (n == 2 && (q + 1).is_power_of_two()));
        }
    }

    #[test]
    fn pi_lemma_conclusion(m in 1u64..5_000, k in 1u64..5_000) {
        let n = m * k;
        let hypothesis = check_pi_lemma(&m, &n);
        prop_assert_eq!(hypothesis, prime_set(&k).unwrap().is_subset(&prime_set(&m).unwrap()));
    }

    #[test]
    fn permutation_group_laws(a in perm(9), b in perm(9), c in perm(9)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        let lcm = a.cycle_type().iter().fold(1u64, |acc, &l| acc.lcm(&(l as u64)));
        prop_assert_eq!(a.order(), lcm);
    }

    #[test]
    fn order_equation_invariants(g in small_group()) {
        prop_assert_eq!(5040 % g.order(), 0);
        let eq = order_equation(&g);
        prop_assert_eq!(eq.total(), g.order());
        prop_assert_eq!(eq.group_order, g.order());
        let spec = spectrum(&g);
        for &n in &spec {
            prop_assert_eq!(g.order() % n, 0);
            for d in (1..n).filter(|d| n % d == 0) {
                prop_assert!(spec.contains(&d));
            }
        }
        // Frobenius: |G(d)| is a multiple of gcd(d, |G|).
        for d in 1..=g.exponent() {
            prop_assert_eq!(g.count_order_dividing(d) % d.gcd(&g.order()), 0);
        }
    }

    #[test]
    fn prime_graph_partitions_primes(g in small_group()) {
        let graph = build_gk(&spectrum(&g)).unwrap();
        let primes = prime_set(&g.order()).unwrap_or_default();
        let union: BTreeSet<u64> = graph.components.iter().flatten().copied().collect();
        prop_assert_eq!(union, primes.clone());
        let total: usize = graph.components.iter().map(|c| c.len()).sum();
        prop_assert_eq!(total, primes.len());
        if primes.contains(&2) {
            prop_assert!(graph.components[0].contains(&2));
        }
    }

    #[test]
    fn order_type_is_conjugation_invariant((d, gens, x) in generators()) {
        let g = PermutationGroup::generate(d, gens.clone()).unwrap();
        let gens: Vec<Permutation> = gens.iter().map(|p| x.inverse().compose(p).compose(&x)).collect();
        let h = PermutationGroup::generate(d, gens).unwrap();
        prop_assert!(same_order_type(&g, &h));
    }
}
