use std::collections::BTreeSet;

use hopfop::exact::rat;
use hopfop::operad::{Assoc, Com, LieInAs, Mag, Operad, Pois};
use hopfop::perm::{all_permutations, enumerate_shuffles, Permutation};
use hopfop::smod::{
    act_right, binomial, factorial, format_hat, hat_act, hat_basis, hat_canonicalize, hat_degeneracy, hat_dimension,
    plethysm_basis, tau_swap, HatTensor, HatTerm, SModule,
};
use hopfop::Lin;
use proptest::prelude::*;

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn term<L: Clone + Ord>(x: &L, y: &L, a: &Permutation) -> HatTensor<L> {
    Lin::basis(HatTerm { factors: vec![x.clone(), y.clone()], shuffle: a.clone() })
}

#[test]
fn canonicalize_examples() {
    let a = Assoc::new();
    let x = perm(&[2, 1]);
    let y = perm(&[1]);
    assert_eq!(hat_canonicalize(&a, &[x.clone(), y.clone()], &Permutation::identity(3)), term(&x, &y, &Permutation::identity(3)));
    let one = a.unit();
    assert_eq!(hat_canonicalize(&a, &[one.clone(), one.clone()], &perm(&[2, 1])), term(&one, &one, &perm(&[2, 1])));

    // brute-force oracle: the unique (s1, s2, shuffle) with (s1 + s2) . shuffle = pi
    let pi = perm(&[3, 1, 2]);
    let x = perm(&[1, 2]);
    let mut found = Vec::new();
    for s1 in all_permutations(2) {
        for alpha in enumerate_shuffles(2, 1) {
            if s1.direct_sum(&perm(&[1])).multiply(&alpha).unwrap() == pi {
                found.push((s1.clone(), alpha));
            }
        }
    }
    assert_eq!(found.len(), 1);
    let (s1, alpha) = &found[0];
    let want = term(&x.multiply(s1).unwrap(), &perm(&[1]), alpha);
    assert_eq!(hat_canonicalize(&a, &[x, perm(&[1])], &pi), want);
}

#[test]
fn canonical_terms_are_fixed() {
    let a = Assoc::new();
    for n in 0..=4 {
        for t in hat_basis(&a, n) {
            assert_eq!(hat_canonicalize(&a, &t.factors, &t.shuffle), Lin::basis(t.clone()));
        }
    }
}

#[test]
fn hat_dimension_matches_distinct_canonical_terms() {
    let a = Assoc::new();
    for n in 0..=5 {
        let formula: usize = (0..=n).map(|p| factorial(p) * factorial(n - p) * binomial(n, p)).sum();
        assert_eq!(hat_dimension(&a, n), formula);
        assert_eq!(hat_basis(&a, n).len(), formula);
        if n <= 4 {
            // every raw (x, y, pi) lands on one canonical term; together they cover the basis
            let mut seen = BTreeSet::new();
            for p in 0..=n {
                for x in a.basis(p) {
                    for y in a.basis(n - p) {
                        for pi in all_permutations(n) {
                            let t = hat_canonicalize(&a, &[x.clone(), y.clone()], &pi);
                            assert_eq!(t.len(), 1);
                            seen.extend(t.keys().cloned());
                        }
                    }
                }
            }
            assert_eq!(seen.len(), formula, "n = {n}");
        }
    }
}

#[test]
fn degeneracy_examples() {
    let a = Assoc::new();
    let x = perm(&[2, 1]);
    let y = perm(&[1]);
    let t = term(&x, &y, &Permutation::identity(3));
    let empty = Permutation::identity(0);
    assert_eq!(hat_degeneracy(&a, &t, 3).unwrap(), term(&x, &empty, &Permutation::identity(2)));
    assert_eq!(hat_degeneracy(&a, &t, 1).unwrap(), term(&perm(&[1]), &y, &Permutation::identity(2)));
    assert!(hat_degeneracy(&a, &t, 4).is_err());
}

#[test]
fn tau_examples() {
    let a = Assoc::new();
    let one = a.unit();
    let zero = a.nullary().unwrap();
    assert_eq!(tau_swap(&a, &term(&one, &zero, &Permutation::identity(1))).unwrap(), term(&zero, &one, &Permutation::identity(1)));
    assert_eq!(tau_swap(&a, &term(&one, &one, &Permutation::identity(2))).unwrap(), term(&one, &one, &perm(&[2, 1])));
}

#[test]
fn tau_is_an_involution_in_degree_four() {
    let a = Assoc::new();
    for t in hat_basis(&a, 4) {
        let x = Lin::basis(t);
        assert_eq!(tau_swap(&a, &tau_swap(&a, &x).unwrap()).unwrap(), x);
    }
    let p = Pois::new();
    for t in hat_basis(&p, 3) {
        let x = Lin::basis(t);
        assert_eq!(tau_swap(&p, &tau_swap(&p, &x).unwrap()).unwrap(), x);
    }
}

fn degeneracy_commutes_with_tau<M: hopfop::smod::IModule>(m: &M, n_max: usize) {
    for n in 1..=n_max {
        for t in hat_basis(m, n) {
            let x = Lin::basis(t);
            for i in 1..=n {
                let lhs = hat_degeneracy(m, &tau_swap(m, &x).unwrap(), i).unwrap();
                let rhs = tau_swap(m, &hat_degeneracy(m, &x, i).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{} at i = {i}", format_hat(m, &x));
            }
        }
    }
}

#[test]
fn degeneracies_commute_with_tau() {
    degeneracy_commutes_with_tau(&Assoc::new(), 4);
    degeneracy_commutes_with_tau(&Pois::new(), 4);
    degeneracy_commutes_with_tau(&Mag::new(2), 3);
}

#[test]
fn action_examples() {
    let a = Assoc::new();
    let x = Lin::basis(perm(&[1, 2]));
    assert_eq!(act_right(&a, &x, &perm(&[2, 1])).unwrap(), Lin::basis(perm(&[2, 1])));
    assert_eq!(act_right(&a, &x, &Permutation::identity(2)).unwrap(), x);
    assert!(act_right(&a, &x, &Permutation::identity(3)).is_err());
    let lie = LieInAs::new();
    let b = hopfop::operad::parse_element(&lie, "{[1,2]}").unwrap();
    assert_eq!(act_right(&lie, &b, &perm(&[2, 1])).unwrap(), b.scale(&rat(-1)));
}

#[test]
fn poisson_count_by_partitions() {
    let lie = LieInAs::new();
    let labels = plethysm_basis(&Com, &lie, 3).unwrap();
    assert_eq!(labels.len(), 6);
    let whole = labels.iter().filter(|l| l.blocks.len() == 1).count();
    let pairs = labels.iter().filter(|l| l.blocks.len() == 2).count();
    let singles = labels.iter().filter(|l| l.blocks.len() == 3).count();
    assert_eq!((whole, pairs, singles), (2, 3, 1));
    for n in 0..=7 {
        assert_eq!(plethysm_basis(&Com, &lie, n).unwrap().len(), factorial(n), "n = {n}");
    }
    assert!(plethysm_basis(&Com, &Assoc::new(), 2).is_err());
}

#[test]
fn plethysm_with_identity_recovers_the_operad() {
    let a = Assoc::new();
    for n in 1..=4 {
        let labels = plethysm_basis(&a, &hopfop::smod::IdentityModule, n).unwrap();
        assert_eq!(labels.len(), factorial(n));
        assert!(labels.iter().all(|l| l.blocks.iter().all(|b| b.len() == 1)));
    }
}

fn arb_perm_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn arb_hat_term(n: usize) -> impl Strategy<Value = HatTerm<Permutation>> {
    (0..=n).prop_flat_map(move |p| (arb_perm_of(p), arb_perm_of(n - p), arb_perm_of(n))).prop_map(|(x, y, pi)| {
        let t = hat_canonicalize(&Assoc::new(), &[x, y], &pi);
        t.keys().next().unwrap().clone()
    })
}

proptest! {
    #[test]
    fn hat_action_is_a_right_action(t in arb_hat_term(4), s in arb_perm_of(4), r in arb_perm_of(4)) {
        let a = Assoc::new();
        let x = Lin::basis(t);
        let stepwise = hat_act(&a, &hat_act(&a, &x, &s).unwrap(), &r).unwrap();
        let at_once = hat_act(&a, &x, &s.multiply(&r).unwrap()).unwrap();
        prop_assert_eq!(stepwise, at_once);
    }

    #[test]
    fn operad_actions_are_right_actions(s in arb_perm_of(4), r in arb_perm_of(4), k in 0usize..24) {
        let sr = s.multiply(&r).unwrap();
        let p = Pois::new();
        let x = Lin::basis(p.basis(4)[k].clone());
        prop_assert_eq!(act_right(&p, &act_right(&p, &x, &s).unwrap(), &r).unwrap(), act_right(&p, &x, &sr).unwrap());
        let m = Mag::new(3);
        let b = m.basis(4);
        let y = Lin::basis(b[k % b.len()].clone());
        prop_assert_eq!(act_right(&m, &act_right(&m, &y, &s).unwrap(), &r).unwrap(), act_right(&m, &y, &sr).unwrap());
        let lie = LieInAs::new();
        let lb = lie.basis(4);
        let z = Lin::basis(lb[k % lb.len()].clone());
        prop_assert_eq!(act_right(&lie, &act_right(&lie, &z, &s).unwrap(), &r).unwrap(), act_right(&lie, &z, &sr).unwrap());
    }
}
