use hopfop::exact::rat;
use hopfop::operad::laws::{applicable_laws, check_all_operad_laws, check_operad_law, OperadLaw};
use hopfop::operad::lie::word_to_perm;
use hopfop::operad::{
    compose_full, compose_full_forward, compose_partial, lie_dynkin_expand, lie_straighten, parse_element,
    random_permutation, restrict_to_set, Assoc, Com, DynkinBlock, LieInAs, Mag, Operad, Pois,
};
use hopfop::report::CheckConfig;
use hopfop::smod::{act_right, factorial, SModule};
use hopfop::{Lin, Permutation, Rational, RationalMatrix, Subset};
use rand::{Rng as _, SeedableRng};

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn b(v: &[usize]) -> Lin<Permutation> {
    Lin::basis(perm(v))
}

#[test]
fn assoc_compositions() {
    let a = Assoc::new();
    assert_eq!(compose_full(&a, &b(&[2, 1]), &[b(&[1, 2]), b(&[1])]).unwrap(), b(&[2, 3, 1]));
    assert_eq!(compose_partial(&a, &b(&[3, 4, 2, 5, 1]), 2, &b(&[1, 2, 3])).unwrap(), b(&[3, 4, 5, 6, 2, 7, 1]));
    // an arity-0 operand deletes its slot
    assert_eq!(compose_partial(&a, &b(&[2, 1, 3]), 1, &b(&[])).unwrap(), b(&[1, 2]));
    assert!(compose_partial(&a, &b(&[1, 2]), 3, &b(&[1])).is_err());
    assert!(compose_full(&a, &b(&[1, 2]), &[b(&[1])]).is_err());
}

#[test]
fn both_filling_orders_agree() {
    let a = Assoc::new();
    let mut rng = hopfop::Rng::seed_from_u64(7);
    for _ in 0..50 {
        let k = rng.gen_range(0..4);
        let x = Lin::basis(random_permutation(k, &mut rng));
        let ys: Vec<_> = (0..k).map(|_| Lin::basis(random_permutation(rng.gen_range(0..4), &mut rng))).collect();
        assert_eq!(compose_full(&a, &x, &ys).unwrap(), compose_full_forward(&a, &x, &ys).unwrap());
    }
}

#[test]
fn poisson_bracket_into_product() {
    let p = Pois::new();
    let x = parse_element(&p, "{[1,2]}").unwrap();
    let y = parse_element(&p, "{1}{2}").unwrap();
    let want = parse_element(&p, "{[1,2]}{3} + {2}{[1,3]}").unwrap();
    assert_eq!(compose_partial(&p, &x, 2, &y).unwrap(), want);
}

#[test]
fn restriction_examples() {
    let a = Assoc::new();
    let s = Subset::new(8, vec![1, 4, 6, 7]).unwrap();
    assert_eq!(restrict_to_set(&a, &b(&[3, 2, 6, 1, 8, 7, 5, 4]), &s).unwrap(), b(&[2, 1, 4, 3]));

    let m = Mag::new(2);
    let corolla = Lin::basis(m.corolla(2));
    let one = Subset::new(2, vec![1]).unwrap();
    assert_eq!(restrict_to_set(&m, &corolla, &one).unwrap(), Lin::basis(m.unit()));
    assert_eq!(restrict_to_set(&m, &corolla, &Subset::empty(2)).unwrap(), Lin::basis(m.nullary().unwrap()));

    let p = Pois::new();
    let bracket = parse_element(&p, "{[1,2]}").unwrap();
    assert!(restrict_to_set(&p, &bracket, &one).unwrap().is_zero());
    let prod = parse_element(&p, "{[1,3]}{2}").unwrap();
    let keep = Subset::new(3, vec![1, 3]).unwrap();
    assert_eq!(restrict_to_set(&p, &prod, &keep).unwrap(), bracket);
    let cut = Subset::new(3, vec![1, 2]).unwrap();
    assert!(restrict_to_set(&p, &prod, &cut).unwrap().is_zero());

    assert!(restrict_to_set(&Com, &Lin::basis(4), &keep).is_err());
}

/// Expands a left-normed bracket into words by `[u, v] = uv - vu`.
fn words_of(d: &DynkinBlock) -> Lin<Vec<usize>> {
    let mut acc = Lin::basis(vec![d.anchor]);
    for &v in &d.rest {
        let mut next = Lin::zero();
        for (w, c) in &acc {
            let mut right = w.clone();
            right.push(v);
            next.add_term(right, c.clone());
            let mut left = vec![v];
            left.extend(w);
            next.add_term(left, -c.clone());
        }
        acc = next;
    }
    acc
}

/// Position of each variable in the word.
fn perm_of_word(w: &[usize]) -> Permutation {
    let mut s = vec![0; w.len()];
    for (k, &v) in w.iter().enumerate() {
        s[v - 1] = k + 1;
    }
    Permutation::new(s).unwrap()
}

#[test]
fn dynkin_expansion_matches_word_oracle() {
    let lie = LieInAs::new();
    for n in 1..=5 {
        for d in lie.basis(n) {
            let want = words_of(&d).map_keys(|w| perm_of_word(w));
            assert_eq!(lie_dynkin_expand(&d), want, "{d:?}");
        }
    }
    let d = DynkinBlock { anchor: 1, rest: vec![2, 3] };
    let expect: Lin<Permutation> = [
        (perm(&[1, 2, 3]), rat(1)),
        (perm(&[2, 1, 3]), rat(-1)),
        (perm(&[2, 3, 1]), rat(-1)),
        (perm(&[3, 2, 1]), rat(1)),
    ]
    .into_iter()
    .collect();
    assert_eq!(lie_dynkin_expand(&d), expect);
    assert_eq!(word_to_perm(&[3, 1, 2]), perm(&[2, 3, 1]));
}

/// Columns are the expansions of the anchored basis in `As(n)` coordinates.
fn dynkin_matrix(n: usize) -> (Vec<Permutation>, Vec<DynkinBlock>, RationalMatrix) {
    let rows = Assoc::new().basis(n);
    let cols = LieInAs::new().basis(n);
    let mut m = RationalMatrix::zeros(rows.len(), cols.len());
    for (j, d) in cols.iter().enumerate() {
        for (p, c) in &lie_dynkin_expand(d) {
            let i = rows.iter().position(|r| r == p).unwrap();
            m.set(i, j, c.clone());
        }
    }
    (rows, cols, m)
}

fn dense(rows: &[Permutation], x: &Lin<Permutation>) -> Vec<Rational> {
    rows.iter().map(|r| x.coeff(r)).collect()
}

#[test]
fn straightening_matches_linear_solve() {
    let a = Assoc::new();
    let mut rng = hopfop::Rng::seed_from_u64(11);
    for n in 1..=4 {
        let (rows, cols, m) = dynkin_matrix(n);
        for _ in 0..20 {
            // acting on a Lie element keeps it Lie
            let mut x = Lin::zero();
            for d in &cols {
                let c = rat(rng.gen_range(-3..=3));
                let sigma = random_permutation(n, &mut rng);
                x.add_scaled(&act_right(&a, &lie_dynkin_expand(d), &sigma).unwrap(), &c);
            }
            let solved = m.solve(&dense(&rows, &x)).unwrap().expect("a Lie element");
            let want: Lin<DynkinBlock> = cols.iter().cloned().zip(solved).collect();
            assert_eq!(lie_straighten(&x), Some(want));

            if n >= 2 {
                let y = &x + &b(&(1..=n).collect::<Vec<_>>());
                assert!(m.solve(&dense(&rows, &y)).unwrap().is_none());
                assert_eq!(lie_straighten(&y), None);
            }
        }
    }
}

#[test]
fn jacobi_identity() {
    let lie = LieInAs::new();
    let j = parse_element(&lie, "{[[1,2],3]} + {[[2,3],1]} + {[[3,1],2]}").unwrap();
    assert!(j.is_zero());
    let x = parse_element(&lie, "{[1,2]}").unwrap();
    let y = compose_partial(&lie, &x, 1, &x).unwrap();
    let z = act_right(&lie, &y, &perm(&[2, 3, 1])).unwrap();
    let w = act_right(&lie, &y, &perm(&[3, 1, 2])).unwrap();
    assert!((&(&y + &z) + &w).is_zero());
}

#[test]
fn lie_compositions_stay_lie_in_as() {
    let a = Assoc::new();
    let lie = LieInAs::new();
    for k in 1..=3 {
        for l in 1..=3 {
            for x in lie.basis(k) {
                for y in lie.basis(l) {
                    for i in 1..=k {
                        let direct = compose_partial(&a, &lie_dynkin_expand(&x), i, &lie_dynkin_expand(&y)).unwrap();
                        let via = compose_partial(&lie, &Lin::basis(x.clone()), i, &Lin::basis(y.clone())).unwrap();
                        assert!(lie_straighten(&direct).is_some());
                        assert_eq!(via.flat_map(lie_dynkin_expand), direct);
                    }
                }
            }
        }
    }
}

#[test]
fn basis_counts() {
    let p = Pois::new();
    for n in 0..=7 {
        assert_eq!(p.basis(n).len(), factorial(n), "pois n = {n}");
        assert_eq!(Assoc::new().basis(n).len(), factorial(n));
    }
    let lie = LieInAs::new();
    assert!(lie.basis(0).is_empty());
    for n in 1..=6 {
        assert_eq!(lie.basis(n).len(), factorial(n - 1));
    }
    for n in 0..=5 {
        assert_eq!(Com.basis(n).len(), 1);
    }
}

fn all_pass<P: Operad>(p: &P, n: usize) {
    let cfg = CheckConfig::new(n, 3).with_samples(30);
    let reports = check_all_operad_laws(p, &cfg);
    assert_eq!(reports.len(), applicable_laws(p).len());
    for r in reports {
        assert!(r.status.is_pass(), "{} {}: {:?}", r.operad, r.law, r.counterexamples);
        assert!(r.checked > 0, "{} {} checked nothing", r.operad, r.law);
    }
}

#[test]
fn law_suites_pass() {
    all_pass(&Assoc::new(), 4);
    all_pass(&Com, 4);
    all_pass(&Mag::new(3), 4);
    all_pass(&Pois::new(), 4);
    all_pass(&LieInAs::new(), 4);
}

#[test]
fn lie_is_checked_on_composition_laws_only() {
    let lie = LieInAs::new();
    assert_eq!(applicable_laws(&lie), vec![OperadLaw::Assoc1, OperadLaw::Assoc2, OperadLaw::Unit, OperadLaw::Equivariance]);
    assert!(check_operad_law(&lie, OperadLaw::Deg1, &CheckConfig::new(3, 0)).is_err());
    assert!("assoc3".parse::<OperadLaw>().is_err());
    assert_eq!("deg2".parse::<OperadLaw>().unwrap(), OperadLaw::Deg2);
}

#[test]
fn tampered_assoc_fails_with_bounded_counterexamples() {
    let cfg = CheckConfig::new(4, 0);
    let reports = check_all_operad_laws(&Assoc::tampered(), &cfg);
    let failed: Vec<_> = reports.iter().filter(|r| !r.status.is_pass()).collect();
    assert!(!failed.is_empty());
    for r in failed {
        assert!(!r.counterexamples.is_empty() && r.counterexamples.len() <= 5, "{}", r.law);
        let c = &r.counterexamples[0];
        assert_ne!(c.lhs, c.rhs);
    }
}

#[test]
fn reports_depend_only_on_the_seed() {
    let p = Mag::new(3);
    let cfg = CheckConfig::new(5, 42).with_samples(40);
    assert_eq!(check_all_operad_laws(&p, &cfg), check_all_operad_laws(&p, &cfg));
    let tampered = Assoc::tampered();
    assert_eq!(check_all_operad_laws(&tampered, &cfg), check_all_operad_laws(&tampered, &cfg));
}
