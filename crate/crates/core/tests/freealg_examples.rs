use std::collections::BTreeMap;

use hopfop::freealg::{
    check_free_coassoc, check_free_counit, free_basis, free_big_delta_basis, free_counits, free_is_primitive,
    free_primitive_dimensions, free_primitive_space, plethysm_dimension, FreeAlgebra, Generators,
};
use hopfop::hopf::{big_delta, primitive_space};
use hopfop::operad::{Assoc, Com, Pois};
use hopfop::report::CheckConfig;
use hopfop::smod::{act_right, factorial, HatTerm, SModule};
use hopfop::{Error, Lin, Permutation};

fn gens(pairs: &[(usize, &[&str])]) -> Generators {
    let names: BTreeMap<usize, Vec<String>> =
        pairs.iter().map(|(a, ns)| (*a, ns.iter().map(|s| s.to_string()).collect())).collect();
    Generators::new(names).unwrap()
}

/// Involutions of `[n]`: set partitions into blocks of size at most 2.
fn involutions(n: usize) -> usize {
    let mut a = vec![1usize, 1];
    for k in 2..=n {
        a.push(a[k - 1] + (k - 1) * a[k - 2]);
    }
    a[n]
}

#[test]
fn basis_counts() {
    let a = Assoc::new();
    let one = Generators::from_dims(&[(1, 1)]).unwrap();
    let two = Generators::from_dims(&[(1, 2)]).unwrap();
    let mixed = Generators::from_dims(&[(1, 1), (2, 1)]).unwrap();
    for n in 0..=5 {
        assert_eq!(free_basis(&a, &one, n).unwrap().len(), factorial(n));
        assert_eq!(free_basis(&a, &two, n).unwrap().len(), factorial(n) << n);
        assert_eq!(free_basis(&Com, &mixed, n).unwrap().len(), involutions(n), "n = {n}");
        let as_dims: Vec<usize> = (0..=n).map(factorial).collect();
        assert_eq!(plethysm_dimension(&as_dims, &mixed, n), free_basis(&a, &mixed, n).unwrap().len());
    }
}

#[test]
fn generator_validation() {
    assert!(Generators::new(BTreeMap::from([(1, vec!["a".to_string()]), (2, vec!["a".to_string()])])).is_err());
    assert!(Generators::new(BTreeMap::from([(1, vec!["a b".to_string()])])).is_err());
    let g = Generators::from_dims(&[(2, 1), (1, 2)]).unwrap();
    assert_eq!(g.describe(), "1:2,2:1");
    assert_eq!(g.lookup("c"), Some((2, 0)));
    let with_constant = Generators::from_dims(&[(0, 1), (1, 1)]).unwrap();
    assert!(matches!(FreeAlgebra::new(Assoc::new(), with_constant), Err(Error::Unsupported(_))));
}

#[test]
fn generators_are_primitive() {
    let fa = FreeAlgebra::new(Assoc::new(), gens(&[(1, &["x"]), (2, &["y"])])).unwrap();
    let y = fa.parse_label("[1] @ {12:y}").unwrap();
    assert!(free_is_primitive(&fa, &y).unwrap());
    let x = fa.parse_label("[1] @ {1:x}").unwrap();
    assert!(free_is_primitive(&fa, &x).unwrap());
    let xy = fa.parse_label("[1,2] @ {1:x, 23:y}").unwrap();
    assert!(!free_is_primitive(&fa, &xy).unwrap());
    let commutator = &xy - &fa.parse_label("[2,1] @ {1:x, 23:y}").unwrap();
    assert!(free_is_primitive(&fa, &commutator).unwrap());
}

#[test]
fn identity_generators_recover_the_operad() {
    let a = Assoc::new();
    let fa = FreeAlgebra::new(a, Generators::identity()).unwrap();
    for n in 0..=4 {
        for l in fa.basis(n) {
            assert!(l.blocks.iter().enumerate().all(|(i, b)| b == &vec![i + 1]));
            let free = free_big_delta_basis(&fa, &l)
                .map_keys(|t| HatTerm { factors: t.factors.iter().map(|f| f.outer.clone()).collect(), shuffle: t.shuffle.clone() });
            assert_eq!(free, big_delta(&a, &Lin::basis(l.outer.clone())).unwrap());
        }
        let p = primitive_space(&a, n).dim();
        assert_eq!(free_primitive_space(&fa, n).dim(), p);
    }
}

#[test]
fn counits_on_two_generators() {
    let fa = FreeAlgebra::new(Assoc::new(), Generators::from_dims(&[(1, 2)]).unwrap()).unwrap();
    for n in 0..=3 {
        for l in fa.basis(n) {
            let x = Lin::basis(l.clone());
            let (left, right) = free_counits(&fa, &free_big_delta_basis(&fa, &l));
            assert_eq!(left, x);
            assert_eq!(right, x);
        }
    }
    let cfg = CheckConfig::new(3, 0);
    assert!(check_free_counit(&fa, &cfg).status.is_pass());
    assert!(check_free_coassoc(&fa, &cfg).status.is_pass());
}

#[test]
fn primitive_dimensions_match_plethysm_counts() {
    let g = Generators::from_dims(&[(1, 2)]).unwrap();
    let fa = FreeAlgebra::new(Assoc::new(), g.clone()).unwrap();
    let lie_dims = [0, 1, 1, 2, 6];
    let got = free_primitive_dimensions(&fa, 3);
    let want: Vec<usize> = (1..=3).map(|n| plethysm_dimension(&lie_dims, &g, n)).collect();
    assert_eq!(got, want);
    assert_eq!(got, vec![2, 4, 16]);

    let mixed = Generators::from_dims(&[(1, 1), (2, 1)]).unwrap();
    let fp = FreeAlgebra::new(Pois::new(), mixed.clone()).unwrap();
    let got = free_primitive_dimensions(&fp, 3);
    let want: Vec<usize> = (1..=3).map(|n| plethysm_dimension(&lie_dims, &mixed, n)).collect();
    assert_eq!(got, want);
    assert_eq!(got, vec![1, 2, 5]);
}

#[test]
fn labels_parse_and_format() {
    let fa = FreeAlgebra::new(Assoc::new(), gens(&[(1, &["b"]), (2, &["a"])])).unwrap();
    let x = fa.parse_label("[1,2] @ {3:b, 12:a}").unwrap();
    let y = fa.parse_label("[2,1] @ {12:a, 3:b}").unwrap();
    assert_eq!(x, y);
    let l = y.keys().next().unwrap();
    assert_eq!(fa.format_label(l), "[2,1] @ {12:a, 3:b}");
    assert_eq!(fa.name(), "free(as; 1:1,2:1)");
    for n in 0..=4 {
        for l in fa.basis(n) {
            assert_eq!(fa.parse_label(&fa.format_label(&l)).unwrap(), Lin::basis(l.clone()));
        }
    }
    assert!(fa.parse_label("[1,2] @ {3:b}").is_err());
    assert!(fa.parse_label("[1,2] @ {1:a, 23:b}").is_err());
    assert!(fa.parse_label("[1,2] @ {1:b, 3:b}").is_err());
    assert!(fa.parse_label("[1,2] {1:b, 2:b}").is_err());

    let pairs = FreeAlgebra::new(Com, Generators::from_dims(&[(2, 1)]).unwrap()).unwrap();
    let big = pairs.parse_label("e5 @ {1.2:a, 3.4:a, 5.6:a, 7.8:a, 9.10:a}").unwrap();
    let text = pairs.format_label(big.keys().next().unwrap());
    assert_eq!(text, "e5 @ {1.2:a, 3.4:a, 5.6:a, 7.8:a, 9.10:a}");
    assert_eq!(pairs.parse_label(&text).unwrap(), big);
}

#[test]
fn action_is_a_right_action() {
    let fa = FreeAlgebra::new(Assoc::new(), Generators::from_dims(&[(1, 1), (2, 1)]).unwrap()).unwrap();
    let perms = Assoc::new().basis(3);
    for l in fa.basis(3) {
        let x = Lin::basis(l);
        for s in &perms {
            for r in &perms {
                let sr: Permutation = s.multiply(r).unwrap();
                let stepwise = act_right(&fa, &act_right(&fa, &x, s).unwrap(), r).unwrap();
                assert_eq!(stepwise, act_right(&fa, &x, &sr).unwrap());
            }
        }
    }
}
