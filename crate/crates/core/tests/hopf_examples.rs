use std::collections::BTreeSet;

use hopfop::exact::rat;
use hopfop::hopf::laws::{check_all_hopf_laws, HopfLaw};
use hopfop::hopf::{
    big_delta, counit_left, counit_right, delta_small, epsilon, hat_algebra_compose, is_primitive, kernel_of_map,
    primitive_space, reduced_big_delta, reduced_big_delta_basis, span_equal, HopfOperad,
};
use hopfop::operad::{compose_full, parse_element, Assoc, Com, Mag, Operad, Pois};
use hopfop::perm::standardize;
use hopfop::report::CheckConfig;
use hopfop::smod::{factorial, format_hat, HatTensor, HatTerm, SModule};
use hopfop::{Lin, Permutation, Rational, RationalMatrix, Subset};

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn b(v: &[usize]) -> Lin<Permutation> {
    Lin::basis(perm(v))
}

fn pair<L: Clone + Ord>(x: &L, y: &L, a: &[usize]) -> HatTensor<L> {
    Lin::basis(HatTerm { factors: vec![x.clone(), y.clone()], shuffle: perm(a) })
}

#[test]
fn assoc_coproduct_in_arity_two() {
    let a = Assoc::new();
    let d = big_delta(&a, &b(&[1, 2])).unwrap();
    assert_eq!(format_hat(&a, &d), "([1,2]|1_0|[]) + (1_1|1_1|[]) + (1_1|1_1|[2,1]) + (1_0|[1,2]|[])");
    let (one, zero) = (a.unit(), a.nullary().unwrap());
    let want = &(&(&pair(&perm(&[1, 2]), &zero, &[1, 2]) + &pair(&one, &one, &[1, 2])) + &pair(&one, &one, &[2, 1]))
        + &pair(&zero, &perm(&[1, 2]), &[1, 2]);
    assert_eq!(d, want);
    assert_eq!(
        big_delta(&a, &b(&[1])).unwrap(),
        &pair(&one, &zero, &[1]) + &pair(&zero, &one, &[1])
    );
    assert_eq!(reduced_big_delta(&a, &b(&[1, 2])).unwrap(), reduced_big_delta(&a, &b(&[2, 1])).unwrap());
    assert!(reduced_big_delta(&a, &b(&[1])).unwrap().is_zero());
}

/// `Delta(sigma) = sum_S (sigma|_S (x) sigma|_T) . (S, T)^{-1}` with the
/// restriction read off the values of `sigma` on `S`.
fn assoc_delta_oracle(s: &Permutation) -> HatTensor<Permutation> {
    let n = s.len();
    let mut out = Lin::zero();
    for mask in 0u32..(1 << n) {
        let (ins, outs): (Vec<usize>, Vec<usize>) = (1..=n).partition(|k| mask >> (k - 1) & 1 == 1);
        let vals = |pos: &[usize]| standardize(&pos.iter().map(|&k| s.apply(k)).collect::<Vec<_>>()).unwrap();
        let concat = Permutation::new(ins.iter().chain(&outs).copied().collect()).unwrap();
        out.add_term(HatTerm { factors: vec![vals(&ins), vals(&outs)], shuffle: concat.invert() }, rat(1));
    }
    out
}

#[test]
fn assoc_coproduct_matches_direct_formula() {
    let a = Assoc::new();
    for n in 0..=5 {
        for s in a.basis(n) {
            let d = big_delta(&a, &Lin::basis(s.clone())).unwrap();
            assert_eq!(d, assoc_delta_oracle(&s), "sigma = {s}");
            assert_eq!(d.len(), 1 << n);
        }
    }
}

#[test]
fn counits_recover_the_element() {
    let p = Pois::new();
    for n in 0..=4 {
        for l in p.basis(n) {
            let x = Lin::basis(l);
            let d = big_delta(&p, &x).unwrap();
            assert_eq!(counit_left(&p, &d), x);
            assert_eq!(counit_right(&p, &d), x);
        }
    }
}

#[test]
fn epsilon_examples() {
    let a = Assoc::new();
    assert_eq!(epsilon(&a, &b(&[3, 1, 2])), rat(1));
    assert_eq!(epsilon(&a, &(&b(&[1, 2]) - &b(&[2, 1]))), rat(0));
    let p = Pois::new();
    assert_eq!(epsilon(&p, &parse_element(&p, "{[1,2]}").unwrap()), rat(0));
    assert_eq!(epsilon(&p, &parse_element(&p, "{1}{2}{3}").unwrap()), rat(1));
    let m = Mag::new(3);
    assert_eq!(epsilon(&m, &Lin::basis(m.corolla(3))), rat(1));
    assert_eq!(epsilon(&Com, &Lin::basis(5)), rat(1));
}

#[test]
fn poisson_small_coproduct_by_hand() {
    let p = Pois::new();
    let one = |s: &str| parse_element(&p, s).unwrap().keys().next().unwrap().clone();
    let (lie3, b12_3, x1b23, b13x2, x123) =
        (one("{[[1,2],3]}"), one("{[1,2]}{3}"), one("{1}{[2,3]}"), one("{[1,3]}{2}"), one("{1}{2}{3}"));
    // delta([[1,2],3]) = [delta [1,2], x3 (x) x3] with delta [1,2] = [1,2] (x) 12 + 12 (x) [1,2]
    let want: Lin<_> = [
        ((lie3.clone(), x123.clone()), rat(1)),
        ((b12_3.clone(), x1b23.clone()), rat(1)),
        ((b12_3.clone(), b13x2.clone()), rat(1)),
        ((x1b23, b12_3.clone()), rat(1)),
        ((b13x2, b12_3), rat(1)),
        ((x123, lie3.clone()), rat(1)),
    ]
    .into_iter()
    .collect();
    assert_eq!(delta_small(&p, &Lin::basis(lie3)).unwrap(), want);
    let prod = p.product();
    assert_eq!(p.delta_basis(&prod), Lin::basis((prod.clone(), prod)));
}

#[test]
fn primitive_examples() {
    let a = Assoc::new();
    assert!(is_primitive(&a, &(&b(&[1, 2]) - &b(&[2, 1]))).unwrap());
    assert!(!is_primitive(&a, &b(&[1, 2])).unwrap());
    let p = Pois::new();
    assert!(is_primitive(&p, &parse_element(&p, "{[1,2]}").unwrap()).unwrap());
    assert!(!is_primitive(&p, &parse_element(&p, "{1}{2}").unwrap()).unwrap());
    assert!(is_primitive(&p, &parse_element(&p, "{[[1,2],3]}").unwrap()).unwrap());
    let m = Mag::new(2);
    let comm = parse_element(&m, "(v2 1 2) - (v2 2 1)").unwrap();
    assert!(is_primitive(&m, &comm).unwrap());
    let space = primitive_space(&m, 2);
    assert!(span_equal(&space.basis, &[comm]));
    assert_eq!(primitive_space(&a, 0).dim(), 0);
}

#[test]
fn primitive_dimensions_are_factorials() {
    let a = Assoc::new();
    let p = Pois::new();
    for n in 1..=5 {
        assert_eq!(primitive_space(&a, n).dim(), factorial(n - 1), "as n = {n}");
        assert_eq!(primitive_space(&p, n).dim(), factorial(n - 1), "pois n = {n}");
    }
    assert_eq!(primitive_space(&Com, 1).dim(), 1);
    for n in 2..=5 {
        assert_eq!(primitive_space(&Com, n).dim(), 0);
    }
}

/// Kernel of the reduced coproduct by a dense matrix over all target terms.
fn dense_kernel<H: HopfOperad>(h: &H, n: usize) -> Vec<Lin<H::Label>> {
    let domain = h.basis(n);
    let images: Vec<_> = domain.iter().map(|l| reduced_big_delta_basis(h, l)).collect();
    let rows: Vec<_> = images.iter().flat_map(|t| t.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut m = RationalMatrix::zeros(rows.len(), domain.len());
    for (j, img) in images.iter().enumerate() {
        for (t, c) in img {
            m.set(rows.binary_search(t).unwrap(), j, c.clone());
        }
    }
    m.kernel_basis()
        .into_iter()
        .map(|v| domain.iter().cloned().zip(v).collect::<Lin<_>>())
        .collect()
}

#[test]
fn sparse_kernel_matches_dense_oracle() {
    let a = Assoc::new();
    for n in 1..=4 {
        let sparse = primitive_space(&a, n).basis;
        let dense = dense_kernel(&a, n);
        assert_eq!(sparse.len(), dense.len());
        assert!(span_equal(&sparse, &dense));
    }
    let m = Mag::new(2);
    let expected = [1, 1, 8, 78];
    for n in 1..=4 {
        let sparse = primitive_space(&m, n).basis;
        let dense = dense_kernel(&m, n);
        assert_eq!(dense.len(), expected[n - 1], "mag2 n = {n}");
        assert!(span_equal(&sparse, &dense));
    }
    let p = Pois::new();
    assert!(span_equal(&primitive_space(&p, 4).basis, &dense_kernel(&p, 4)));
}

#[test]
fn kernel_of_a_small_map() {
    // the sum map (a, b, c) -> a + b + c
    let domain = vec!['a', 'b', 'c'];
    let k = kernel_of_map(&domain, |_| Lin::basis(0u8));
    assert_eq!(k.len(), 2);
    let want: Vec<Lin<char>> = vec![
        [('a', rat(1)), ('b', rat(-1))].into_iter().collect(),
        [('b', rat(1)), ('c', rat(-1))].into_iter().collect(),
    ];
    assert!(span_equal(&k, &want));
    let injective = kernel_of_map(&domain, |c| Lin::basis(*c));
    assert!(injective.is_empty());
}

#[test]
fn coproduct_is_an_algebra_map_on_an_example() {
    let a = Assoc::new();
    let (mu, nu1, nu2) = (b(&[2, 1]), b(&[1, 2]), b(&[1]));
    let lhs = big_delta(&a, &compose_full(&a, &mu, &[nu1.clone(), nu2.clone()]).unwrap()).unwrap();
    let operands = [big_delta(&a, &nu1).unwrap(), big_delta(&a, &nu2).unwrap()];
    assert_eq!(hat_algebra_compose(&a, &mu, &operands).unwrap(), lhs);
    assert!(hat_algebra_compose(&a, &mu, &operands[..1]).is_err());
    let zero: Lin<Permutation> = Lin::zero();
    assert!(hat_algebra_compose(&a, &zero, &operands).unwrap().is_zero());
}

fn hopf_pass<H: HopfOperad>(h: &H, n: usize) {
    let cfg = CheckConfig::new(n, 5).with_samples(20);
    for r in check_all_hopf_laws(h, &cfg) {
        assert!(r.status.is_pass(), "{} {}: {:?}", r.operad, r.law, r.counterexamples);
        assert!(r.checked > 0, "{} {}", r.operad, r.law);
    }
}

#[test]
fn hopf_laws_hold() {
    hopf_pass(&Assoc::new(), 3);
    hopf_pass(&Com, 4);
    hopf_pass(&Pois::new(), 3);
    hopf_pass(&Mag::new(2), 3);
    assert_eq!(HopfLaw::ALL.len(), 8);
    assert_eq!("reciprocity".parse::<HopfLaw>().unwrap(), HopfLaw::Reciprocity);
    assert!("antipode".parse::<HopfLaw>().is_err());
}

#[test]
fn subsets_restrict_consistently_with_the_coproduct() {
    // the left factor of the term with shuffle (S, T)^{-1} is the restriction to S
    let a = Assoc::new();
    let s = perm(&[3, 1, 4, 2]);
    let d = big_delta(&a, &Lin::basis(s.clone())).unwrap();
    for sub in Subset::all(4) {
        let comp = sub.complement();
        let shuffle = hopfop::perm::sigma_st(&sub, &comp).unwrap().invert();
        let term = d.keys().find(|t| t.shuffle == shuffle && a.arity(t.left()) == sub.len()).unwrap();
        assert_eq!(term.left(), &s.restrict(&sub).unwrap());
        assert_eq!(term.right(), &s.restrict(&comp).unwrap());
        assert_eq!(d.coeff(term), Rational::from_integer(1.into()));
    }
}
