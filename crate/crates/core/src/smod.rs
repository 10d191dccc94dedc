//! S-modules given by a basis, and the hat-tensor product.
//!
//! An element of `(M_1 ^x ... ^x M_k)(n)` is stored as a combination of
//! [`HatTerm`]s `(x_1 x ... x x_k) . alpha` where `alpha` is a multi-shuffle
//! for the arities of the factors. Every permutation factors uniquely as
//! `(s_1 x ... x s_k) . alpha`, so pushing the `s_i` onto the factors yields a
//! canonical form and equality of tensors is equality of term maps.
//!
//! There are no Koszul signs anywhere: the symmetric structure on S-modules
//! used here is unsigned.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::exact::{is_negative, Rational};
use crate::lin::Lin;
use crate::perm::{enumerate_shuffles, zeta, Permutation};

/// A graded family of right `S_n`-modules with a distinguished basis.
pub trait SModule: Sync {
    type Label: Clone + Ord + Hash + Debug + Send + Sync;

    fn arity(&self, label: &Self::Label) -> usize;

    /// Canonical basis of the arity-`n` component, in a fixed order.
    fn basis(&self, n: usize) -> Vec<Self::Label>;

    /// Right action of `sigma` on a basis label, written in the basis.
    fn act_basis(&self, label: &Self::Label, sigma: &Permutation) -> Lin<Self::Label>;

    fn format_label(&self, label: &Self::Label) -> String;
}

/// S-modules with degeneracies `d_i : M(n) -> M(n-1)`.
pub trait IModule: SModule {
    fn degeneracy_basis(&self, label: &Self::Label, i: usize) -> Lin<Self::Label>;
}

/// The arity of a homogeneous element (`None` for zero).
pub fn arity_of<M: SModule>(m: &M, x: &Lin<M::Label>) -> Result<Option<usize>> {
    let mut ar = None;
    for l in x.keys() {
        let a = m.arity(l);
        match ar {
            None => ar = Some(a),
            Some(b) if b != a => return invalid(format!("element mixes arities {b} and {a}")),
            _ => {}
        }
    }
    Ok(ar)
}

pub fn act_right<M: SModule>(m: &M, x: &Lin<M::Label>, sigma: &Permutation) -> Result<Lin<M::Label>> {
    if let Some(a) = arity_of(m, x)? {
        if a != sigma.len() {
            return invalid(format!("acting with S_{} on an element of arity {a}", sigma.len()));
        }
    }
    Ok(x.flat_map(|l| m.act_basis(l, sigma)))
}

/// `(x_1 x ... x x_k) . shuffle`, with `shuffle` a multi-shuffle for the
/// arities of the factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HatTerm<L> {
    pub factors: Vec<L>,
    pub shuffle: Permutation,
}

pub type HatTensor<L> = Lin<HatTerm<L>>;

impl<L> HatTerm<L> {
    pub fn left(&self) -> &L {
        &self.factors[0]
    }

    pub fn right(&self) -> &L {
        &self.factors[self.factors.len() - 1]
    }
}

/// Writes `(x_1 x ... x x_k) . pi` in canonical form.
pub fn hat_canonicalize<M: SModule>(m: &M, factors: &[M::Label], pi: &Permutation) -> HatTensor<M::Label> {
    let sizes: Vec<usize> = factors.iter().map(|f| m.arity(f)).collect();
    let (parts, alpha) = pi.multi_shuffle_decompose(&sizes);
    let mut acc: Lin<Vec<M::Label>> = Lin::basis(Vec::with_capacity(factors.len()));
    for (f, s) in factors.iter().zip(&parts) {
        let acted = if s.is_identity() { Lin::basis(f.clone()) } else { m.act_basis(f, s) };
        acc = acc.bilinear(&acted, |prefix, l| {
            let mut v = prefix.clone();
            v.push(l.clone());
            Lin::basis(v)
        });
    }
    acc.map_keys(|fs| HatTerm { factors: fs.clone(), shuffle: alpha.clone() })
}

/// Canonicalizes an arbitrary combination of (factors, permutation) pairs.
pub fn hat_from_raw<M: SModule>(m: &M, raw: &Lin<HatTerm<M::Label>>) -> HatTensor<M::Label> {
    raw.flat_map(|t| hat_canonicalize(m, &t.factors, &t.shuffle))
}

pub fn hat_arity<M: SModule>(m: &M, t: &HatTerm<M::Label>) -> usize {
    t.factors.iter().map(|f| m.arity(f)).sum()
}

/// Right action of `sigma` on a hat tensor.
pub fn hat_act<M: SModule>(m: &M, t: &HatTensor<M::Label>, sigma: &Permutation) -> Result<HatTensor<M::Label>> {
    let mut out = Lin::zero();
    for (term, c) in t {
        let pi = term.shuffle.multiply(sigma)?;
        out.add_scaled(&hat_canonicalize(m, &term.factors, &pi), c);
    }
    Ok(out)
}

/// Degeneracy `d_i` on a hat tensor: moved through the shuffle with
/// `d_i(x . a) = d_{a(i)}(x) . d_i(a)`, then applied to the factor that owns
/// position `a(i)`.
pub fn hat_degeneracy<M: IModule>(m: &M, t: &HatTensor<M::Label>, i: usize) -> Result<HatTensor<M::Label>> {
    let mut out = Lin::zero();
    for (term, c) in t {
        let n = term.shuffle.len();
        if i == 0 || i > n {
            return invalid(format!("degeneracy index {i} out of range 1..={n}"));
        }
        let j = term.shuffle.apply(i);
        let new_shuffle = term.shuffle.delta_i(i)?;
        let mut start = 0;
        for (f, x) in term.factors.iter().enumerate() {
            let a = m.arity(x);
            if j <= start + a {
                let dx = m.degeneracy_basis(x, j - start);
                for (y, cy) in &dx {
                    let mut factors = term.factors.clone();
                    factors[f] = y.clone();
                    out.add_scaled(&hat_canonicalize(m, &factors, &new_shuffle), &(c * cy));
                }
                break;
            }
            start += a;
        }
    }
    Ok(out)
}

/// Symmetry isomorphism `tau(x (x) y) = (y (x) x) . zeta_{p,q}` on two-factor
/// tensors.
pub fn tau_swap<M: SModule>(m: &M, t: &HatTensor<M::Label>) -> Result<HatTensor<M::Label>> {
    let mut out = Lin::zero();
    for (term, c) in t {
        if term.factors.len() != 2 {
            return invalid("tau_swap expects two-factor tensors");
        }
        let p = m.arity(&term.factors[0]);
        let q = m.arity(&term.factors[1]);
        let pi = zeta(p, q).mul_unchecked(&term.shuffle);
        let swapped = [term.factors[1].clone(), term.factors[0].clone()];
        out.add_scaled(&hat_canonicalize(m, &swapped, &pi), c);
    }
    Ok(out)
}

/// Canonical basis of `(M ^x M)(n)`.
pub fn hat_basis<M: SModule>(m: &M, n: usize) -> Vec<HatTerm<M::Label>> {
    let mut out = Vec::new();
    for p in 0..=n {
        let q = n - p;
        let left = m.basis(p);
        let right = m.basis(q);
        let shuffles = enumerate_shuffles(p, q);
        for x in &left {
            for y in &right {
                for a in &shuffles {
                    out.push(HatTerm { factors: vec![x.clone(), y.clone()], shuffle: a.clone() });
                }
            }
        }
    }
    out
}

fn format_coeff_term(out: &mut String, first: bool, c: &Rational, body: &str) {
    let neg = is_negative(c);
    let abs = if neg { -c.clone() } else { c.clone() };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if !abs.is_one() {
        out.push_str(&abs.to_string());
        out.push('*');
    }
    out.push_str(body);
}

/// Shared rendering of a combination: `c1*k1 + c2*k2 - ...`, `0` when empty.
pub fn format_lin<K: Ord + Clone>(x: &Lin<K>, mut label: impl FnMut(&K) -> String) -> String {
    format_sorted(x.iter().map(|(k, c)| (label(k), c.clone())).collect())
}

fn format_sorted(terms: Vec<(String, Rational)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (body, c)) in terms.iter().enumerate() {
        format_coeff_term(&mut out, k == 0, c, body);
    }
    out
}

/// Label rendering with the conventional names `1_0` and `1_1` for the
/// arity-0 and arity-1 basis elements.
pub fn display_label<M: SModule>(m: &M, l: &M::Label) -> String {
    match m.arity(l) {
        0 => "1_0".to_string(),
        1 if m.basis(1).len() == 1 => "1_1".to_string(),
        _ => m.format_label(l),
    }
}

pub fn format_element<M: SModule>(m: &M, x: &Lin<M::Label>) -> String {
    format_lin(x, |l| display_label(m, l))
}

/// Renders Sweedler sums `a ⊗ b + ...`.
pub fn format_pairs<M: SModule>(m: &M, x: &Lin<(M::Label, M::Label)>) -> String {
    format_lin(x, |(a, b)| format!("{} ⊗ {}", display_label(m, a), display_label(m, b)))
}

/// Renders `(a|b|[shuffle])` terms, the identity shuffle as `[]`. Terms are
/// listed by decreasing left arity, then by labels and shuffle.
pub fn format_hat<M: SModule>(m: &M, t: &HatTensor<M::Label>) -> String {
    let mut terms: Vec<(&HatTerm<M::Label>, &Rational)> = t.iter().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let la = m.arity(&a.factors[0]);
        let lb = m.arity(&b.factors[0]);
        lb.cmp(&la).then_with(|| a.cmp(b))
    });
    let rendered = terms
        .into_iter()
        .map(|(term, c)| {
            let mut s = String::from("(");
            for f in &term.factors {
                s.push_str(&display_label(m, f));
                s.push('|');
            }
            if term.shuffle.is_identity() {
                s.push_str("[]");
            } else {
                s.push_str(&term.shuffle.to_string());
            }
            s.push(')');
            (s, c.clone())
        })
        .collect();
    format_sorted(rendered)
}

/// Set partitions of `[n]`, blocks sorted internally and by minimum.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(v: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v > n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(v);
            go(v + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![v]);
        go(v + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(1, n, &mut Vec::new(), &mut out);
    out
}

/// The plethysm unit `I`: one basis element in arity 1.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityModule;

impl SModule for IdentityModule {
    type Label = ();

    fn arity(&self, _: &()) -> usize {
        1
    }

    fn basis(&self, n: usize) -> Vec<()> {
        if n == 1 { vec![()] } else { Vec::new() }
    }

    fn act_basis(&self, _: &(), _: &Permutation) -> Lin<()> {
        Lin::basis(())
    }

    fn format_label(&self, _: &()) -> String {
        "x".to_string()
    }
}

/// A basis element of `(M o N)(n)`: a set partition with blocks ordered by
/// minimum, a label of `M(k)` for the `k` blocks, and a label of
/// `N(|B|)` per block (transported along the increasing bijection).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlethysmLabel<A, B> {
    pub blocks: Vec<Vec<usize>>,
    pub outer: A,
    pub inner: Vec<B>,
}

/// Basis of `(M o N)(n)`, restricted to `N(0) = 0`.
pub fn plethysm_basis<M: SModule, N: SModule>(
    outer: &M,
    inner: &N,
    n: usize,
) -> Result<Vec<PlethysmLabel<M::Label, N::Label>>> {
    if !inner.basis(0).is_empty() {
        return Err(Error::Unsupported(
            "plethysm with an inner module that is nonzero in arity 0".to_string(),
        ));
    }
    let mut out = Vec::new();
    for blocks in set_partitions(n) {
        let outer_basis = outer.basis(blocks.len());
        if outer_basis.is_empty() {
            continue;
        }
        let mut decorations: Vec<Vec<N::Label>> = vec![Vec::new()];
        for b in &blocks {
            let opts = inner.basis(b.len());
            decorations = decorations
                .into_iter()
                .flat_map(|d| {
                    opts.iter().map(move |o| {
                        let mut d = d.clone();
                        d.push(o.clone());
                        d
                    })
                })
                .collect();
        }
        for o in &outer_basis {
            for d in &decorations {
                out.push(PlethysmLabel { blocks: blocks.clone(), outer: o.clone(), inner: d.clone() });
            }
        }
    }
    Ok(out)
}

/// `sum_{p+q=n} dim M(p) dim M(q) C(n, p)`.
pub fn hat_dimension<M: SModule>(m: &M, n: usize) -> usize {
    (0..=n).map(|p| m.basis(p).len() * m.basis(n - p).len() * binomial(n, p)).sum()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Removes terms with a zero-arity factor (the projection onto the
/// augmentation ideal in every factor).
pub fn drop_trivial_factors<M: SModule>(m: &M, t: &HatTensor<M::Label>) -> HatTensor<M::Label> {
    t.filter(|term| term.factors.iter().all(|f| m.arity(f) > 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), *b, "n = {n}");
        }
        assert_eq!(set_partitions(3)[0], vec![vec![1, 2, 3]]);
    }

    #[test]
    fn plethysm_with_identity_is_singletons() {
        let b = plethysm_basis(&IdentityModule, &IdentityModule, 1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(plethysm_basis(&IdentityModule, &IdentityModule, 3).unwrap().is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(factorial(5), 120);
        assert_eq!(factorial(0), 1);
    }
}
