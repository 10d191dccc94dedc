//! Hopf operads: the arity-wise coproduct `delta`, its counit, and the
//! twisted Hopf coproduct
//!
//! ```text
//! Delta(mu) = sum over delta(mu) = mu' (x) mu'' and S u T = [n] of
//!             (mu'|_S (x) mu''|_T) . sigma(S,T)^{-1}
//! ```
//!
//! with values in the hat-tensor square. Everything is unsigned.

pub mod laws;

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::exact::{rank_of, KernelBuilder, Rational};
use crate::lin::Lin;
use crate::operad::{compose_full, empty_restriction_coeff, Assoc, Com, Mag, Operad, Pois};
use crate::perm::{sigma_st, Permutation, Subset};
use crate::smod::{arity_of, drop_trivial_factors, hat_canonicalize, HatTensor, HatTerm, SModule};

/// An operad with a coassociative, counital coproduct in each arity that is
/// compatible with composition.
pub trait HopfOperad: Operad {
    fn delta_basis(&self, label: &Self::Label) -> Lin<(Self::Label, Self::Label)>;

    /// `epsilon(mu)`: the coefficient of `1_0` in `mu|_{empty}`.
    fn epsilon_basis(&self, label: &Self::Label) -> Rational {
        empty_restriction_coeff(self, label)
    }
}

fn diagonal<L: Ord + Clone>(l: &L) -> Lin<(L, L)> {
    Lin::basis((l.clone(), l.clone()))
}

impl HopfOperad for Assoc {
    fn delta_basis(&self, label: &Permutation) -> Lin<(Permutation, Permutation)> {
        diagonal(label)
    }
}

impl HopfOperad for Com {
    fn delta_basis(&self, label: &usize) -> Lin<(usize, usize)> {
        diagonal(label)
    }
}

impl HopfOperad for Mag {
    fn delta_basis(&self, label: &Self::Label) -> Lin<(Self::Label, Self::Label)> {
        diagonal(label)
    }
}

impl HopfOperad for Pois {
    fn delta_basis(&self, label: &Self::Label) -> Lin<(Self::Label, Self::Label)> {
        self.delta_label(label)
    }
}

pub fn delta_small<H: HopfOperad>(h: &H, x: &Lin<H::Label>) -> Result<Lin<(H::Label, H::Label)>> {
    arity_of(h, x)?;
    Ok(x.flat_map(|l| h.delta_basis(l)))
}

pub fn epsilon<H: HopfOperad>(h: &H, x: &Lin<H::Label>) -> Rational {
    x.iter().fold(Rational::zero(), |acc, (l, c)| acc + c * h.epsilon_basis(l))
}

/// `Delta` on a basis label.
pub fn big_delta_basis<H: HopfOperad>(h: &H, label: &H::Label) -> HatTensor<H::Label> {
    let n = h.arity(label);
    let subsets = Subset::all(n);
    let shuffles: Vec<Permutation> = subsets
        .iter()
        .map(|s| sigma_st(s, &s.complement()).expect("complementary subsets").invert())
        .collect();
    let mut out = Lin::zero();
    for ((a, b), c) in &h.delta_basis(label) {
        for (s, shuffle) in subsets.iter().zip(&shuffles) {
            let left = h.restrict_basis(a, s);
            if left.is_zero() {
                continue;
            }
            let right = h.restrict_basis(b, &s.complement());
            for (la, ca) in &left {
                for (lb, cb) in &right {
                    let term = HatTerm { factors: vec![la.clone(), lb.clone()], shuffle: shuffle.clone() };
                    out.add_term(term, c * ca * cb);
                }
            }
        }
    }
    out
}

pub fn big_delta<H: HopfOperad>(h: &H, x: &Lin<H::Label>) -> Result<HatTensor<H::Label>> {
    arity_of(h, x)?;
    Ok(x.flat_map(|l| big_delta_basis(h, l)))
}

/// `Delta` with the terms that have an arity-0 factor removed.
pub fn reduced_big_delta<H: HopfOperad>(h: &H, x: &Lin<H::Label>) -> Result<HatTensor<H::Label>> {
    Ok(drop_trivial_factors(h, &big_delta(h, x)?))
}

pub fn reduced_big_delta_basis<H: HopfOperad>(h: &H, label: &H::Label) -> HatTensor<H::Label> {
    drop_trivial_factors(h, &big_delta_basis(h, label))
}

pub fn is_primitive<H: HopfOperad>(h: &H, x: &Lin<H::Label>) -> Result<bool> {
    Ok(reduced_big_delta(h, x)?.is_zero())
}

/// Applies `Delta` (or its reduced version) to factor `k` of every term of a
/// multi-factor tensor.
pub fn expand_factor<H: HopfOperad>(h: &H, t: &HatTensor<H::Label>, k: usize, reduced: bool) -> HatTensor<H::Label> {
    if reduced {
        expand_factor_with(h, t, k, |f| reduced_big_delta_basis(h, f))
    } else {
        expand_factor_with(h, t, k, |f| big_delta_basis(h, f))
    }
}

/// Replaces factor `k` of every term by its image under a two-factor
/// coproduct `delta`, composing the shuffles.
pub fn expand_factor_with<M: SModule>(
    m: &M,
    t: &HatTensor<M::Label>,
    k: usize,
    delta: impl Fn(&M::Label) -> HatTensor<M::Label>,
) -> HatTensor<M::Label> {
    let mut out = Lin::zero();
    for (term, c) in t {
        let d = delta(&term.factors[k]);
        let before: usize = term.factors[..k].iter().map(|x| m.arity(x)).sum();
        let after: usize = term.factors[k + 1..].iter().map(|x| m.arity(x)).sum();
        for (dt, dc) in &d {
            let inner = Permutation::identity(before).direct_sum(&dt.shuffle).direct_sum(&Permutation::identity(after));
            let pi = inner.multiply(&term.shuffle).expect("same arity");
            let mut factors = term.factors[..k].to_vec();
            factors.extend(dt.factors.iter().cloned());
            factors.extend(term.factors[k + 1..].iter().cloned());
            out.add_scaled(&hat_canonicalize(m, &factors, &pi), &(c * dc));
        }
    }
    out
}

/// `Delta-bar^{[m]}(x)`: the reduced coproduct iterated into `m` factors.
pub fn iterated_reduced<H: HopfOperad>(h: &H, x: &Lin<H::Label>, m: usize) -> Result<HatTensor<H::Label>> {
    if m < 2 {
        return invalid(format!("iterated reduced coproduct needs at least 2 factors, got {m}"));
    }
    let mut t = reduced_big_delta(h, x)?;
    for k in 2..m {
        t = expand_factor(h, &t, k - 1, true);
    }
    Ok(t)
}

/// `(epsilon (x) id)` on a two-factor tensor: the terms whose left factor has
/// arity 0, read as elements of the right factor.
pub fn counit_left<H: HopfOperad>(h: &H, t: &HatTensor<H::Label>) -> Lin<H::Label> {
    let mut out = Lin::zero();
    for (term, c) in t {
        if h.arity(&term.factors[0]) == 0 {
            out.add_term(term.factors[1].clone(), c * empty_restriction_coeff(h, &term.factors[0]));
        }
    }
    out
}

pub fn counit_right<H: HopfOperad>(h: &H, t: &HatTensor<H::Label>) -> Lin<H::Label> {
    let mut out = Lin::zero();
    for (term, c) in t {
        if h.arity(&term.factors[1]) == 0 {
            out.add_term(term.factors[0].clone(), c * empty_restriction_coeff(h, &term.factors[1]));
        }
    }
    out
}

/// The interleaving `(1, k+1, 2, k+2, ..., k, 2k)` that sorts the factors
/// `(e_1, f_1, ..., e_k, f_k)` into `(e_1, ..., e_k, f_1, ..., f_k)`.
fn interleave(k: usize) -> Permutation {
    let seq = (1..=k).flat_map(|i| [i, k + i]).collect();
    Permutation::new(seq).expect("interleaving permutation")
}

/// The twisted `P`-algebra structure on the hat-tensor square:
/// `mu(t_1, ..., t_k)` for `t_i = sum (e_i (x) f_i) . a_i` is
/// `sum (mu'(e) (x) mu''(f)) . sigma(r_1, s_1, ..., r_k, s_k) . (a_1 + ... + a_k)`
/// over `delta(mu) = mu' (x) mu''`.
pub fn hat_algebra_compose<H: HopfOperad>(
    h: &H,
    mu: &Lin<H::Label>,
    operands: &[HatTensor<H::Label>],
) -> Result<HatTensor<H::Label>> {
    let Some(k) = arity_of(h, mu)? else {
        return Ok(Lin::zero());
    };
    if operands.len() != k {
        return invalid(format!("arity {k} operation given {} operands", operands.len()));
    }
    if operands.iter().any(|t| t.iter().any(|(term, _)| term.factors.len() != 2)) {
        return invalid("hat_algebra_compose expects two-factor tensors");
    }
    let sigma = interleave(k);
    let lists: Vec<Vec<(&HatTerm<H::Label>, &Rational)>> = operands.iter().map(|t| t.iter().collect()).collect();
    let delta = delta_small(h, mu)?;
    let mut out = Lin::zero();
    let mut choice = vec![0usize; k];
    if lists.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let mut coeff = Rational::from_integer(1.into());
        let mut lengths = Vec::with_capacity(2 * k);
        let mut shuffle = Permutation::identity(0);
        let mut lefts = Vec::with_capacity(k);
        let mut rights = Vec::with_capacity(k);
        for (i, &ci) in choice.iter().enumerate() {
            let (term, c) = lists[i][ci];
            coeff *= c;
            lengths.push(h.arity(&term.factors[0]));
            lengths.push(h.arity(&term.factors[1]));
            shuffle = shuffle.direct_sum(&term.shuffle);
            lefts.push(Lin::basis(term.factors[0].clone()));
            rights.push(Lin::basis(term.factors[1].clone()));
        }
        let pi = sigma.block_permutation(&lengths)?.multiply(&shuffle)?;
        for ((a, b), dc) in &delta {
            let left = compose_full(h, &Lin::basis(a.clone()), &lefts)?;
            if left.is_zero() {
                continue;
            }
            let right = compose_full(h, &Lin::basis(b.clone()), &rights)?;
            for (l, cl) in &left {
                for (r, cr) in &right {
                    let t = hat_canonicalize(h, &[l.clone(), r.clone()], &pi);
                    out.add_scaled(&t, &(&coeff * dc * cl * cr));
                }
            }
        }
        // advance the mixed-radix counter over term choices
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < lists[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// The primitive elements of `P(n)`: a basis of `ker Delta-bar`, in reduced
/// echelon form with respect to the basis order of `P(n)`.
#[derive(Clone, Debug)]
pub struct PrimitiveSpace<L: Ord> {
    pub operad: String,
    pub arity: usize,
    pub domain: Vec<L>,
    pub basis: Vec<Lin<L>>,
}

impl<L: Ord + Clone> PrimitiveSpace<L> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of the kernel of a linear map given on a basis of its domain.
pub fn kernel_of_map<L, K>(domain: &[L], image: impl Fn(&L) -> Lin<K> + Sync) -> Vec<Lin<L>>
where
    L: Ord + Clone + Sync,
    K: Ord + Clone + Hash + Send,
{
    let images: Vec<Lin<K>> = domain.par_iter().map(&image).collect();
    let mut constraints: HashMap<K, Vec<(usize, Rational)>> = HashMap::new();
    for (col, img) in images.into_iter().enumerate() {
        for (key, c) in img {
            constraints.entry(key).or_default().push((col, c));
        }
    }
    // a deterministic constraint order keeps intermediate work reproducible
    let ordered: BTreeMap<K, Vec<(usize, Rational)>> = constraints.into_iter().collect();
    let mut builder = KernelBuilder::new(domain.len());
    for row in ordered.values() {
        builder.add_constraint(row);
        if builder.dim() == 0 {
            break;
        }
    }
    builder
        .finish()
        .into_iter()
        .map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (domain[i].clone(), c)).collect())
        .collect()
}

/// True when two families of vectors span the same subspace.
pub fn span_equal<L: Ord + Clone>(a: &[Lin<L>], b: &[Lin<L>]) -> bool {
    let mut keys: Vec<&L> = a.iter().chain(b).flat_map(|v| v.keys()).collect();
    keys.sort();
    keys.dedup();
    let dense = |v: &Lin<L>| {
        let mut row = vec![Rational::zero(); keys.len()];
        for (k, c) in v {
            row[keys.binary_search(&k).expect("collected key")] = c.clone();
        }
        row
    };
    let ra = rank_of(keys.len(), a.iter().map(dense).collect());
    let rb = rank_of(keys.len(), b.iter().map(dense).collect());
    let rab = rank_of(keys.len(), a.iter().chain(b).map(dense).collect());
    ra == rb && rb == rab
}

/// The primitive elements of `P(n)`. Arity 0 has none: `1_0` is grouplike.
pub fn primitive_space<H: HopfOperad>(h: &H, n: usize) -> PrimitiveSpace<H::Label> {
    let domain = h.basis(n);
    let basis = if n == 0 { Vec::new() } else { kernel_of_map(&domain, |l| reduced_big_delta_basis(h, l)) };
    PrimitiveSpace { operad: h.name(), arity: n, domain, basis }
}
