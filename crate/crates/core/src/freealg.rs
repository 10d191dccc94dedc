//! Free twisted algebras `P o V` over a finite S-module of generators `V` with
//! `V(0) = 0`, and the coproduct they inherit from a Hopf operad `P`.
//!
//! A basis label is a set partition of `[n]` with blocks ordered by minimum, a
//! label of `P(k)` for the `k` blocks (slot `i` holds block `i`), and one
//! generator per block whose arity is the block size. Generators of arity at
//! least 2 carry the trivial symmetric group action.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::hopf::{expand_factor_with, kernel_of_map, HopfOperad, PrimitiveSpace};
use crate::lin::Lin;
use crate::operad::{empty_restriction_coeff, parse_element, Operad};
use crate::perm::{sigma_st, Permutation, Subset};
use crate::report::{run_cases, CheckConfig, Counterexample, LawReport, ReportBuilder};
use crate::smod::{
    drop_trivial_factors, format_element, format_hat, hat_canonicalize, plethysm_basis, set_partitions, HatTensor,
    PlethysmLabel, SModule,
};

/// A generator: its arity and its index among the generators of that arity.
pub type GenLabel = (usize, usize);

/// A finite S-module of named generators with the trivial action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    names: BTreeMap<usize, Vec<String>>,
}

fn parse_block(vars: &str) -> Option<Vec<usize>> {
    if vars.contains('.') {
        vars.split('.').map(|v| v.trim().parse().ok()).collect()
    } else {
        vars.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    }
}

fn letter_name(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("g{i}")
    }
}

impl Generators {
    pub fn new(names: BTreeMap<usize, Vec<String>>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for name in names.values().flatten() {
            let valid = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return invalid(format!("generator name {name:?} must be alphanumeric"));
            }
            if !seen.insert(name.clone()) {
                return invalid(format!("duplicate generator name {name:?}"));
            }
        }
        let names = names.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        Ok(Generators { names })
    }

    /// The plethysm unit: one generator `x` in arity 1.
    pub fn identity() -> Self {
        Generators { names: BTreeMap::from([(1, vec!["x".to_string()])]) }
    }

    /// Generators named `a, b, c, ...` in order of increasing arity.
    pub fn from_dims(dims: &[(usize, usize)]) -> Result<Self> {
        let mut names: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        let mut sorted = dims.to_vec();
        sorted.sort();
        let mut next = 0;
        for (arity, dim) in sorted {
            let slot = names.entry(arity).or_default();
            for _ in 0..dim {
                slot.push(letter_name(next));
                next += 1;
            }
        }
        Generators::new(names)
    }

    pub fn dim(&self, arity: usize) -> usize {
        self.names.get(&arity).map_or(0, Vec::len)
    }

    pub fn name(&self, g: &GenLabel) -> &str {
        &self.names[&g.0][g.1]
    }

    pub fn lookup(&self, name: &str) -> Option<GenLabel> {
        self.names.iter().find_map(|(&a, v)| v.iter().position(|n| n == name).map(|i| (a, i)))
    }

    /// `arity:dim` pairs, e.g. `1:2`.
    pub fn describe(&self) -> String {
        self.names.iter().map(|(a, v)| format!("{a}:{}", v.len())).collect::<Vec<_>>().join(",")
    }
}

impl SModule for Generators {
    type Label = GenLabel;

    fn arity(&self, label: &GenLabel) -> usize {
        label.0
    }

    fn basis(&self, n: usize) -> Vec<GenLabel> {
        (0..self.dim(n)).map(|i| (n, i)).collect()
    }

    fn act_basis(&self, label: &GenLabel, _: &Permutation) -> Lin<GenLabel> {
        Lin::basis(*label)
    }

    fn format_label(&self, label: &GenLabel) -> String {
        self.name(label).to_string()
    }
}

pub type FreeLabel<L> = PlethysmLabel<L, GenLabel>;

/// The free twisted `P`-algebra `P o V`.
#[derive(Clone, Debug)]
pub struct FreeAlgebra<P> {
    pub operad: P,
    pub gens: Generators,
}

impl<P: Operad> FreeAlgebra<P> {
    pub fn new(operad: P, gens: Generators) -> Result<Self> {
        if gens.dim(0) != 0 {
            return Err(Error::Unsupported("free algebras need generators of positive arity".to_string()));
        }
        Ok(FreeAlgebra { operad, gens })
    }

    pub fn name(&self) -> String {
        format!("free({}; {})", self.operad.name(), self.gens.describe())
    }

    /// Puts blocks listed in slot order into canonical order, acting on the
    /// operad label accordingly. Blocks must be sorted internally.
    fn normalize(&self, outer: &Lin<P::Label>, slots: Vec<(Vec<usize>, GenLabel)>) -> Lin<FreeLabel<P::Label>> {
        let mut order: Vec<usize> = (0..slots.len()).collect();
        order.sort_by_key(|&i| slots[i].0.first().copied());
        let rho = Permutation::new(order.iter().map(|&i| i + 1).collect()).expect("block order");
        let (blocks, inner): (Vec<Vec<usize>>, Vec<GenLabel>) = order.iter().map(|&i| slots[i].clone()).unzip();
        let mut out = Lin::zero();
        for (l, c) in outer {
            for (m, d) in &self.operad.act_basis(l, &rho) {
                out.add_term(PlethysmLabel { blocks: blocks.clone(), outer: m.clone(), inner: inner.clone() }, c * d);
            }
        }
        out
    }

    /// Parses `P-label @ {block:gen, ...}`, e.g. `[2,1] @ {12:a, 3:b}`. Slot
    /// `i` of the operad label receives the `i`-th listed block; block
    /// variables are digits, or dot-separated numbers.
    pub fn parse_label(&self, text: &str) -> Result<Lin<FreeLabel<P::Label>>> {
        let (op, rest) = text.split_once('@').ok_or_else(|| Error::Parse(format!("expected '@' in {text:?}")))?;
        let outer = parse_element(&self.operad, op.trim())?;
        let body = rest
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{...}} after '@' in {text:?}")))?;
        let mut slots = Vec::new();
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (vars, gen) = item.split_once(':').ok_or_else(|| Error::Parse(format!("expected block:gen, got {item:?}")))?;
            let mut block = parse_block(vars.trim()).ok_or_else(|| Error::Parse(format!("bad block {vars:?}")))?;
            block.sort_unstable();
            let g = self.gens.lookup(gen.trim()).ok_or_else(|| Error::Parse(format!("unknown generator {gen:?}")))?;
            if g.0 != block.len() {
                return Err(Error::Parse(format!("generator {gen:?} has arity {} but block {vars:?} has size {}", g.0, block.len())));
            }
            slots.push((block, g));
        }
        let k = slots.len();
        if let Some(arity) = crate::smod::arity_of(&self.operad, &outer)? {
            if arity != k {
                return Err(Error::Parse(format!("operad label of arity {arity} given {k} blocks")));
            }
        }
        let mut all: Vec<usize> = slots.iter().flat_map(|(b, _)| b.iter().copied()).collect();
        all.sort_unstable();
        if all.iter().enumerate().any(|(i, &v)| v != i + 1) {
            return Err(Error::Parse(format!("blocks of {text:?} do not partition 1..n")));
        }
        Ok(self.normalize(&outer, slots))
    }
}

impl<P: Operad> SModule for FreeAlgebra<P> {
    type Label = FreeLabel<P::Label>;

    fn arity(&self, label: &Self::Label) -> usize {
        label.blocks.iter().map(Vec::len).sum()
    }

    fn basis(&self, n: usize) -> Vec<Self::Label> {
        plethysm_basis(&self.operad, &self.gens, n).expect("generators have positive arity")
    }

    /// Renames variable `v` to `sigma^{-1}(v)` and reorders the blocks.
    fn act_basis(&self, label: &Self::Label, sigma: &Permutation) -> Lin<Self::Label> {
        let inv = sigma.invert();
        let slots = label
            .blocks
            .iter()
            .zip(&label.inner)
            .map(|(b, g)| {
                let mut nb: Vec<usize> = b.iter().map(|&v| inv.apply(v)).collect();
                nb.sort_unstable();
                (nb, *g)
            })
            .collect();
        self.normalize(&Lin::basis(label.outer.clone()), slots)
    }

    fn format_label(&self, label: &Self::Label) -> String {
        let n = self.arity(label);
        let blocks: Vec<String> = label
            .blocks
            .iter()
            .zip(&label.inner)
            .map(|(b, g)| {
                let vars: Vec<String> = b.iter().map(usize::to_string).collect();
                let sep = if n > 9 { "." } else { "" };
                format!("{}:{}", vars.join(sep), self.gens.name(g))
            })
            .collect();
        format!("{} @ {{{}}}", self.operad.format_label(&label.outer), blocks.join(", "))
    }
}

/// Basis of `(P o V)(n)`.
pub fn free_basis<P: Operad>(p: &P, gens: &Generators, n: usize) -> Result<Vec<FreeLabel<P::Label>>> {
    plethysm_basis(p, gens, n)
}

fn standardize_blocks(blocks: &[&Vec<usize>]) -> Vec<Vec<usize>> {
    let mut all: Vec<usize> = blocks.iter().flat_map(|b| b.iter().copied()).collect();
    all.sort_unstable();
    blocks.iter().map(|b| b.iter().map(|v| all.binary_search(v).expect("member") + 1).collect()).collect()
}

/// `Delta` on a basis label: the operad part is split by `Delta` of `P`, and
/// each generator follows its slot to the side that kept it.
pub fn free_big_delta_basis<H: HopfOperad>(fa: &FreeAlgebra<H>, label: &FreeLabel<H::Label>) -> HatTensor<FreeLabel<H::Label>> {
    let h = &fa.operad;
    let n = fa.arity(label);
    let k = label.blocks.len();
    let mut out = Lin::zero();
    let splits: Vec<(Subset, Permutation)> = Subset::all(k)
        .into_iter()
        .map(|s| {
            let mut members: Vec<usize> = s.members().iter().flat_map(|&i| label.blocks[i - 1].iter().copied()).collect();
            members.sort_unstable();
            let u = Subset::new(n, members).expect("union of blocks");
            let shuffle = sigma_st(&u, &u.complement()).expect("complementary subsets").invert();
            (s, shuffle)
        })
        .collect();
    for ((a, b), c) in &h.delta_basis(&label.outer) {
        for (s, shuffle) in &splits {
            let left = h.restrict_basis(a, s);
            if left.is_zero() {
                continue;
            }
            let t = s.complement();
            let right = h.restrict_basis(b, &t);
            let side = |sub: &Subset| {
                let blocks: Vec<&Vec<usize>> = sub.members().iter().map(|&i| &label.blocks[i - 1]).collect();
                let inner: Vec<GenLabel> = sub.members().iter().map(|&i| label.inner[i - 1]).collect();
                (standardize_blocks(&blocks), inner)
            };
            let (lb, lg) = side(s);
            let (rb, rg) = side(&t);
            for (la, ca) in &left {
                for (ra, cr) in &right {
                    let l = PlethysmLabel { blocks: lb.clone(), outer: la.clone(), inner: lg.clone() };
                    let r = PlethysmLabel { blocks: rb.clone(), outer: ra.clone(), inner: rg.clone() };
                    out.add_scaled(&hat_canonicalize(fa, &[l, r], shuffle), &(c * ca * cr));
                }
            }
        }
    }
    out
}

pub fn free_big_delta<H: HopfOperad>(
    fa: &FreeAlgebra<H>,
    x: &Lin<FreeLabel<H::Label>>,
) -> Result<HatTensor<FreeLabel<H::Label>>> {
    crate::smod::arity_of(fa, x)?;
    Ok(x.flat_map(|l| free_big_delta_basis(fa, l)))
}

pub fn free_reduced_big_delta_basis<H: HopfOperad>(
    fa: &FreeAlgebra<H>,
    label: &FreeLabel<H::Label>,
) -> HatTensor<FreeLabel<H::Label>> {
    drop_trivial_factors(fa, &free_big_delta_basis(fa, label))
}

/// `(epsilon (x) id)` and `(id (x) epsilon)` on a two-factor tensor.
pub fn free_counits<H: HopfOperad>(
    fa: &FreeAlgebra<H>,
    t: &HatTensor<FreeLabel<H::Label>>,
) -> (Lin<FreeLabel<H::Label>>, Lin<FreeLabel<H::Label>>) {
    let mut left = Lin::zero();
    let mut right = Lin::zero();
    for (term, c) in t {
        let [a, b] = &term.factors[..] else { continue };
        if fa.arity(a) == 0 {
            left.add_term(b.clone(), c * empty_restriction_coeff(&fa.operad, &a.outer));
        }
        if fa.arity(b) == 0 {
            right.add_term(a.clone(), c * empty_restriction_coeff(&fa.operad, &b.outer));
        }
    }
    (left, right)
}

pub fn free_primitive_space<H: HopfOperad>(fa: &FreeAlgebra<H>, n: usize) -> PrimitiveSpace<FreeLabel<H::Label>> {
    let domain = fa.basis(n);
    let basis = if n == 0 { Vec::new() } else { kernel_of_map(&domain, |l| free_reduced_big_delta_basis(fa, l)) };
    PrimitiveSpace { operad: fa.name(), arity: n, domain, basis }
}

/// `dim Prim(P o V)(n)` for `n = 1..=n_max`.
pub fn free_primitive_dimensions<H: HopfOperad>(fa: &FreeAlgebra<H>, n_max: usize) -> Vec<usize> {
    (1..=n_max).into_par_iter().map(|n| free_primitive_space(fa, n).dim()).collect()
}

/// `dim (Q o V)(n)` from the dimensions `outer_dims[k] = dim Q(k)`:
/// a sum over set partitions of `dim Q(k)` times the generator counts.
pub fn plethysm_dimension(outer_dims: &[usize], gens: &Generators, n: usize) -> usize {
    set_partitions(n)
        .iter()
        .map(|blocks| {
            let q = outer_dims.get(blocks.len()).copied().unwrap_or(0);
            q * blocks.iter().map(|b| gens.dim(b.len())).product::<usize>()
        })
        .sum()
}

fn free_cex<H: HopfOperad>(
    fa: &FreeAlgebra<H>,
    l: &FreeLabel<H::Label>,
    lhs: &HatTensor<FreeLabel<H::Label>>,
    rhs: &HatTensor<FreeLabel<H::Label>>,
) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample {
        inputs: fa.format_label(l),
        lhs: format_hat(fa, lhs),
        rhs: format_hat(fa, rhs),
    })
}

/// Coassociativity of `Delta` on every basis label of arity at most `cfg.n_max`.
pub fn check_free_coassoc<H: HopfOperad>(fa: &FreeAlgebra<H>, cfg: &CheckConfig) -> LawReport {
    let mut rb = ReportBuilder::new(&fa.name(), "coassoc", [0, cfg.n_max]);
    let cases: Vec<FreeLabel<H::Label>> = (0..=cfg.n_max).flat_map(|n| fa.basis(n)).collect();
    rb.absorb(run_cases(&cases, |l| {
        let d = free_big_delta_basis(fa, l);
        let lhs = expand_factor_with(fa, &d, 0, |f| free_big_delta_basis(fa, f));
        let rhs = expand_factor_with(fa, &d, 1, |f| free_big_delta_basis(fa, f));
        free_cex(fa, l, &lhs, &rhs)
    }));
    rb.finish()
}

/// Both counit laws on every basis label of arity at most `cfg.n_max`.
pub fn check_free_counit<H: HopfOperad>(fa: &FreeAlgebra<H>, cfg: &CheckConfig) -> LawReport {
    let mut rb = ReportBuilder::new(&fa.name(), "counit", [0, cfg.n_max]);
    let cases: Vec<FreeLabel<H::Label>> = (0..=cfg.n_max).flat_map(|n| fa.basis(n)).collect();
    rb.absorb(run_cases(&cases, |l| {
        let x = Lin::basis(l.clone());
        let (left, right) = free_counits(fa, &free_big_delta_basis(fa, l));
        [("left", left), ("right", right)].into_iter().find(|(_, got)| *got != x).map(|(side, got)| Counterexample {
            inputs: format!("{} ({side} counit)", fa.format_label(l)),
            lhs: format_element(fa, &got),
            rhs: format_element(fa, &x),
        })
    }));
    rb.finish()
}

/// `dim Prim(P o V)(n)` against the plethysm count built from
/// `prim_dims[k] = dim Prim(P)(k)`, for `n = 1..=cfg.n_max`.
pub fn check_free_primitive_dimensions<H: HopfOperad>(
    fa: &FreeAlgebra<H>,
    prim_dims: &[usize],
    cfg: &CheckConfig,
) -> LawReport {
    let mut rb = ReportBuilder::new(&fa.name(), "primitive_plethysm_count", [1, cfg.n_max]);
    let got = free_primitive_dimensions(fa, cfg.n_max);
    for (n, &g) in (1..).zip(&got) {
        let want = plethysm_dimension(prim_dims, &fa.gens, n);
        rb.record(g == want, || Counterexample {
            inputs: format!("n={n}"),
            lhs: g.to_string(),
            rhs: want.to_string(),
        });
    }
    rb.finish()
}

pub fn free_is_primitive<H: HopfOperad>(fa: &FreeAlgebra<H>, x: &Lin<FreeLabel<H::Label>>) -> Result<bool> {
    Ok(drop_trivial_factors(fa, &free_big_delta(fa, x)?).is_zero())
}
