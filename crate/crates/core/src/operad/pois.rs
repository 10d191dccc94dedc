//! The Poisson operad `Com o Lie`: commutative products of Lie brackets.
//!
//! A basis label is a product of left-normed brackets, one per block of a set
//! partition of `[n]`, each anchored at its block minimum. Products of
//! polynomials merge blocks; brackets of polynomials follow the biderivation
//! rule `[f, gh] = [f, g] h + g [f, h]`.

use std::collections::HashMap;
use std::sync::RwLock;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::perm::{all_permutations, Permutation, Subset};
use crate::smod::{set_partitions, SModule};
use crate::Rng;

use super::lie::{bracket_blocks, BracketTree, DynkinBlock};
use super::{random_permutation, Operad};

/// A product of brackets on pairwise disjoint variable sets, sorted by anchor.
/// The empty product is the constant `1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PoisLabel(pub Vec<DynkinBlock>);

pub type PoisPoly = Lin<PoisLabel>;
pub type PoisTensor = Lin<(PoisLabel, PoisLabel)>;

impl PoisLabel {
    pub fn one() -> Self {
        PoisLabel(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        PoisLabel(vec![DynkinBlock::singleton(v)])
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(DynkinBlock::len).sum()
    }

    pub fn blocks(&self) -> &[DynkinBlock] {
        &self.0
    }

    fn from_blocks(mut blocks: Vec<DynkinBlock>) -> Self {
        blocks.sort();
        PoisLabel(blocks)
    }

    pub fn format(&self) -> String {
        self.0.iter().map(|b| format!("{{{}}}", b.format())).collect()
    }
}

pub fn mul_mono(a: &PoisLabel, b: &PoisLabel) -> PoisLabel {
    PoisLabel::from_blocks(a.0.iter().chain(&b.0).cloned().collect())
}

pub fn mul(x: &PoisPoly, y: &PoisPoly) -> PoisPoly {
    x.bilinear(y, |a, b| Lin::basis(mul_mono(a, b)))
}

/// Biderivation extension of the bracket of blocks.
pub fn bracket_mono(a: &PoisLabel, b: &PoisLabel) -> PoisPoly {
    let mut out = Lin::zero();
    for (i, ai) in a.0.iter().enumerate() {
        for (j, bj) in b.0.iter().enumerate() {
            let others: Vec<DynkinBlock> = a
                .0
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, x)| x.clone())
                .chain(b.0.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()))
                .collect();
            for (c, coef) in &bracket_blocks(ai, bj) {
                let mut blocks = others.clone();
                blocks.push(c.clone());
                out.add_term(PoisLabel::from_blocks(blocks), coef.clone());
            }
        }
    }
    out
}

pub fn bracket(x: &PoisPoly, y: &PoisPoly) -> PoisPoly {
    x.bilinear(y, bracket_mono)
}

/// Product in the tensor square, componentwise.
pub fn tensor_mul(x: &PoisTensor, y: &PoisTensor) -> PoisTensor {
    x.bilinear(y, |(a1, b1), (a2, b2)| Lin::basis((mul_mono(a1, a2), mul_mono(b1, b2))))
}

/// Bracket in the tensor square of Poisson algebras:
/// `[a1 b1, a2 b2] = [a1, a2] (x) b1 b2 + a1 a2 (x) [b1, b2]`.
pub fn tensor_bracket(x: &PoisTensor, y: &PoisTensor) -> PoisTensor {
    x.bilinear(y, |(a1, b1), (a2, b2)| {
        let mut out = Lin::zero();
        let b12 = mul_mono(b1, b2);
        for (l, c) in &bracket_mono(a1, a2) {
            out.add_term((l.clone(), b12.clone()), c.clone());
        }
        let a12 = mul_mono(a1, a2);
        for (r, c) in &bracket_mono(b1, b2) {
            out.add_term((a12.clone(), r.clone()), c.clone());
        }
        out
    })
}

/// Evaluates a left-normed bracket after substituting a polynomial for each
/// variable.
fn eval_left_normed<T: Ord + Clone>(
    block: &DynkinBlock,
    leaf: &mut impl FnMut(usize) -> Lin<T>,
    br: impl Fn(&Lin<T>, &Lin<T>) -> Lin<T>,
) -> Lin<T> {
    let mut acc = leaf(block.anchor);
    for &r in &block.rest {
        if acc.is_zero() {
            break;
        }
        acc = br(&acc, &leaf(r));
    }
    acc
}

#[derive(Debug, Default)]
pub struct Pois {
    delta_cache: RwLock<HashMap<PoisLabel, PoisTensor>>,
}

impl Clone for Pois {
    fn clone(&self) -> Self {
        Pois::new()
    }
}

impl Pois {
    pub fn new() -> Self {
        Pois::default()
    }

    /// The product `e_2 = x_1 x_2`.
    pub fn product(&self) -> PoisLabel {
        PoisLabel(vec![DynkinBlock::singleton(1), DynkinBlock::singleton(2)])
    }

    /// The bracket `[x_1, x_2]`.
    pub fn lie_bracket(&self) -> PoisLabel {
        PoisLabel(vec![DynkinBlock { anchor: 1, rest: vec![2] }])
    }

    /// The coproduct `delta` with `x_j -> x_j (x) x_j`, products and brackets
    /// evaluated in the tensor square.
    pub fn delta_label(&self, l: &PoisLabel) -> PoisTensor {
        if let Some(hit) = self.delta_cache.read().expect("cache lock").get(l) {
            return hit.clone();
        }
        let mut acc: PoisTensor = Lin::basis((PoisLabel::one(), PoisLabel::one()));
        for b in &l.0 {
            let mut leaf = |v: usize| Lin::basis((PoisLabel::var(v), PoisLabel::var(v)));
            let ev = eval_left_normed(b, &mut leaf, tensor_bracket);
            acc = tensor_mul(&acc, &ev);
        }
        self.delta_cache.write().expect("cache lock").insert(l.clone(), acc.clone());
        acc
    }
}

fn rename_mono(l: &PoisLabel, f: impl Fn(usize) -> usize) -> PoisPoly {
    let mut acc: PoisPoly = Lin::basis(PoisLabel::one());
    for b in &l.0 {
        let renamed = b.rename(&f).map_keys(|d| PoisLabel(vec![d.clone()]));
        acc = mul(&acc, &renamed);
    }
    acc
}

impl SModule for Pois {
    type Label = PoisLabel;

    fn arity(&self, label: &PoisLabel) -> usize {
        label.degree()
    }

    fn basis(&self, n: usize) -> Vec<PoisLabel> {
        let mut out = Vec::new();
        for blocks in set_partitions(n) {
            let mut acc: Vec<Vec<DynkinBlock>> = vec![Vec::new()];
            for b in &blocks {
                let orders = all_permutations(b.len() - 1);
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        orders.iter().map(move |p| {
                            let mut v = prefix.clone();
                            v.push(DynkinBlock { anchor: b[0], rest: p.as_slice().iter().map(|&k| b[k]).collect() });
                            v
                        })
                    })
                    .collect();
            }
            out.extend(acc.into_iter().map(PoisLabel));
        }
        out.sort();
        out
    }

    fn act_basis(&self, label: &PoisLabel, sigma: &Permutation) -> Lin<PoisLabel> {
        let inv = sigma.invert();
        rename_mono(label, |v| inv.apply(v))
    }

    fn format_label(&self, label: &PoisLabel) -> String {
        label.format()
    }
}

impl Operad for Pois {
    fn name(&self) -> String {
        "pois".to_string()
    }

    fn unit(&self) -> PoisLabel {
        PoisLabel::var(1)
    }

    fn nullary(&self) -> Option<PoisLabel> {
        Some(PoisLabel::one())
    }

    fn compose_basis(&self, x: &PoisLabel, i: usize, y: &PoisLabel) -> Lin<PoisLabel> {
        let m = y.degree();
        let outer = |v: usize| if v < i { v } else { v + m - 1 };
        let inner = |w: usize| w + i - 1;
        let shift = |b: &DynkinBlock, f: &dyn Fn(usize) -> usize| DynkinBlock {
            anchor: f(b.anchor),
            rest: b.rest.iter().map(|&v| f(v)).collect(),
        };
        let y_shifted = PoisLabel::from_blocks(y.0.iter().map(|b| shift(b, &inner)).collect());
        let hit = x.0.iter().position(|b| b.variables().any(|v| v == i)).expect("slot in range");
        let others = PoisLabel::from_blocks(
            x.0.iter().enumerate().filter(|&(k, _)| k != hit).map(|(_, b)| shift(b, &outer)).collect(),
        );
        let block = &x.0[hit];
        if block.is_singleton() {
            return Lin::basis(mul_mono(&others, &y_shifted));
        }
        let mut leaf = |v: usize| {
            if v == i {
                Lin::basis(y_shifted.clone())
            } else {
                Lin::basis(PoisLabel::var(outer(v)))
            }
        };
        let ev = eval_left_normed(block, &mut leaf, bracket);
        ev.map_keys(|l| mul_mono(l, &others))
    }

    /// Zero unless every bracket block lies inside `S` (a bracket with the
    /// constant `1` vanishes); otherwise the kept blocks, renumbered.
    fn restrict_basis(&self, x: &PoisLabel, s: &Subset) -> Lin<PoisLabel> {
        let mut rank = vec![0usize; s.n() + 1];
        for (k, &v) in s.members().iter().enumerate() {
            rank[v] = k + 1;
        }
        let mut kept = Vec::new();
        for b in &x.0 {
            let inside = b.variables().filter(|&v| rank[v] > 0).count();
            if inside < b.len() {
                if b.is_singleton() {
                    continue;
                }
                return Lin::zero();
            }
            kept.push(DynkinBlock { anchor: rank[b.anchor], rest: b.rest.iter().map(|&v| rank[v]).collect() });
        }
        Lin::basis(PoisLabel(kept))
    }

    fn parse_label(&self, s: &str) -> Result<Lin<PoisLabel>> {
        let s = s.trim();
        let mut acc: PoisPoly = Lin::basis(PoisLabel::one());
        let mut vars = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest.strip_prefix('{').ok_or_else(|| Error::Parse(format!("expected '{{' in {s:?}")))?;
            let close = body.find('}').ok_or_else(|| Error::Parse(format!("unclosed block in {s:?}")))?;
            let tree = BracketTree::parse(&body[..close])?;
            tree.variables(&mut vars);
            let block = tree.to_blocks().map_keys(|d| PoisLabel(vec![d.clone()]));
            acc = mul(&acc, &block);
            rest = body[close + 1..].trim_start();
        }
        if vars.is_empty() {
            return Err(Error::Parse(format!("empty Poisson label {s:?}")));
        }
        Permutation::new(vars).map_err(|_| Error::Parse(format!("variables of {s:?} are not 1..n")))?;
        Ok(acc)
    }

    fn random_basis(&self, n: usize, rng: &mut Rng) -> Option<PoisLabel> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for v in 1..=n {
            let k = rng.gen_range(0..=blocks.len());
            if k == blocks.len() {
                blocks.push(vec![v]);
            } else {
                blocks[k].push(v);
            }
        }
        let label = blocks
            .iter()
            .map(|b| {
                let p = random_permutation(b.len() - 1, rng);
                DynkinBlock { anchor: b[0], rest: p.as_slice().iter().map(|&k| b[k]).collect() }
            })
            .collect();
        Some(PoisLabel::from_blocks(label))
    }
}
