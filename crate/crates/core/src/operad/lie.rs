//! Multilinear Lie polynomials in the left-normed basis anchored at the
//! smallest variable, and the Lie operad realized inside `As`.
//!
//! Every multilinear Lie polynomial on a variable set with minimum `m` is a
//! unique combination of `[[...[x_m, x_{d_1}], ...], x_{d_k}]`. Such a bracket
//! expands to words among which exactly one starts with `m`, namely
//! `m d_1 ... d_k` with coefficient 1. So the coordinates of a Lie polynomial
//! are the coefficients of its words that start with the minimum.

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::perm::{all_permutations, Permutation, Subset};
use crate::smod::SModule;
use crate::Rng;

use super::{random_permutation, Assoc, Operad};

pub type Word = Vec<usize>;

/// The left-normed bracket `[[...[anchor, rest_1], ...], rest_k]`. In
/// canonical form `anchor` is the smallest variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DynkinBlock {
    pub anchor: usize,
    pub rest: Vec<usize>,
}

impl DynkinBlock {
    pub fn singleton(v: usize) -> Self {
        DynkinBlock { anchor: v, rest: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rest.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.rest.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.anchor).chain(self.rest.iter().copied())
    }

    pub fn words(&self) -> Lin<Word> {
        left_normed_words(self.anchor, &self.rest)
    }

    /// Applies `f` to every variable. An order-preserving `f` keeps the block
    /// canonical; otherwise the result is re-expanded in the anchored basis.
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Lin<DynkinBlock> {
        let anchor = f(self.anchor);
        let rest: Vec<usize> = self.rest.iter().map(|&v| f(v)).collect();
        if rest.iter().all(|&v| v > anchor) {
            return Lin::basis(DynkinBlock { anchor, rest });
        }
        straighten_words(&left_normed_words(anchor, &rest))
    }

    pub fn format(&self) -> String {
        let mut s = self.anchor.to_string();
        for r in &self.rest {
            s = format!("[{s},{r}]");
        }
        s
    }
}

pub fn left_normed_words(anchor: usize, rest: &[usize]) -> Lin<Word> {
    let mut words = Lin::basis(vec![anchor]);
    for &x in rest {
        let mut next = Lin::zero();
        for (w, c) in &words {
            let mut right = w.clone();
            right.push(x);
            next.add_term(right, c.clone());
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(x);
            left.extend_from_slice(w);
            next.add_term(left, -c.clone());
        }
        words = next;
    }
    words
}

/// Reads anchored coordinates off the words that start with the minimal
/// letter. Correct whenever the input is a Lie polynomial.
pub fn straighten_words(words: &Lin<Word>) -> Lin<DynkinBlock> {
    let Some(min) = words.keys().filter_map(|w| w.iter().min()).min().copied() else {
        return Lin::zero();
    };
    words
        .iter()
        .filter(|(w, _)| w[0] == min)
        .map(|(w, c)| (DynkinBlock { anchor: min, rest: w[1..].to_vec() }, c.clone()))
        .collect()
}

/// Word expansion of a combination of blocks.
pub fn lie_words(x: &Lin<DynkinBlock>) -> Lin<Word> {
    x.flat_map(DynkinBlock::words)
}

/// `[a, b]` for blocks on disjoint variable sets.
///
/// With the global minimum in `a`, `[a, w_1 ... w_k]` under the right adjoint
/// action equals the left-normed bracket of `a` followed by `w_1, ..., w_k`,
/// and a Lie polynomial acts as its word expansion.
pub fn bracket_blocks(a: &DynkinBlock, b: &DynkinBlock) -> Lin<DynkinBlock> {
    if a.anchor > b.anchor {
        return -&bracket_blocks(b, a);
    }
    let mut out = Lin::zero();
    for (w, c) in &b.words() {
        let mut rest = a.rest.clone();
        rest.extend_from_slice(w);
        out.add_term(DynkinBlock { anchor: a.anchor, rest }, c.clone());
    }
    out
}

pub fn bracket(x: &Lin<DynkinBlock>, y: &Lin<DynkinBlock>) -> Lin<DynkinBlock> {
    x.bilinear(y, bracket_blocks)
}

/// A binary bracket expression over variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Var(usize),
    Bracket(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn parse(s: &str) -> Result<BracketTree> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut at = 0;
        let t = Self::parse_at(&chars, &mut at)?;
        if at != chars.len() {
            return Err(Error::Parse(format!("trailing input in bracket {s:?}")));
        }
        Ok(t)
    }

    fn parse_at(chars: &[char], at: &mut usize) -> Result<BracketTree> {
        match chars.get(*at) {
            Some('[') => {
                *at += 1;
                let l = Self::parse_at(chars, at)?;
                if chars.get(*at) != Some(&',') {
                    return Err(Error::Parse("expected ',' in bracket".to_string()));
                }
                *at += 1;
                let r = Self::parse_at(chars, at)?;
                if chars.get(*at) != Some(&']') {
                    return Err(Error::Parse("expected ']' in bracket".to_string()));
                }
                *at += 1;
                Ok(BracketTree::Bracket(Box::new(l), Box::new(r)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = *at;
                while chars.get(*at).is_some_and(|c| c.is_ascii_digit()) {
                    *at += 1;
                }
                let s: String = chars[start..*at].iter().collect();
                s.parse().map(BracketTree::Var).map_err(|_| Error::Parse(format!("bad variable {s:?}")))
            }
            _ => Err(Error::Parse("expected a variable or '['".to_string())),
        }
    }

    pub fn variables(&self, out: &mut Vec<usize>) {
        match self {
            BracketTree::Var(v) => out.push(*v),
            BracketTree::Bracket(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }

    /// Expansion into words by `[a, b] = ab - ba`.
    pub fn words(&self) -> Lin<Word> {
        match self {
            BracketTree::Var(v) => Lin::basis(vec![*v]),
            BracketTree::Bracket(a, b) => {
                let (wa, wb) = (a.words(), b.words());
                let ab = wa.bilinear(&wb, |x, y| Lin::basis([x.as_slice(), y.as_slice()].concat()));
                let ba = wb.bilinear(&wa, |x, y| Lin::basis([x.as_slice(), y.as_slice()].concat()));
                &ab - &ba
            }
        }
    }

    /// The Lie polynomial in the anchored basis.
    pub fn to_blocks(&self) -> Lin<DynkinBlock> {
        match self {
            BracketTree::Var(v) => Lin::basis(DynkinBlock::singleton(*v)),
            BracketTree::Bracket(a, b) => bracket(&a.to_blocks(), &b.to_blocks()),
        }
    }
}

/// The permutation of the word `w`: variable `w_k` sits at position `k`.
pub fn word_to_perm(w: &[usize]) -> Permutation {
    let mut s = vec![0; w.len()];
    for (k, &v) in w.iter().enumerate() {
        s[v - 1] = k + 1;
    }
    Permutation::new(s).expect("word uses each variable once")
}

pub fn perm_to_word(p: &Permutation) -> Word {
    p.invert().into_vec()
}

/// Expands a left-normed bracket on `[m]` into `As(m)`.
pub fn lie_dynkin_expand(d: &DynkinBlock) -> Lin<Permutation> {
    d.words().map_keys(|w| word_to_perm(w))
}

/// Coordinates of `x` in the anchored bracket basis, or `None` when `x` is not
/// a Lie element.
pub fn lie_straighten(x: &Lin<Permutation>) -> Option<Lin<DynkinBlock>> {
    let words = x.map_keys(perm_to_word);
    if words.keys().any(|w| w.is_empty()) {
        return None;
    }
    let coords = straighten_words(&words);
    (lie_words(&coords) == words).then_some(coords)
}

/// The Lie operad as the span of bracket expansions inside `As`. It has no
/// arity-0 part, so it is not connected.
#[derive(Clone, Debug, Default)]
pub struct LieInAs {
    assoc: Assoc,
}

impl LieInAs {
    pub fn new() -> Self {
        LieInAs { assoc: Assoc::new() }
    }

    fn back(&self, x: &Lin<Permutation>) -> Lin<DynkinBlock> {
        straighten_words(&x.map_keys(perm_to_word))
    }
}

impl SModule for LieInAs {
    type Label = DynkinBlock;

    fn arity(&self, label: &DynkinBlock) -> usize {
        label.len()
    }

    fn basis(&self, n: usize) -> Vec<DynkinBlock> {
        if n == 0 {
            return Vec::new();
        }
        all_permutations(n - 1)
            .into_iter()
            .map(|p| DynkinBlock { anchor: 1, rest: p.as_slice().iter().map(|v| v + 1).collect() })
            .collect()
    }

    fn act_basis(&self, label: &DynkinBlock, sigma: &Permutation) -> Lin<DynkinBlock> {
        let inv = sigma.invert();
        label.rename(|v| inv.apply(v))
    }

    fn format_label(&self, label: &DynkinBlock) -> String {
        format!("{{{}}}", label.format())
    }
}

impl Operad for LieInAs {
    fn name(&self) -> String {
        "lie".to_string()
    }

    fn unit(&self) -> DynkinBlock {
        DynkinBlock::singleton(1)
    }

    fn nullary(&self) -> Option<DynkinBlock> {
        None
    }

    fn compose_basis(&self, x: &DynkinBlock, i: usize, y: &DynkinBlock) -> Lin<DynkinBlock> {
        let (ex, ey) = (lie_dynkin_expand(x), lie_dynkin_expand(y));
        self.back(&ex.bilinear(&ey, |a, b| self.assoc.compose_basis(a, i, b)))
    }

    /// Computed inside `As`; the arity-0 part is dropped since `Lie(0) = 0`.
    fn restrict_basis(&self, x: &DynkinBlock, s: &Subset) -> Lin<DynkinBlock> {
        if s.is_empty() {
            return Lin::zero();
        }
        self.back(&lie_dynkin_expand(x).flat_map(|p| self.assoc.restrict_basis(p, s)))
    }

    fn parse_label(&self, s: &str) -> Result<Lin<DynkinBlock>> {
        let inner = s.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s.trim());
        let tree = BracketTree::parse(inner)?;
        let mut vars = Vec::new();
        tree.variables(&mut vars);
        Permutation::new(vars).map_err(|_| Error::Parse(format!("variables of {s:?} are not 1..n")))?;
        Ok(tree.to_blocks())
    }

    fn random_basis(&self, n: usize, rng: &mut Rng) -> Option<DynkinBlock> {
        if n == 0 {
            return None;
        }
        let p = random_permutation(n - 1, rng);
        Some(DynkinBlock { anchor: 1, rest: p.as_slice().iter().map(|v| v + 1).collect() })
    }
}
