//! Permutations in one-line notation and the combinatorics built on them:
//! standardization, operadic partial composition, block permutations,
//! restrictions to subsets, shuffles and their unique decompositions.
//!
//! Product convention: `a.multiply(&b)` is the map `i -> a(b(i))`. The right
//! action `m . s` of a permutation on `k[S_n]` is `m.multiply(&s)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// An element of `S_n` written as the sequence `(s(1), ..., s(n))`.
///
/// The empty sequence is the unique element of `S_0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut seen = vec![false; n + 1];
        for &v in &seq {
            if v == 0 || v > n || seen[v] {
                return invalid(format!("{seq:?} is not a permutation of 1..={n}"));
            }
            seen[v] = true;
        }
        Ok(Permutation(seq))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Value at 1-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn multiply(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return invalid(format!(
                "cannot multiply permutations of lengths {} and {}",
                self.len(),
                other.len()
            ));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j - 1]).collect())
    }

    pub fn invert(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Operadic partial composition `self o_i tau`: the block `tau` replaces
    /// the value at position `i`, shifted by `self(i) - 1`; larger values of
    /// `self` are shifted up by `len(tau) - 1`.
    ///
    /// An empty `tau` deletes position `i` and standardizes.
    pub fn partial_compose(&self, i: usize, tau: &Permutation) -> Result<Permutation> {
        let n = self.len();
        if i == 0 || i > n {
            return invalid(format!("composition slot {i} out of range 1..={n}"));
        }
        let m = tau.len();
        let pivot = self.0[i - 1];
        let mut out = Vec::with_capacity(n + m - 1);
        let shift = |v: usize| if v < pivot { v } else { v + m - 1 };
        out.extend(self.0[..i - 1].iter().map(|&v| shift(v)));
        out.extend(tau.0.iter().map(|&t| t + pivot - 1));
        out.extend(self.0[i..].iter().map(|&v| shift(v)));
        Ok(Permutation(out))
    }

    /// `restrict(self, [n] \ {i})`.
    pub fn delta_i(&self, i: usize) -> Result<Permutation> {
        let n = self.len();
        if i == 0 || i > n {
            return invalid(format!("degeneracy index {i} out of range 1..={n}"));
        }
        let rest: Vec<usize> = self
            .0
            .iter()
            .enumerate()
            .filter(|&(k, _)| k + 1 != i)
            .map(|(_, &v)| v)
            .collect();
        Ok(standardize_unchecked(&rest))
    }

    /// Standardization of the values at the positions of `s`.
    pub fn restrict(&self, s: &Subset) -> Result<Permutation> {
        if s.n() != self.len() {
            return invalid(format!(
                "subset of [{}] used to restrict a permutation of length {}",
                s.n(),
                self.len()
            ));
        }
        Ok(self.restrict_positions(s.members()))
    }

    pub(crate) fn restrict_positions(&self, positions: &[usize]) -> Permutation {
        let vals: Vec<usize> = positions.iter().map(|&p| self.0[p - 1]).collect();
        standardize_unchecked(&vals)
    }

    /// `self` on positions `1..=p`, `other` shifted by `p` afterwards.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let p = self.len();
        let mut out = self.0.clone();
        out.extend(other.0.iter().map(|&v| v + p));
        Permutation(out)
    }

    /// Replaces the value `self(i)` by a block `Id_{l_i}` (the permutation
    /// `self(l_1, ..., l_k)` used for the symmetry isomorphism).
    pub fn block_permutation(&self, lengths: &[usize]) -> Result<Permutation> {
        let k = self.len();
        if lengths.len() != k {
            return invalid(format!(
                "block permutation of S_{k} needs {k} lengths, got {}",
                lengths.len()
            ));
        }
        let inv = self.invert();
        // offsets[v] = sum of block lengths whose value is < v
        let mut offsets = vec![0usize; k + 1];
        for v in 1..=k {
            offsets[v] = offsets[v - 1] + lengths[inv.0[v - 1] - 1];
        }
        let mut out = Vec::with_capacity(offsets[k]);
        for (i, &len) in lengths.iter().enumerate() {
            let start = offsets[self.0[i] - 1];
            out.extend(start + 1..=start + len);
        }
        Ok(Permutation(out))
    }

    /// Unique decomposition `self = (s_1 x s_2) . alpha` with `alpha` a
    /// `(p, q)`-shuffle.
    pub fn shuffle_decompose(
        &self,
        p: usize,
        q: usize,
    ) -> Result<(Permutation, Permutation, Permutation)> {
        if p + q != self.len() {
            return invalid(format!(
                "cannot split a permutation of length {} as ({p},{q})",
                self.len()
            ));
        }
        let (mut parts, alpha) = self.multi_shuffle_decompose(&[p, q]);
        let second = parts.pop().expect("two parts");
        let first = parts.pop().expect("two parts");
        Ok((first, second, alpha))
    }

    /// Decomposes `self = (s_1 x ... x s_m) . alpha` where the blocks have the
    /// given sizes and `alpha` is a multi-shuffle: `alpha^{-1}` is a
    /// concatenation of increasing runs of those sizes.
    ///
    /// Panics if the sizes do not add up to `self.len()`.
    pub fn multi_shuffle_decompose(&self, sizes: &[usize]) -> (Vec<Permutation>, Permutation) {
        let n = self.len();
        assert_eq!(sizes.iter().sum::<usize>(), n, "block sizes must sum to {n}");
        // block index of each value
        let mut block_of_value = vec![0usize; n + 1];
        let mut starts = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for (b, &s) in sizes.iter().enumerate() {
            starts.push(acc);
            for v in acc + 1..=acc + s {
                block_of_value[v] = b;
            }
            acc += s;
        }
        let mut parts: Vec<Vec<usize>> = sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        let mut alpha = vec![0usize; n];
        for (pos, &v) in self.0.iter().enumerate() {
            let b = block_of_value[v];
            parts[b].push(v - starts[b]);
            alpha[pos] = starts[b] + parts[b].len();
        }
        (parts.into_iter().map(Permutation).collect(), Permutation(alpha))
    }

    /// Whether `self` is a multi-shuffle for the given block sizes.
    pub fn is_multi_shuffle(&self, sizes: &[usize]) -> bool {
        if sizes.iter().sum::<usize>() != self.len() {
            return false;
        }
        let inv = self.invert();
        let mut at = 0;
        for &s in sizes {
            if inv.0[at..at + s].windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            at += s;
        }
        true
    }

    pub fn is_shuffle(&self, p: usize, q: usize) -> bool {
        self.is_multi_shuffle(&[p, q])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [a1,...,an], got {s:?}")))?;
        let seq = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(seq)
    }
}

/// The unique permutation with the same relative order as `s`.
pub fn standardize(s: &[usize]) -> Result<Permutation> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return invalid(format!("standardize: repeated entries in {s:?}"));
    }
    Ok(standardize_unchecked(s))
}

pub(crate) fn standardize_unchecked(s: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_unstable_by_key(|&k| s[k]);
    let mut out = vec![0; s.len()];
    for (rank, k) in order.into_iter().enumerate() {
        out[k] = rank + 1;
    }
    Permutation(out)
}

/// `zeta_{p,q} = (q+1, ..., q+p, 1, ..., q)`.
pub fn zeta(p: usize, q: usize) -> Permutation {
    Permutation((q + 1..=q + p).chain(1..=q).collect())
}

/// The sequence `(s_1, ..., s_k, t_1, ..., t_{n-k})` for a partition `S u T = [n]`.
pub fn sigma_st(s: &Subset, t: &Subset) -> Result<Permutation> {
    if s.n() != t.n() {
        return invalid("sigma_st: subsets of different ground sets");
    }
    let seq: Vec<usize> = s.members().iter().chain(t.members()).copied().collect();
    if seq.len() != s.n() {
        return invalid(format!("sigma_st: {s} and {t} do not partition [{}]", s.n()));
    }
    Permutation::new(seq).map_err(|_| {
        Error::InvalidInput(format!("sigma_st: {s} and {t} do not partition [{}]", s.n()))
    })
}

/// All `(p, q)`-shuffles, ordered lexicographically by their increasing halves.
pub fn enumerate_shuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    combinations(n, p)
        .into_iter()
        .map(|left| {
            let s = Subset::from_sorted_unchecked(n, left);
            let t = s.complement();
            sigma_st(&s, &t).expect("complementary subsets").invert()
        })
        .collect()
}

/// All permutations of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Sorted `k`-element subsets of `1..=n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for v in start..=n + 1 - need {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// A subset of `[n] = {1, ..., n}`, stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Subset {
    n: usize,
    members: Vec<usize>,
}

impl Subset {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return invalid(format!("repeated subset members {members:?}"));
        }
        if members.iter().any(|&m| m == 0 || m > n) {
            return invalid(format!("{members:?} is not a subset of [{n}]"));
        }
        Ok(Subset { n, members })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subset { n, members }
    }

    pub fn full(n: usize) -> Self {
        Subset { n, members: (1..=n).collect() }
    }

    pub fn empty(n: usize) -> Self {
        Subset { n, members: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn complement(&self) -> Subset {
        let members = (1..=self.n).filter(|v| !self.contains(*v)).collect();
        Subset { n: self.n, members }
    }

    /// All `2^n` subsets of `[n]`, by size and then lexicographically.
    pub fn all(n: usize) -> Vec<Subset> {
        (0..=n)
            .flat_map(|k| combinations(n, k))
            .map(|m| Subset { n, members: m })
            .collect()
    }

    /// `S_1 * ... * S_k`: the subset of `[l_1 + ... + l_k]` made of the
    /// shifted copies of each `S_i`.
    pub fn star(parts: &[Subset]) -> Subset {
        let mut members = Vec::new();
        let mut offset = 0;
        for p in parts {
            members.extend(p.members.iter().map(|&m| m + offset));
            offset += p.n;
        }
        Subset { n: offset, members }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
