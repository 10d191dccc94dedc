use std::fmt::Write;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::perm::{all_permutations, Permutation, Subset};
use crate::smod::SModule;
use crate::Rng;

use super::{random_permutation, Operad};

/// A planar tree with labelled leaves. `Nil` is the empty tree `1_0` and only
/// ever appears as a whole label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MagTree {
    Nil,
    Leaf(usize),
    Node(Vec<MagTree>),
}

impl MagTree {
    pub fn leaves(&self) -> usize {
        match self {
            MagTree::Nil => 0,
            MagTree::Leaf(_) => 1,
            MagTree::Node(c) => c.iter().map(MagTree::leaves).sum(),
        }
    }

    fn map_leaves(&self, f: &mut impl FnMut(usize) -> MagTree) -> MagTree {
        match self {
            MagTree::Nil => MagTree::Nil,
            MagTree::Leaf(v) => f(*v),
            MagTree::Node(c) => MagTree::Node(c.iter().map(|t| t.map_leaves(f)).collect()),
        }
    }

    /// Drops `Nil` subtrees and splices out nodes left with one child.
    fn prune(self) -> MagTree {
        match self {
            MagTree::Node(children) => {
                let mut kept: Vec<MagTree> =
                    children.into_iter().map(MagTree::prune).filter(|t| *t != MagTree::Nil).collect();
                match kept.len() {
                    0 => MagTree::Nil,
                    1 => kept.pop().expect("one child"),
                    _ => MagTree::Node(kept),
                }
            }
            t => t,
        }
    }

    fn max_node_arity(&self) -> usize {
        match self {
            MagTree::Node(c) => c.iter().map(MagTree::max_node_arity).max().unwrap_or(0).max(c.len()),
            _ => 0,
        }
    }

    fn leaf_labels(&self, out: &mut Vec<usize>) {
        match self {
            MagTree::Nil => {}
            MagTree::Leaf(v) => out.push(*v),
            MagTree::Node(c) => c.iter().for_each(|t| t.leaf_labels(out)),
        }
    }

    fn write_sexpr(&self, out: &mut String) {
        match self {
            MagTree::Nil => out.push_str("()"),
            MagTree::Leaf(v) => {
                let _ = write!(out, "{v}");
            }
            MagTree::Node(c) => {
                let _ = write!(out, "(v{}", c.len());
                for t in c {
                    out.push(' ');
                    t.write_sexpr(out);
                }
                out.push(')');
            }
        }
    }
}

/// The free operad on one operation of each arity `2..=max_arity`, with
/// diagonal coproduct.
#[derive(Clone, Debug)]
pub struct Mag {
    max_arity: usize,
}

impl Mag {
    /// Panics if `max_arity < 2`.
    pub fn new(max_arity: usize) -> Self {
        assert!(max_arity >= 2, "Mag_N needs N >= 2");
        Mag { max_arity }
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// The generator of arity `k` applied to `x_1, ..., x_k` in order.
    pub fn corolla(&self, k: usize) -> MagTree {
        match k {
            0 => MagTree::Nil,
            1 => MagTree::Leaf(1),
            _ => MagTree::Node((1..=k).map(MagTree::Leaf).collect()),
        }
    }

    /// Planar shapes with `n` leaves, leaves numbered left to right.
    pub fn shapes(&self, n: usize) -> Vec<MagTree> {
        let raw = self.raw_shapes(n);
        raw.into_iter()
            .map(|t| {
                let mut next = 0;
                t.map_leaves(&mut |_| {
                    next += 1;
                    MagTree::Leaf(next)
                })
            })
            .collect()
    }

    fn raw_shapes(&self, n: usize) -> Vec<MagTree> {
        match n {
            0 => vec![MagTree::Nil],
            1 => vec![MagTree::Leaf(0)],
            _ => {
                let mut out = Vec::new();
                for k in 2..=self.max_arity.min(n) {
                    for sizes in compositions(n, k) {
                        let mut acc: Vec<Vec<MagTree>> = vec![Vec::new()];
                        for &s in &sizes {
                            let subs = self.raw_shapes(s);
                            acc = acc
                                .into_iter()
                                .flat_map(|prefix| {
                                    subs.iter().map(move |t| {
                                        let mut p = prefix.clone();
                                        p.push(t.clone());
                                        p
                                    })
                                })
                                .collect();
                        }
                        out.extend(acc.into_iter().map(MagTree::Node));
                    }
                }
                out
            }
        }
    }

    fn relabel(&self, shape: &MagTree, labels: &Permutation) -> MagTree {
        shape.map_leaves(&mut |v| MagTree::Leaf(labels.apply(v)))
    }

    fn parse_tree(&self, toks: &[String], at: &mut usize) -> Result<MagTree> {
        let tok = toks.get(*at).ok_or_else(|| Error::Parse("unexpected end of tree".to_string()))?;
        *at += 1;
        if tok == "(" {
            let head = toks.get(*at).ok_or_else(|| Error::Parse("unexpected end of tree".to_string()))?;
            if head == ")" {
                *at += 1;
                return Ok(MagTree::Nil);
            }
            let k: usize = head
                .strip_prefix('v')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Parse(format!("expected v<k>, got {head:?}")))?;
            *at += 1;
            let mut children = Vec::new();
            while toks.get(*at).map(String::as_str) != Some(")") {
                children.push(self.parse_tree(toks, at)?);
            }
            *at += 1;
            if children.len() != k || k < 2 || k > self.max_arity {
                return Err(Error::Parse(format!("node v{k} with {} children", children.len())));
            }
            Ok(MagTree::Node(children))
        } else {
            tok.parse::<usize>().map(MagTree::Leaf).map_err(|_| Error::Parse(format!("bad leaf {tok:?}")))
        }
    }
}

/// Ordered sequences of `k` positive integers summing to `n`.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

impl SModule for Mag {
    type Label = MagTree;

    fn arity(&self, label: &MagTree) -> usize {
        label.leaves()
    }

    fn basis(&self, n: usize) -> Vec<MagTree> {
        let shapes = self.shapes(n);
        let perms = all_permutations(n);
        let mut out: Vec<MagTree> =
            shapes.iter().flat_map(|s| perms.iter().map(move |p| self.relabel(s, p))).collect();
        out.sort();
        out
    }

    fn act_basis(&self, label: &MagTree, sigma: &Permutation) -> Lin<MagTree> {
        let inv = sigma.invert();
        Lin::basis(label.map_leaves(&mut |v| MagTree::Leaf(inv.apply(v))))
    }

    fn format_label(&self, label: &MagTree) -> String {
        let mut s = String::new();
        label.write_sexpr(&mut s);
        s
    }
}

impl Operad for Mag {
    fn name(&self) -> String {
        format!("mag{}", self.max_arity)
    }

    fn unit(&self) -> MagTree {
        MagTree::Leaf(1)
    }

    fn nullary(&self) -> Option<MagTree> {
        Some(MagTree::Nil)
    }

    fn compose_basis(&self, x: &MagTree, i: usize, y: &MagTree) -> Lin<MagTree> {
        let m = y.leaves();
        let grafted = x.map_leaves(&mut |v| {
            if v < i {
                MagTree::Leaf(v)
            } else if v > i {
                MagTree::Leaf(v + m - 1)
            } else {
                y.map_leaves(&mut |w| MagTree::Leaf(w + i - 1))
            }
        });
        Lin::basis(grafted.prune())
    }

    fn restrict_basis(&self, x: &MagTree, s: &Subset) -> Lin<MagTree> {
        let mut rank = vec![0usize; s.n() + 1];
        for (k, &v) in s.members().iter().enumerate() {
            rank[v] = k + 1;
        }
        let cut = x.map_leaves(&mut |v| if rank[v] == 0 { MagTree::Nil } else { MagTree::Leaf(rank[v]) });
        Lin::basis(cut.prune())
    }

    fn parse_label(&self, s: &str) -> Result<Lin<MagTree>> {
        let toks = tokenize(s);
        let mut at = 0;
        let t = self.parse_tree(&toks, &mut at)?;
        if at != toks.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        let mut labels = Vec::new();
        t.leaf_labels(&mut labels);
        Permutation::new(labels).map_err(|_| Error::Parse(format!("leaves of {s:?} are not 1..n")))?;
        if t.max_node_arity() > self.max_arity {
            return Err(Error::Parse(format!("{s:?} uses a node above arity {}", self.max_arity)));
        }
        Ok(Lin::basis(t))
    }

    fn random_basis(&self, n: usize, rng: &mut Rng) -> Option<MagTree> {
        let shapes = self.shapes(n);
        let shape = shapes.choose(rng)?;
        Some(self.relabel(shape, &random_permutation(n, rng)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_counts() {
        let m2 = Mag::new(2);
        let catalan = [1, 1, 1, 2, 5, 14, 42];
        for (n, c) in catalan.iter().enumerate() {
            assert_eq!(m2.shapes(n).len(), *c);
        }
        let m3 = Mag::new(3);
        assert_eq!(m3.shapes(4).len(), 10);
        assert_eq!(m3.shapes(6).len(), 154);
        assert_eq!(m3.basis(3).len(), 3 * 6);
    }

    #[test]
    fn grafting_and_restriction() {
        let m = Mag::new(2);
        let v = m.corolla(2);
        let x = m.compose_basis(&v, 1, &v);
        assert_eq!(m.format_label(x.keys().next().unwrap()), "(v2 (v2 1 2) 3)");
        let r = m.restrict_basis(&v, &Subset::new(2, vec![1]).unwrap());
        assert_eq!(r, Lin::basis(MagTree::Leaf(1)));
        let e = m.restrict_basis(&v, &Subset::empty(2));
        assert_eq!(e, Lin::basis(MagTree::Nil));
    }

    #[test]
    fn parse_round_trip() {
        let m = Mag::new(3);
        let t = m.parse_label("(v3 1 (v2 3 2) 4)").unwrap();
        let l = t.keys().next().unwrap();
        assert_eq!(m.format_label(l), "(v3 1 (v2 3 2) 4)");
        assert!(m.parse_label("(v3 1 2)").is_err());
        assert!(Mag::new(2).parse_label("(v3 1 2 3)").is_err());
    }
}
