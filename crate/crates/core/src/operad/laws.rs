//! Checkers for the operad axioms: sequential and parallel associativity,
//! unit, equivariance, the degeneracy relations, and compatibility of
//! restriction with composition.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::perm::{all_permutations, Permutation, Subset};
use crate::exact::Rational;
use crate::report::{run_cases, CheckConfig, Counterexample, LawReport, ReportBuilder, MAX_COUNTEREXAMPLES};
use crate::smod::{act_right, format_element};
use crate::Rng;

use super::{compose_full, compose_partial, degeneracy, empty_restriction_coeff, random_permutation, restrict_to_set, Operad};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperadLaw {
    Assoc1,
    Assoc2,
    Unit,
    Equivariance,
    Deg1,
    Deg2,
    LemmaRestriction,
}

impl OperadLaw {
    pub const ALL: [OperadLaw; 7] = [
        OperadLaw::Assoc1,
        OperadLaw::Assoc2,
        OperadLaw::Unit,
        OperadLaw::Equivariance,
        OperadLaw::Deg1,
        OperadLaw::Deg2,
        OperadLaw::LemmaRestriction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperadLaw::Assoc1 => "assoc1",
            OperadLaw::Assoc2 => "assoc2",
            OperadLaw::Unit => "unit",
            OperadLaw::Equivariance => "equivariance",
            OperadLaw::Deg1 => "deg1",
            OperadLaw::Deg2 => "deg2",
            OperadLaw::LemmaRestriction => "lemma_restriction",
        }
    }

    /// Whether the law needs an arity-0 unit (degeneracies, restrictions).
    pub fn needs_connected(self) -> bool {
        matches!(self, OperadLaw::Deg1 | OperadLaw::Deg2 | OperadLaw::LemmaRestriction)
    }
}

impl fmt::Display for OperadLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperadLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperadLaw::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown operad law {s:?}")))
    }
}

/// The laws that make sense for `p`: all of them for connected operads, the
/// composition laws otherwise.
pub fn applicable_laws<P: Operad>(p: &P) -> Vec<OperadLaw> {
    let connected = p.nullary().is_some();
    OperadLaw::ALL.into_iter().filter(|l| connected || !l.needs_connected()).collect()
}

pub fn check_operad_law<P: Operad>(p: &P, law: OperadLaw, cfg: &CheckConfig) -> Result<LawReport> {
    if law.needs_connected() && p.nullary().is_none() {
        return Err(Error::Unsupported(format!("{law} needs a connected operad; {} is not", p.name())));
    }
    let mut rb = ReportBuilder::new(&p.name(), law.name(), [0, cfg.n_max]);
    let bases: Vec<Vec<P::Label>> = (0..=cfg.exhaustive_max).map(|n| p.basis(n)).collect();
    let mut rng = cfg.rng(&format!("{}/{}", p.name(), law.name()));
    match law {
        OperadLaw::Assoc1 => {
            let cases = assoc1_cases(p, &bases, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |c| check_assoc1(p, c)));
        }
        OperadLaw::Assoc2 => {
            let cases = assoc2_cases(p, &bases, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |c| check_assoc2(p, c)));
        }
        OperadLaw::Unit => {
            let cases = single_cases(p, &bases, 0, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |x| check_unit(p, x)));
        }
        OperadLaw::Equivariance => {
            let cases = equivariance_cases(p, &bases, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |c| check_equivariance(p, c)));
        }
        OperadLaw::Deg1 => {
            let cases = single_cases(p, &bases, 2, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |x| check_deg1(p, x)));
        }
        OperadLaw::Deg2 => {
            let cases = deg2_cases(p, &bases, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |c| check_deg2(p, c)));
        }
        OperadLaw::LemmaRestriction => {
            let cases = lemma_cases(p, &bases, cfg, &mut rng);
            rb.absorb(run_lemma_cases(p, &cases));
        }
    }
    Ok(rb.finish())
}

pub fn check_all_operad_laws<P: Operad>(p: &P, cfg: &CheckConfig) -> Vec<LawReport> {
    applicable_laws(p)
        .into_iter()
        .map(|l| check_operad_law(p, l, cfg).expect("applicable law"))
        .collect()
}

fn cex<P: Operad>(p: &P, inputs: String, lhs: &Lin<P::Label>, rhs: &Lin<P::Label>) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample { inputs, lhs: format_element(p, lhs), rhs: format_element(p, rhs) })
}

fn fmt_label<P: Operad>(p: &P, l: &P::Label) -> String {
    format_element(p, &Lin::basis(l.clone()))
}

/// Draws a random label of arity in `lo..=hi`; `None` after repeated misses
/// (for instance when the operad is empty in every such arity).
fn random_label<P: Operad>(p: &P, lo: usize, hi: usize, rng: &mut Rng) -> Option<P::Label> {
    for _ in 0..64 {
        let n = rng.gen_range(lo..=hi);
        if let Some(l) = p.random_basis(n, rng) {
            return Some(l);
        }
    }
    None
}

fn random_label_of<P: Operad>(p: &P, n: usize, rng: &mut Rng) -> Option<P::Label> {
    p.random_basis(n, rng)
}

struct Triple<L> {
    x: L,
    i: usize,
    y: L,
    j: usize,
    z: L,
}

/// `(x o_i y) o_{i+j-1} z = x o_i (y o_j z)`.
fn assoc1_cases<P: Operad>(p: &P, bases: &[Vec<P::Label>], cfg: &CheckConfig, rng: &mut Rng) -> Vec<Triple<P::Label>> {
    let e = cfg.exhaustive_max;
    let mut cases = Vec::new();
    for a in 1..=e {
        for b in 1..=e {
            for c in 0..=e {
                if a + b + c < 2 || a + b + c - 2 > e {
                    continue;
                }
                for x in &bases[a] {
                    for y in &bases[b] {
                        for z in &bases[c] {
                            for i in 1..=a {
                                for j in 1..=b {
                                    cases.push(Triple { x: x.clone(), i, y: y.clone(), j, z: z.clone() });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if cfg.sampling() {
        let n = cfg.n_max;
        let mut drawn = 0;
        let mut attempts = 0;
        while drawn < cfg.samples && attempts < 100 * cfg.samples {
            attempts += 1;
            let (a, b, c) = (rng.gen_range(1..=n), rng.gen_range(1..=n), rng.gen_range(0..=n));
            if a + b + c - 2 > n {
                continue;
            }
            let (Some(x), Some(y), Some(z)) =
                (random_label_of(p, a, rng), random_label_of(p, b, rng), random_label_of(p, c, rng))
            else {
                continue;
            };
            let (i, j) = (rng.gen_range(1..=a), rng.gen_range(1..=b));
            cases.push(Triple { x, i, y, j, z });
            drawn += 1;
        }
    }
    cases
}

fn check_assoc1<P: Operad>(p: &P, c: &Triple<P::Label>) -> Option<Counterexample> {
    let (x, y, z) = (Lin::basis(c.x.clone()), Lin::basis(c.y.clone()), Lin::basis(c.z.clone()));
    let lhs = compose_partial(p, &compose_partial(p, &x, c.i, &y).ok()?, c.i + c.j - 1, &z).ok()?;
    let rhs = compose_partial(p, &x, c.i, &compose_partial(p, &y, c.j, &z).ok()?).ok()?;
    cex(
        p,
        format!(
            "x={}, i={}, y={}, j={}, z={}",
            fmt_label(p, &c.x),
            c.i,
            fmt_label(p, &c.y),
            c.j,
            fmt_label(p, &c.z)
        ),
        &lhs,
        &rhs,
    )
}

/// `(x o_i y) o_{k+b-1} z = (x o_k z) o_i y` for `i < k`, `b` the arity of `y`.
fn assoc2_cases<P: Operad>(p: &P, bases: &[Vec<P::Label>], cfg: &CheckConfig, rng: &mut Rng) -> Vec<Triple<P::Label>> {
    let e = cfg.exhaustive_max;
    let mut cases = Vec::new();
    for a in 2..=e {
        for b in 0..=e {
            for c in 0..=e {
                if a + b + c - 2 > e {
                    continue;
                }
                for x in &bases[a] {
                    for y in &bases[b] {
                        for z in &bases[c] {
                            for i in 1..a {
                                for k in i + 1..=a {
                                    cases.push(Triple { x: x.clone(), i, y: y.clone(), j: k, z: z.clone() });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if cfg.sampling() {
        let n = cfg.n_max;
        let mut drawn = 0;
        let mut attempts = 0;
        while drawn < cfg.samples && attempts < 100 * cfg.samples {
            attempts += 1;
            let (a, b, c) = (rng.gen_range(2..=n), rng.gen_range(0..=n), rng.gen_range(0..=n));
            if a + b + c - 2 > n {
                continue;
            }
            let (Some(x), Some(y), Some(z)) =
                (random_label_of(p, a, rng), random_label_of(p, b, rng), random_label_of(p, c, rng))
            else {
                continue;
            };
            let i = rng.gen_range(1..a);
            let k = rng.gen_range(i + 1..=a);
            cases.push(Triple { x, i, y, j: k, z });
            drawn += 1;
        }
    }
    cases
}

fn check_assoc2<P: Operad>(p: &P, c: &Triple<P::Label>) -> Option<Counterexample> {
    let (x, y, z) = (Lin::basis(c.x.clone()), Lin::basis(c.y.clone()), Lin::basis(c.z.clone()));
    let b = p.arity(&c.y);
    let k = c.j;
    let lhs = compose_partial(p, &compose_partial(p, &x, c.i, &y).ok()?, k + b - 1, &z).ok()?;
    let rhs = compose_partial(p, &compose_partial(p, &x, k, &z).ok()?, c.i, &y).ok()?;
    cex(
        p,
        format!(
            "x={}, i={}, y={}, k={}, z={}",
            fmt_label(p, &c.x),
            c.i,
            fmt_label(p, &c.y),
            k,
            fmt_label(p, &c.z)
        ),
        &lhs,
        &rhs,
    )
}

/// Every basis label of arity `min..=exhaustive_max`, then random labels up
/// to `n_max`.
fn single_cases<P: Operad>(p: &P, bases: &[Vec<P::Label>], min: usize, cfg: &CheckConfig, rng: &mut Rng) -> Vec<P::Label> {
    let mut cases: Vec<P::Label> = bases.iter().skip(min).flatten().cloned().collect();
    if cfg.sampling() {
        let lo = (cfg.exhaustive_max + 1).max(min);
        for _ in 0..cfg.samples {
            if let Some(l) = random_label(p, lo, cfg.n_max, rng) {
                cases.push(l);
            }
        }
    }
    cases
}

fn check_unit<P: Operad>(p: &P, x: &P::Label) -> Option<Counterexample> {
    let one = Lin::basis(p.unit());
    let xe = Lin::basis(x.clone());
    let left = compose_partial(p, &one, 1, &xe).ok()?;
    if left != xe {
        return cex(p, format!("1_1 o_1 {}", fmt_label(p, x)), &left, &xe);
    }
    for i in 1..=p.arity(x) {
        let right = compose_partial(p, &xe, i, &one).ok()?;
        if right != xe {
            return cex(p, format!("{} o_{i} 1_1", fmt_label(p, x)), &right, &xe);
        }
    }
    None
}

struct EquivCase<L> {
    x: L,
    sigma: Permutation,
    i: usize,
    y: L,
    tau: Permutation,
}

/// `(x.s) o_i (y.t) = (x o_{s(i)} y) . (s o_i t)`.
fn equivariance_cases<P: Operad>(p: &P, bases: &[Vec<P::Label>], cfg: &CheckConfig, rng: &mut Rng) -> Vec<EquivCase<P::Label>> {
    let e = cfg.exhaustive_max;
    let mut cases = Vec::new();
    for a in 1..=e {
        for b in 0..=e {
            if a + b - 1 > e {
                continue;
            }
            let (sa, sb) = (all_permutations(a), all_permutations(b));
            for x in &bases[a] {
                for y in &bases[b] {
                    for sigma in &sa {
                        for tau in &sb {
                            for i in 1..=a {
                                cases.push(EquivCase {
                                    x: x.clone(),
                                    sigma: sigma.clone(),
                                    i,
                                    y: y.clone(),
                                    tau: tau.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    if cfg.sampling() {
        let n = cfg.n_max;
        let mut drawn = 0;
        let mut attempts = 0;
        while drawn < cfg.samples && attempts < 100 * cfg.samples {
            attempts += 1;
            let (a, b) = (rng.gen_range(1..=n), rng.gen_range(0..=n));
            if a + b - 1 > n {
                continue;
            }
            let (Some(x), Some(y)) = (random_label_of(p, a, rng), random_label_of(p, b, rng)) else {
                continue;
            };
            let sigma = random_permutation(a, rng);
            let tau = random_permutation(b, rng);
            let i = rng.gen_range(1..=a);
            cases.push(EquivCase { x, sigma, i, y, tau });
            drawn += 1;
        }
    }
    cases
}

fn check_equivariance<P: Operad>(p: &P, c: &EquivCase<P::Label>) -> Option<Counterexample> {
    let (x, y) = (Lin::basis(c.x.clone()), Lin::basis(c.y.clone()));
    let xs = act_right(p, &x, &c.sigma).ok()?;
    let yt = act_right(p, &y, &c.tau).ok()?;
    let lhs = compose_partial(p, &xs, c.i, &yt).ok()?;
    let inner = compose_partial(p, &x, c.sigma.apply(c.i), &y).ok()?;
    let rhs = act_right(p, &inner, &c.sigma.partial_compose(c.i, &c.tau).ok()?).ok()?;
    cex(
        p,
        format!(
            "x={}, sigma={}, i={}, y={}, tau={}",
            fmt_label(p, &c.x),
            c.sigma,
            c.i,
            fmt_label(p, &c.y),
            c.tau
        ),
        &lhs,
        &rhs,
    )
}

/// `d_j d_i = d_i d_{j+1}` for `i <= j`.
fn check_deg1<P: Operad>(p: &P, x: &P::Label) -> Option<Counterexample> {
    let n = p.arity(x);
    let xe = Lin::basis(x.clone());
    for i in 1..n {
        for j in i..n {
            let lhs = degeneracy(p, &degeneracy(p, &xe, i).ok()?, j).ok()?;
            let rhs = degeneracy(p, &degeneracy(p, &xe, j + 1).ok()?, i).ok()?;
            if lhs != rhs {
                return cex(p, format!("x={}, i={i}, j={j}", fmt_label(p, x)), &lhs, &rhs);
            }
        }
    }
    None
}

struct Deg2Case<L> {
    x: L,
    sigma: Permutation,
}

/// `d_i(x.s) = d_{s(i)}(x) . d_i(s)`.
fn deg2_cases<P: Operad>(p: &P, bases: &[Vec<P::Label>], cfg: &CheckConfig, rng: &mut Rng) -> Vec<Deg2Case<P::Label>> {
    let mut cases = Vec::new();
    for (n, b) in bases.iter().enumerate().skip(1) {
        let perms = all_permutations(n);
        for x in b {
            for s in &perms {
                cases.push(Deg2Case { x: x.clone(), sigma: s.clone() });
            }
        }
    }
    if cfg.sampling() {
        for _ in 0..cfg.samples {
            if let Some(x) = random_label(p, cfg.exhaustive_max + 1, cfg.n_max, rng) {
                let sigma = random_permutation(p.arity(&x), rng);
                cases.push(Deg2Case { x, sigma });
            }
        }
    }
    cases
}

fn check_deg2<P: Operad>(p: &P, c: &Deg2Case<P::Label>) -> Option<Counterexample> {
    let xe = Lin::basis(c.x.clone());
    let acted = act_right(p, &xe, &c.sigma).ok()?;
    for i in 1..=c.sigma.len() {
        let lhs = degeneracy(p, &acted, i).ok()?;
        let rhs = act_right(p, &degeneracy(p, &xe, c.sigma.apply(i)).ok()?, &c.sigma.delta_i(i).ok()?).ok()?;
        if lhs != rhs {
            return cex(p, format!("x={}, sigma={}, i={i}", fmt_label(p, &c.x), c.sigma), &lhs, &rhs);
        }
    }
    None
}

struct LemmaCase<L> {
    mu: L,
    nus: Vec<L>,
    /// `None` checks every tuple of subsets.
    subsets: Option<Vec<Subset>>,
}

/// Exhaustive lemma cases keep `k + sum l_i` within this margin above the
/// exhaustive arity; random samples cover the rest.
const LEMMA_EXHAUSTIVE_SLACK: usize = 2;

/// `mu(nu_1, ..., nu_k)|_{S_1 * ... * S_k}` equals `mu|_J` composed with the
/// restrictions `nu_j|_{S_j}` (`j in J`, the indices with `S_j` nonempty),
/// times the scalars `nu_i|_{empty}` for `i` outside `J`.
fn lemma_cases<P: Operad>(p: &P, bases: &[Vec<P::Label>], cfg: &CheckConfig, rng: &mut Rng) -> Vec<LemmaCase<P::Label>> {
    let e = cfg.exhaustive_max;
    let mut cases = Vec::new();
    for k in 1..=e {
        for lengths in bounded_sequences(k, e) {
            if k + lengths.iter().sum::<usize>() > e + LEMMA_EXHAUSTIVE_SLACK {
                continue;
            }
            let nu_choices: Vec<&Vec<P::Label>> = lengths.iter().map(|&l| &bases[l]).collect();
            for mu in &bases[k] {
                for nus in cartesian(&nu_choices) {
                    cases.push(LemmaCase { mu: mu.clone(), nus, subsets: None });
                }
            }
        }
    }
    if cfg.samples == 0 {
        return cases;
    }
    let n = cfg.n_max;
    let mut drawn = 0;
    let mut attempts = 0;
    while drawn < cfg.samples && attempts < 100 * cfg.samples {
        attempts += 1;
        let k = rng.gen_range(1..=n);
        let lengths: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=n)).collect();
        if lengths.iter().sum::<usize>() > n {
            continue;
        }
        let Some(mu) = random_label_of(p, k, rng) else { continue };
        let nus: Option<Vec<P::Label>> = lengths.iter().map(|&l| random_label_of(p, l, rng)).collect();
        let Some(nus) = nus else { continue };
        let subsets = lengths
            .iter()
            .map(|&l| {
                let members = (1..=l).filter(|_| rng.gen_bool(0.5)).collect();
                Subset::new(l, members).expect("subset of [l]")
            })
            .collect();
        cases.push(LemmaCase { mu, nus, subsets: Some(subsets) });
        drawn += 1;
    }
    cases
}

fn run_lemma_cases<P: Operad>(p: &P, cases: &[LemmaCase<P::Label>]) -> (usize, Vec<Counterexample>) {
    let results: Vec<(usize, Vec<Counterexample>)> = cases.par_iter().map(|c| check_lemma(p, c)).collect();
    let checked = results.iter().map(|r| r.0).sum();
    let cex = results.into_iter().flat_map(|r| r.1).take(MAX_COUNTEREXAMPLES).collect();
    (checked, cex)
}

/// Sequences of `k` non-negative integers with sum at most `max_sum`.
fn bounded_sequences(k: usize, max_sum: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max_sum {
        for mut rest in bounded_sequences(k - 1, max_sum - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cartesian<T: Clone>(choices: &[&Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for opts in choices {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    acc
}

fn check_lemma<P: Operad>(p: &P, c: &LemmaCase<P::Label>) -> (usize, Vec<Counterexample>) {
    let mu = Lin::basis(c.mu.clone());
    let nus: Vec<Lin<P::Label>> = c.nus.iter().map(|l| Lin::basis(l.clone())).collect();
    let describe = |subsets: &[Subset]| {
        format!(
            "mu={}, nu=({}), S=({})",
            fmt_label(p, &c.mu),
            c.nus.iter().map(|l| fmt_label(p, l)).collect::<Vec<_>>().join(", "),
            subsets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
        )
    };
    let composed = match compose_full(p, &mu, &nus) {
        Ok(x) => x,
        Err(e) => {
            let err = Counterexample { inputs: describe(&[]), lhs: e.to_string(), rhs: String::new() };
            return (1, vec![err]);
        }
    };
    let tuples = match &c.subsets {
        Some(s) => vec![s.clone()],
        None => {
            let all: Vec<Vec<Subset>> = c.nus.iter().map(|l| Subset::all(p.arity(l))).collect();
            cartesian(&all.iter().collect::<Vec<_>>())
        }
    };
    let mut failures = Vec::new();
    for subsets in &tuples {
        let sides = lemma_sides(p, &mu, &nus, &composed, subsets);
        let failure = match sides {
            Ok((lhs, rhs)) => cex(p, describe(subsets), &lhs, &rhs),
            Err(e) => Some(Counterexample { inputs: describe(subsets), lhs: e.to_string(), rhs: String::new() }),
        };
        if let Some(f) = failure {
            if failures.len() < MAX_COUNTEREXAMPLES {
                failures.push(f);
            }
        }
    }
    (tuples.len(), failures)
}

fn lemma_sides<P: Operad>(
    p: &P,
    mu: &Lin<P::Label>,
    nus: &[Lin<P::Label>],
    composed: &Lin<P::Label>,
    subsets: &[Subset],
) -> Result<(Lin<P::Label>, Lin<P::Label>)> {
    let lhs = restrict_to_set(p, composed, &Subset::star(subsets))?;
    let k = nus.len();
    let kept: Vec<usize> = (1..=k).filter(|&i| !subsets[i - 1].is_empty()).collect();
    let mut scalar: Rational = num_traits::One::one();
    for (nu, s) in nus.iter().zip(subsets) {
        if s.is_empty() {
            let l = nu.keys().next().expect("basis element");
            scalar *= empty_restriction_coeff(p, l);
        }
    }
    let mu_j = restrict_to_set(p, mu, &Subset::new(k, kept.clone())?)?;
    let parts: Vec<Lin<P::Label>> =
        kept.iter().map(|&j| restrict_to_set(p, &nus[j - 1], &subsets[j - 1])).collect::<Result<_>>()?;
    let rhs = compose_full(p, &mu_j, &parts)?.scale(&scalar);
    Ok((lhs, rhs))
}
