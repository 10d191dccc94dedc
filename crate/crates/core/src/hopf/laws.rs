//! Checkers for the coalgebra and morphism properties of `Delta`, closure of
//! primitives under composition, and the reciprocity formula for
//! compositions of primitive elements.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::exact::rat;
use crate::lin::Lin;
use crate::operad::{compose_full, compose_partial};
use crate::perm::{sigma_st, Subset};
use crate::report::{run_cases, CheckConfig, Counterexample, LawReport, ReportBuilder};
use crate::smod::{format_element, format_hat, format_pairs, tau_swap, HatTensor, HatTerm};
use crate::Rng;

use super::{
    big_delta, big_delta_basis, counit_left, counit_right, delta_small, expand_factor, hat_algebra_compose,
    iterated_reduced, primitive_space, reduced_big_delta, HopfOperad,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HopfLaw {
    Coassoc,
    Counit,
    Cocommutative,
    AlgebraMorphism,
    DeltaOperadMorphism,
    PrimitiveClosure,
    Reciprocity,
    Connectedness,
}

impl HopfLaw {
    pub const ALL: [HopfLaw; 8] = [
        HopfLaw::Coassoc,
        HopfLaw::Counit,
        HopfLaw::Cocommutative,
        HopfLaw::AlgebraMorphism,
        HopfLaw::DeltaOperadMorphism,
        HopfLaw::PrimitiveClosure,
        HopfLaw::Reciprocity,
        HopfLaw::Connectedness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HopfLaw::Coassoc => "coassoc",
            HopfLaw::Counit => "counit",
            HopfLaw::Cocommutative => "cocommutative",
            HopfLaw::AlgebraMorphism => "algebra_morphism",
            HopfLaw::DeltaOperadMorphism => "delta_operad_morphism",
            HopfLaw::PrimitiveClosure => "primitive_closure",
            HopfLaw::Reciprocity => "reciprocity",
            HopfLaw::Connectedness => "connectedness",
        }
    }
}

impl fmt::Display for HopfLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HopfLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HopfLaw::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown Hopf law {s:?}")))
    }
}

/// Largest arity of the primitive arguments drawn by the reciprocity check.
pub const RECIPROCITY_ARG_ARITY: usize = 2;

pub fn check_hopf_law<H: HopfOperad>(h: &H, law: HopfLaw, cfg: &CheckConfig) -> LawReport {
    let mut rb = ReportBuilder::new(&h.name(), law.name(), [0, cfg.n_max]);
    let mut rng = cfg.rng(&format!("{}/{}", h.name(), law.name()));
    match law {
        HopfLaw::Coassoc => {
            let cases = basis_cases(h, 0, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |b| check_coassoc(h, b)));
        }
        HopfLaw::Counit => {
            let cases = basis_cases(h, 0, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |b| check_counit(h, b)));
        }
        HopfLaw::Cocommutative => {
            let cases = basis_cases(h, 0, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |b| check_cocommutative(h, b)));
        }
        HopfLaw::AlgebraMorphism => {
            let cases = composition_cases(h, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |c| check_algebra_morphism(h, c)));
        }
        HopfLaw::DeltaOperadMorphism => {
            let cases = partial_cases(h, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |c| check_delta_morphism(h, c)));
        }
        HopfLaw::PrimitiveClosure => {
            rb.arity_range = [1, cfg.n_max];
            let cases = closure_cases(h, cfg.n_max);
            rb.absorb(run_cases(&cases, |c| check_closure(h, c)));
        }
        HopfLaw::Reciprocity => {
            rb.arity_range = [1, cfg.n_max.min(3)];
            let cases = reciprocity_cases(h, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |c| check_reciprocity(h, c)));
        }
        HopfLaw::Connectedness => {
            rb.arity_range = [1, cfg.n_max];
            let cases = basis_cases(h, 1, cfg, &mut rng);
            rb.absorb(run_cases(&cases, |b| check_connected(h, b)));
        }
    }
    rb.finish()
}

pub fn check_all_hopf_laws<H: HopfOperad>(h: &H, cfg: &CheckConfig) -> Vec<LawReport> {
    HopfLaw::ALL.into_iter().map(|l| check_hopf_law(h, l, cfg)).collect()
}

fn fmt_label<H: HopfOperad>(h: &H, l: &H::Label) -> String {
    format_element(h, &Lin::basis(l.clone()))
}

fn hat_cex<H: HopfOperad>(h: &H, inputs: String, lhs: &HatTensor<H::Label>, rhs: &HatTensor<H::Label>) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample { inputs, lhs: format_hat(h, lhs), rhs: format_hat(h, rhs) })
}

/// All basis labels of arity `min..=exhaustive_max`, then random labels up to
/// `n_max`.
fn basis_cases<H: HopfOperad>(h: &H, min: usize, cfg: &CheckConfig, rng: &mut Rng) -> Vec<H::Label> {
    let mut cases: Vec<H::Label> = (min..=cfg.exhaustive_max).flat_map(|n| h.basis(n)).collect();
    if cfg.sampling() {
        for _ in 0..cfg.samples {
            let n = rng.gen_range(cfg.exhaustive_max.max(min) + 1..=cfg.n_max);
            if let Some(l) = h.random_basis(n, rng) {
                cases.push(l);
            }
        }
    }
    cases
}

/// `(Delta (x) id) Delta = (id (x) Delta) Delta`.
fn check_coassoc<H: HopfOperad>(h: &H, b: &H::Label) -> Option<Counterexample> {
    let d = big_delta_basis(h, b);
    let lhs = expand_factor(h, &d, 0, false);
    let rhs = expand_factor(h, &d, 1, false);
    hat_cex(h, fmt_label(h, b), &lhs, &rhs)
}

/// `(epsilon (x) id) Delta = id = (id (x) epsilon) Delta`, and the same for
/// the arity-wise coproduct.
fn check_counit<H: HopfOperad>(h: &H, b: &H::Label) -> Option<Counterexample> {
    let x = Lin::basis(b.clone());
    let d = big_delta_basis(h, b);
    let inputs = fmt_label(h, b);
    for (side, got) in [("left", counit_left(h, &d)), ("right", counit_right(h, &d))] {
        if got != x {
            return Some(Counterexample {
                inputs: format!("{inputs} ({side} counit of Delta)"),
                lhs: format_element(h, &got),
                rhs: format_element(h, &x),
            });
        }
    }
    let small = h.delta_basis(b);
    let left: Lin<H::Label> = small.iter().map(|((p, q), c)| (q.clone(), c * h.epsilon_basis(p))).collect();
    let right: Lin<H::Label> = small.iter().map(|((p, q), c)| (p.clone(), c * h.epsilon_basis(q))).collect();
    for (side, got) in [("left", left), ("right", right)] {
        if got != x {
            return Some(Counterexample {
                inputs: format!("{inputs} ({side} counit of delta)"),
                lhs: format_element(h, &got),
                rhs: format_element(h, &x),
            });
        }
    }
    None
}

fn check_cocommutative<H: HopfOperad>(h: &H, b: &H::Label) -> Option<Counterexample> {
    let d = big_delta_basis(h, b);
    let swapped = tau_swap(h, &d).ok()?;
    hat_cex(h, fmt_label(h, b), &swapped, &d)
}

struct Composition<L> {
    mu: L,
    args: Vec<L>,
}

/// Random `mu(x_1, ..., x_k)` with total arity at most `n_max`.
fn composition_cases<H: HopfOperad>(h: &H, cfg: &CheckConfig, rng: &mut Rng) -> Vec<Composition<H::Label>> {
    let n = cfg.n_max;
    let mut cases = Vec::new();
    let mut attempts = 0;
    while cases.len() < cfg.samples && attempts < 100 * cfg.samples.max(1) {
        attempts += 1;
        let k = rng.gen_range(1..=n.max(1));
        let lengths: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=n)).collect();
        if lengths.iter().sum::<usize>() > n {
            continue;
        }
        let Some(mu) = h.random_basis(k, rng) else { continue };
        let args: Option<Vec<H::Label>> = lengths.iter().map(|&l| h.random_basis(l, rng)).collect();
        let Some(args) = args else { continue };
        cases.push(Composition { mu, args });
    }
    cases
}

/// `Delta(mu(x_1, ..., x_k)) = mu(Delta x_1, ..., Delta x_k)` in the
/// hat-tensor square.
fn check_algebra_morphism<H: HopfOperad>(h: &H, c: &Composition<H::Label>) -> Option<Counterexample> {
    let mu = Lin::basis(c.mu.clone());
    let args: Vec<Lin<H::Label>> = c.args.iter().map(|l| Lin::basis(l.clone())).collect();
    let lhs = big_delta(h, &compose_full(h, &mu, &args).ok()?).ok()?;
    let deltas: Vec<HatTensor<H::Label>> = c.args.iter().map(|l| big_delta_basis(h, l)).collect();
    let rhs = hat_algebra_compose(h, &mu, &deltas).ok()?;
    hat_cex(
        h,
        format!(
            "mu={}, args=({})",
            fmt_label(h, &c.mu),
            c.args.iter().map(|l| fmt_label(h, l)).collect::<Vec<_>>().join(", ")
        ),
        &lhs,
        &rhs,
    )
}

struct Partial<L> {
    x: L,
    i: usize,
    y: L,
}

fn partial_cases<H: HopfOperad>(h: &H, cfg: &CheckConfig, rng: &mut Rng) -> Vec<Partial<H::Label>> {
    let e = cfg.exhaustive_max;
    let mut cases = Vec::new();
    for a in 1..=e {
        for b in 0..=e {
            if a + b - 1 > e {
                continue;
            }
            let (ba, bb) = (h.basis(a), h.basis(b));
            for x in &ba {
                for y in &bb {
                    for i in 1..=a {
                        cases.push(Partial { x: x.clone(), i, y: y.clone() });
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
            let (Some(x), Some(y)) = (h.random_basis(a, rng), h.random_basis(b, rng)) else { continue };
            let i = rng.gen_range(1..=a);
            cases.push(Partial { x, i, y });
            drawn += 1;
        }
    }
    cases
}

/// `delta(x o_i y) = sum (x' o_i y') (x) (x'' o_i y'')`.
fn check_delta_morphism<H: HopfOperad>(h: &H, c: &Partial<H::Label>) -> Option<Counterexample> {
    let composed = h.compose_basis(&c.x, c.i, &c.y);
    let lhs = delta_small(h, &composed).ok()?;
    let dx = h.delta_basis(&c.x);
    let dy = h.delta_basis(&c.y);
    let rhs = dx.bilinear(&dy, |(x1, x2), (y1, y2)| {
        let l = h.compose_basis(x1, c.i, y1);
        let r = h.compose_basis(x2, c.i, y2);
        l.bilinear(&r, |a, b| Lin::basis((a.clone(), b.clone())))
    });
    let show = |t: &Lin<(H::Label, H::Label)>| format_pairs(h, t);
    (lhs != rhs).then(|| Counterexample {
        inputs: format!("x={}, i={}, y={}", fmt_label(h, &c.x), c.i, fmt_label(h, &c.y)),
        lhs: show(&lhs),
        rhs: show(&rhs),
    })
}

struct Closure<L: Ord> {
    x: Lin<L>,
    i: usize,
    y: Lin<L>,
}

/// Every partial composition of two primitive basis vectors with result
/// arity at most `n_max`.
fn closure_cases<H: HopfOperad>(h: &H, n_max: usize) -> Vec<Closure<H::Label>> {
    let prims: Vec<Vec<Lin<H::Label>>> =
        (0..=n_max).map(|n| if n == 0 { Vec::new() } else { primitive_space(h, n).basis }).collect();
    let mut cases = Vec::new();
    for a in 1..=n_max {
        for b in 1..=n_max {
            if a + b - 1 > n_max {
                continue;
            }
            for x in &prims[a] {
                for y in &prims[b] {
                    for i in 1..=a {
                        cases.push(Closure { x: x.clone(), i, y: y.clone() });
                    }
                }
            }
        }
    }
    cases
}

fn check_closure<H: HopfOperad>(h: &H, c: &Closure<H::Label>) -> Option<Counterexample> {
    let z = compose_partial(h, &c.x, c.i, &c.y).ok()?;
    let red = reduced_big_delta(h, &z).ok()?;
    (!red.is_zero()).then(|| Counterexample {
        inputs: format!("x={}, i={}, y={}", format_element(h, &c.x), c.i, format_element(h, &c.y)),
        lhs: format_hat(h, &red),
        rhs: "0".to_string(),
    })
}

struct Reciprocity<L: Ord> {
    mu: L,
    args: Vec<Lin<L>>,
}

/// `mu` of arity at most 3 applied to random primitive elements of arity at
/// most [`RECIPROCITY_ARG_ARITY`].
fn reciprocity_cases<H: HopfOperad>(h: &H, cfg: &CheckConfig, rng: &mut Rng) -> Vec<Reciprocity<H::Label>> {
    let prims: Vec<Vec<Lin<H::Label>>> =
        (0..=RECIPROCITY_ARG_ARITY).map(|n| if n == 0 { Vec::new() } else { primitive_space(h, n).basis }).collect();
    let available: Vec<usize> = (1..=RECIPROCITY_ARG_ARITY).filter(|&n| !prims[n].is_empty()).collect();
    let mut cases = Vec::new();
    if available.is_empty() {
        return cases;
    }
    let k_max = cfg.n_max.clamp(1, 3);
    let mut attempts = 0;
    while cases.len() < cfg.samples && attempts < 100 * cfg.samples.max(1) {
        attempts += 1;
        let k = rng.gen_range(1..=k_max);
        let Some(mu) = h.random_basis(k, rng) else { continue };
        let args = (0..k)
            .map(|_| {
                let n = available[rng.gen_range(0..available.len())];
                let mut v = Lin::zero();
                for b in &prims[n] {
                    v.add_scaled(b, &rat(rng.gen_range(-2..=2)));
                }
                if v.is_zero() {
                    v = prims[n][0].clone();
                }
                v
            })
            .collect();
        cases.push(Reciprocity { mu, args });
    }
    cases
}

/// Both sides of the reciprocity formula for `mu(h_1, ..., h_k)` with
/// primitive `h_i`: `Delta` of the composite, and
/// `sum (mu'|_S (h_S) (x) mu''|_T (h_T)) . sigma(S', T')^{-1}` where `S'`
/// collects the inputs of the `h_i` with `i in S`.
pub fn reciprocity_sides<H: HopfOperad>(
    h: &H,
    mu: &H::Label,
    args: &[Lin<H::Label>],
) -> Result<(HatTensor<H::Label>, HatTensor<H::Label>)> {
    let k = h.arity(mu);
    let mu_el = Lin::basis(mu.clone());
    let lhs = big_delta(h, &compose_full(h, &mu_el, args)?)?;
    let mut arities = Vec::with_capacity(k);
    for a in args {
        arities.push(crate::smod::arity_of(h, a)?.unwrap_or(0));
    }
    let total: usize = arities.iter().sum();
    let mut offsets = vec![0usize];
    for a in &arities {
        offsets.push(offsets.last().copied().unwrap_or(0) + a);
    }
    let mut rhs = Lin::zero();
    for ((a, b), c) in &h.delta_basis(mu) {
        for s in Subset::all(k) {
            let t = s.complement();
            let left_op = h.restrict_basis(a, &s);
            let right_op = h.restrict_basis(b, &t);
            if left_op.is_zero() || right_op.is_zero() {
                continue;
            }
            let left_args: Vec<Lin<H::Label>> = s.members().iter().map(|&i| args[i - 1].clone()).collect();
            let right_args: Vec<Lin<H::Label>> = t.members().iter().map(|&i| args[i - 1].clone()).collect();
            let left = compose_full(h, &left_op, &left_args)?;
            let right = compose_full(h, &right_op, &right_args)?;
            let spread = |set: &Subset| -> Vec<usize> {
                set.members().iter().flat_map(|&i| offsets[i - 1] + 1..=offsets[i]).collect()
            };
            let s2 = Subset::new(total, spread(&s))?;
            let t2 = Subset::new(total, spread(&t))?;
            let shuffle = sigma_st(&s2, &t2)?.invert();
            for (l, cl) in &left {
                for (r, cr) in &right {
                    let term = HatTerm { factors: vec![l.clone(), r.clone()], shuffle: shuffle.clone() };
                    rhs.add_term(term, c * cl * cr);
                }
            }
        }
    }
    Ok((lhs, rhs))
}

fn check_reciprocity<H: HopfOperad>(h: &H, c: &Reciprocity<H::Label>) -> Option<Counterexample> {
    let (lhs, rhs) = reciprocity_sides(h, &c.mu, &c.args).ok()?;
    hat_cex(
        h,
        format!(
            "mu={}, args=({})",
            fmt_label(h, &c.mu),
            c.args.iter().map(|a| format_element(h, a)).collect::<Vec<_>>().join("; ")
        ),
        &lhs,
        &rhs,
    )
}

/// `Delta-bar^{[n+1]}` vanishes on arity `n`.
fn check_connected<H: HopfOperad>(h: &H, b: &H::Label) -> Option<Counterexample> {
    let n = h.arity(b);
    let t = iterated_reduced(h, &Lin::basis(b.clone()), n + 1).ok()?;
    (!t.is_zero()).then(|| Counterexample {
        inputs: fmt_label(h, b),
        lhs: format_hat(h, &t),
        rhs: "0".to_string(),
    })
}
