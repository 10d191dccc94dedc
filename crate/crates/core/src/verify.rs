//! The verification program: every law suite, dimension count and fixture,
//! run over fixed bounds and collected into one report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{
    check_free_coassoc, check_free_counit, check_free_primitive_dimensions, free_primitive_dimensions, FreeAlgebra,
    Generators,
};
use crate::hopf::laws::{check_hopf_law, HopfLaw};
use crate::hopf::{is_primitive, primitive_space, span_equal, HopfOperad};
use crate::lin::Lin;
use crate::operad::laws::{applicable_laws, check_operad_law};
use crate::operad::{lie_dynkin_expand, Assoc, Com, LieInAs, Mag, Operad, Pois, PoisLabel};
use crate::perm::{standardize, Permutation, Subset};
use crate::report::{CheckConfig, Counterexample, LawReport, ReportBuilder, Status};
use crate::smod::{act_right, factorial, format_element, set_partitions, SModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::InvalidInput(format!("unknown profile {s:?} (expected quick or full)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub profile: Profile,
    pub seed: u64,
    /// Swap in the faulty associative operad, to exercise failure reporting.
    pub tampered: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub operad: String,
    pub arity_range: [usize; 2],
    pub status: Status,
    pub checked: usize,
    pub elapsed_ms: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub seed: u64,
    pub profile: Profile,
    pub status: Status,
    pub records: Vec<Record>,
}

impl VerificationReport {
    pub fn failed(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.status.is_pass())
    }
}

/// Arity bounds for one profile.
#[derive(Clone, Copy, Debug)]
struct Bounds {
    operad_n: usize,
    pois_operad_n: usize,
    samples: usize,
    as_hopf_n: usize,
    hopf_n: usize,
    as_prim_n: usize,
    pois_prim_n: usize,
    pois_count_n: usize,
    free_n: usize,
    free_identity_n: usize,
}

impl Bounds {
    fn of(profile: Profile) -> Self {
        match profile {
            Profile::Quick => Bounds {
                operad_n: 4,
                pois_operad_n: 4,
                samples: 50,
                as_hopf_n: 4,
                hopf_n: 4,
                as_prim_n: 5,
                pois_prim_n: 4,
                pois_count_n: 6,
                free_n: 3,
                free_identity_n: 4,
            },
            Profile::Full => Bounds {
                operad_n: 6,
                pois_operad_n: 4,
                samples: 200,
                as_hopf_n: 5,
                hopf_n: 4,
                as_prim_n: 6,
                pois_prim_n: 5,
                pois_count_n: 7,
                free_n: 4,
                free_identity_n: 6,
            },
        }
    }
}

type Cell = Box<dyn Fn() -> LawReport + Send + Sync>;

fn operad_cells<P: Operad + Clone + Send + 'static>(cells: &mut Vec<Cell>, p: P, cfg: CheckConfig) {
    for law in applicable_laws(&p) {
        let p = p.clone();
        cells.push(Box::new(move || check_operad_law(&p, law, &cfg).expect("applicable law")));
    }
}

fn hopf_cells<H: HopfOperad + Clone + Send + 'static>(cells: &mut Vec<Cell>, h: H, cfg: CheckConfig) {
    for law in HopfLaw::ALL {
        let h = h.clone();
        cells.push(Box::new(move || check_hopf_law(&h, law, &cfg)));
    }
}

fn fixtures() -> LawReport {
    let mut rb = ReportBuilder::new("as", "fixtures", [1, 8]);
    let perm = |v: &[usize]| Permutation::new(v.to_vec()).expect("fixture permutation");
    let cases: [(&str, Result<Permutation>, &str); 4] = [
        ("standardize (3,2,1,8,7,5,4)", standardize(&[3, 2, 1, 8, 7, 5, 4]), "[3,2,1,7,6,5,4]"),
        (
            "(3,2,6,1,8,7,5,4) restricted to {1,4,6,7}",
            Subset::new(8, vec![1, 4, 6, 7]).and_then(|s| perm(&[3, 2, 6, 1, 8, 7, 5, 4]).restrict(&s)),
            "[2,1,4,3]",
        ),
        (
            "(3,4,2,5,1) o_2 (1,2,3)",
            perm(&[3, 4, 2, 5, 1]).partial_compose(2, &perm(&[1, 2, 3])),
            "[3,4,5,6,2,7,1]",
        ),
        ("(2,3,1) on blocks [1,2,2]", perm(&[2, 3, 1]).block_permutation(&[1, 2, 2]), "[3,4,5,1,2]"),
    ];
    for (inputs, got, want) in cases {
        let got = got.map(|p| p.to_string()).unwrap_or_else(|e| e.to_string());
        rb.record(got == want, || Counterexample { inputs: inputs.to_string(), lhs: got.clone(), rhs: want.to_string() });
    }
    rb.finish()
}

fn dims_report(operad: &str, name: &str, got: &[usize], want: impl Fn(usize) -> usize) -> LawReport {
    let mut rb = ReportBuilder::new(operad, name, [1, got.len()]);
    for (n, &g) in (1..).zip(got) {
        let w = want(n);
        rb.record(g == w, || Counterexample { inputs: format!("n={n}"), lhs: g.to_string(), rhs: w.to_string() });
    }
    rb.finish()
}

fn primitive_dims<H: HopfOperad>(h: &H, n_max: usize) -> Vec<usize> {
    (1..=n_max).map(|n| primitive_space(h, n).dim()).collect()
}

/// `Prim(As)(n)` is the span of the Dynkin brackets.
fn as_lie_span(n_max: usize) -> LawReport {
    let a = Assoc::new();
    let lie = LieInAs::new();
    let mut rb = ReportBuilder::new("as", "primitive_lie_span", [1, n_max]);
    for n in 1..=n_max {
        let prim = primitive_space(&a, n).basis;
        let dynkin: Vec<Lin<Permutation>> = lie.basis(n).iter().map(lie_dynkin_expand).collect();
        rb.record(span_equal(&prim, &dynkin), || Counterexample {
            inputs: format!("n={n}"),
            lhs: format!("{} primitive basis vectors", prim.len()),
            rhs: format!("{} Dynkin brackets", dynkin.len()),
        });
    }
    rb.finish()
}

/// `Prim(Pois)(n)` is spanned by the single-bracket labels.
fn pois_lie_span(n_max: usize) -> LawReport {
    let p = Pois::new();
    let mut rb = ReportBuilder::new("pois", "primitive_lie_span", [1, n_max]);
    for n in 1..=n_max {
        let prim = primitive_space(&p, n).basis;
        let brackets: Vec<Lin<PoisLabel>> =
            p.basis(n).into_iter().filter(|l| l.blocks().len() == 1).map(Lin::basis).collect();
        rb.record(span_equal(&prim, &brackets), || Counterexample {
            inputs: format!("n={n}"),
            lhs: format!("{} primitive basis vectors", prim.len()),
            rhs: format!("{} single brackets", brackets.len()),
        });
    }
    rb.finish()
}

/// `dim Pois(n) = n!`, alongside the partition sum of `(|B| - 1)!`.
fn pois_basis_count(n_max: usize) -> LawReport {
    let p = Pois::new();
    let mut rb = ReportBuilder::new("pois", "basis_count", [0, n_max]);
    for n in 0..=n_max {
        let count = p.basis(n).len();
        let pbw: usize = set_partitions(n).iter().map(|bs| bs.iter().map(|b| factorial(b.len() - 1)).product::<usize>()).sum();
        let want = factorial(n);
        rb.record(count == want && pbw == want, || Counterexample {
            inputs: format!("n={n}"),
            lhs: format!("basis {count}, partition sum {pbw}"),
            rhs: want.to_string(),
        });
    }
    rb.finish()
}

fn pois_generators() -> LawReport {
    let p = Pois::new();
    let mut rb = ReportBuilder::new("pois", "generator_primitivity", [2, 2]);
    let bracket = Lin::basis(p.lie_bracket());
    let product = Lin::basis(p.product());
    let bracket_ok = is_primitive(&p, &bracket).unwrap_or(false);
    rb.record(bracket_ok, || Counterexample {
        inputs: format_element(&p, &bracket),
        lhs: "not primitive".to_string(),
        rhs: "primitive".to_string(),
    });
    let product_ok = !is_primitive(&p, &product).unwrap_or(true);
    rb.record(product_ok, || Counterexample {
        inputs: format_element(&p, &product),
        lhs: "primitive".to_string(),
        rhs: "not primitive".to_string(),
    });
    rb.finish()
}

/// `Prim(Mag_2)(2)` is spanned by `v - v.(2,1)` for the binary generator `v`.
fn mag2_binary_primitive() -> LawReport {
    let m = Mag::new(2);
    let mut rb = ReportBuilder::new("mag2", "primitive_basis", [2, 2]);
    let v = Lin::basis(m.corolla(2));
    let swapped = act_right(&m, &v, &Permutation::new(vec![2, 1]).expect("transposition")).expect("arity 2");
    let want = &v - &swapped;
    let got = primitive_space(&m, 2).basis;
    rb.record(got.len() == 1 && span_equal(&got, std::slice::from_ref(&want)), || Counterexample {
        inputs: "n=2".to_string(),
        lhs: got.iter().map(|x| format_element(&m, x)).collect::<Vec<_>>().join("; "),
        rhs: format_element(&m, &want),
    });
    rb.finish()
}

fn cells(opts: &VerifyOptions) -> Vec<Cell> {
    let b = Bounds::of(opts.profile);
    let seed = opts.seed;
    let assoc = if opts.tampered { Assoc::tampered() } else { Assoc::new() };
    let sampled = |n: usize| CheckConfig::new(n, seed).with_samples(b.samples);
    let mut cells: Vec<Cell> = vec![Box::new(fixtures)];

    operad_cells(&mut cells, assoc, sampled(b.operad_n));
    operad_cells(&mut cells, Com, sampled(b.operad_n));
    operad_cells(&mut cells, Mag::new(3), sampled(b.operad_n));
    operad_cells(&mut cells, Pois::new(), sampled(b.pois_operad_n));
    operad_cells(&mut cells, LieInAs::new(), sampled(b.pois_operad_n));

    // coalgebra laws run on every basis element up to the bound
    let full = |n: usize| sampled(n).with_exhaustive_max(n);
    hopf_cells(&mut cells, assoc, full(b.as_hopf_n));
    hopf_cells(&mut cells, Pois::new(), full(b.hopf_n));
    hopf_cells(&mut cells, Mag::new(2), full(b.hopf_n));
    hopf_cells(&mut cells, Com, full(b.hopf_n));

    let n = b.as_prim_n;
    cells.push(Box::new(move || dims_report("as", "primitive_dimensions", &primitive_dims(&assoc, n), |k| factorial(k - 1))));
    cells.push(Box::new(move || as_lie_span(n)));
    let n = b.pois_prim_n;
    cells.push(Box::new(move || {
        dims_report("pois", "primitive_dimensions", &primitive_dims(&Pois::new(), n), |k| factorial(k - 1))
    }));
    cells.push(Box::new(move || pois_lie_span(n)));
    let n = b.pois_count_n;
    cells.push(Box::new(move || pois_basis_count(n)));
    cells.push(Box::new(pois_generators));
    cells.push(Box::new(mag2_binary_primitive));

    let n = b.free_n;
    let two = move || FreeAlgebra::new(assoc, Generators::from_dims(&[(1, 2)]).expect("names")).expect("positive arity");
    cells.push(Box::new(move || {
        let fa = two();
        dims_report(&fa.name(), "primitive_dimensions", &free_primitive_dimensions(&fa, n), |k| {
            factorial(k - 1) * (1 << k)
        })
    }));
    cells.push(Box::new(move || {
        let fa = two();
        let prim: Vec<usize> = (0..=n).map(|k| if k == 0 { 0 } else { factorial(k - 1) }).collect();
        check_free_primitive_dimensions(&fa, &prim, &CheckConfig::new(n, seed))
    }));
    cells.push(Box::new(move || check_free_coassoc(&two(), &CheckConfig::new(n, seed))));
    cells.push(Box::new(move || check_free_counit(&two(), &CheckConfig::new(n, seed))));
    let n = b.free_identity_n;
    cells.push(Box::new(move || {
        let fa = FreeAlgebra::new(assoc, Generators::identity()).expect("positive arity");
        dims_report(&fa.name(), "primitive_dimensions", &free_primitive_dimensions(&fa, n), |k| factorial(k - 1))
    }));
    let n = b.free_n;
    cells.push(Box::new(move || {
        let fa = FreeAlgebra::new(Com, Generators::from_dims(&[(1, 1), (2, 1)]).expect("names")).expect("positive arity");
        check_free_primitive_dimensions(&fa, &[0, 1], &CheckConfig::new(n, seed))
    }));
    cells
}

/// Runs every check. Cells run in parallel; records come back in cell order,
/// so the report is the same for a given seed and profile up to timings.
pub fn run_verification(opts: &VerifyOptions) -> VerificationReport {
    let records: Vec<Record> = cells(opts)
        .par_iter()
        .map(|cell| {
            let start = Instant::now();
            let r = cell();
            Record {
                name: r.law,
                operad: r.operad,
                arity_range: r.arity_range,
                status: r.status,
                checked: r.checked,
                elapsed_ms: start.elapsed().as_millis() as u64,
                counterexamples: r.counterexamples,
            }
        })
        .collect();
    let status = Status::from_ok(records.iter().all(|r| r.status.is_pass()));
    VerificationReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: opts.seed,
        profile: opts.profile,
        status,
        records,
    }
}
