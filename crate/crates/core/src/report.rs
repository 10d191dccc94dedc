//! Law-check reports and the shared machinery for running checks.

use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub operad: String,
    pub law: String,
    pub arity_range: [usize; 2],
    pub status: Status,
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Bounds for a law check: every input combination whose arities stay within
/// `exhaustive_max` is checked, then `samples` random combinations up to
/// `n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub n_max: usize,
    pub exhaustive_max: usize,
    pub samples: usize,
    pub seed: u64,
}

impl CheckConfig {
    pub fn new(n_max: usize, seed: u64) -> Self {
        CheckConfig { n_max, exhaustive_max: n_max.min(4), samples: 200, seed }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_exhaustive_max(mut self, m: usize) -> Self {
        self.exhaustive_max = m.min(self.n_max);
        self
    }

    /// True when sampling adds arities beyond the exhaustive range.
    pub fn sampling(&self) -> bool {
        self.n_max > self.exhaustive_max && self.samples > 0
    }

    /// A generator seeded from the run seed and a tag naming the check, so
    /// reordering checks does not change any of them.
    pub fn rng(&self, tag: &str) -> Rng {
        Rng::seed_from_u64(self.seed ^ fnv1a(tag))
    }
}

pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub const MAX_COUNTEREXAMPLES: usize = 5;

/// Runs `check` over all cases in parallel and keeps the first few failures
/// in case order.
pub fn run_cases<T: Sync>(cases: &[T], check: impl Fn(&T) -> Option<Counterexample> + Sync) -> (usize, Vec<Counterexample>) {
    let failures: Vec<Counterexample> = cases.par_iter().filter_map(&check).collect();
    (cases.len(), failures.into_iter().take(MAX_COUNTEREXAMPLES).collect())
}

/// Accumulates case outcomes into a report.
pub struct ReportBuilder {
    operad: String,
    law: String,
    pub arity_range: [usize; 2],
    checked: usize,
    counterexamples: Vec<Counterexample>,
    failed: bool,
}

impl ReportBuilder {
    pub fn new(operad: &str, law: &str, arity_range: [usize; 2]) -> Self {
        ReportBuilder {
            operad: operad.to_string(),
            law: law.to_string(),
            arity_range,
            checked: 0,
            counterexamples: Vec::new(),
            failed: false,
        }
    }

    pub fn absorb(&mut self, (checked, cex): (usize, Vec<Counterexample>)) {
        self.checked += checked;
        if !cex.is_empty() {
            self.failed = true;
        }
        for c in cex {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
    }

    pub fn record(&mut self, ok: bool, cex: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok {
            self.failed = true;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(cex());
            }
        }
    }

    pub fn finish(self) -> LawReport {
        LawReport {
            operad: self.operad,
            law: self.law,
            arity_range: self.arity_range,
            status: Status::from_ok(!self.failed),
            checked: self.checked,
            counterexamples: self.counterexamples,
        }
    }
}
