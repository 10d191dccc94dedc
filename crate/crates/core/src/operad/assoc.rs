use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::perm::{all_permutations, Permutation, Subset};
use crate::smod::SModule;
use crate::Rng;

use super::{random_permutation, Operad};

/// The associative operad: `As(n)` is the regular representation of `S_n`.
///
/// A permutation `s` stands for the word in which variable `x_j` sits at
/// position `s(j)`. Composition substitutes into a variable, restriction keeps
/// a set of variables, and the right action renames variables.
#[derive(Clone, Copy, Debug, Default)]
pub struct Assoc {
    tampered: bool,
}

impl Assoc {
    pub fn new() -> Self {
        Assoc { tampered: false }
    }

    /// A deliberately broken variant that inverts the inner operand before
    /// composing. Used to check that the law suites detect faults.
    pub fn tampered() -> Self {
        Assoc { tampered: true }
    }
}

impl SModule for Assoc {
    type Label = Permutation;

    fn arity(&self, label: &Permutation) -> usize {
        label.len()
    }

    fn basis(&self, n: usize) -> Vec<Permutation> {
        all_permutations(n)
    }

    fn act_basis(&self, label: &Permutation, sigma: &Permutation) -> Lin<Permutation> {
        Lin::basis(label.mul_unchecked(sigma))
    }

    fn format_label(&self, label: &Permutation) -> String {
        label.to_string()
    }
}

impl Operad for Assoc {
    fn name(&self) -> String {
        "as".to_string()
    }

    fn unit(&self) -> Permutation {
        Permutation::identity(1)
    }

    fn nullary(&self) -> Option<Permutation> {
        Some(Permutation::identity(0))
    }

    fn compose_basis(&self, x: &Permutation, i: usize, y: &Permutation) -> Lin<Permutation> {
        let y = if self.tampered { y.invert() } else { y.clone() };
        Lin::basis(x.partial_compose(i, &y).expect("slot checked by caller"))
    }

    fn restrict_basis(&self, x: &Permutation, s: &Subset) -> Lin<Permutation> {
        Lin::basis(x.restrict_positions(s.members()))
    }

    fn parse_label(&self, s: &str) -> Result<Lin<Permutation>> {
        let p: Permutation = s.parse().map_err(|e: Error| Error::Parse(e.to_string()))?;
        Ok(Lin::basis(p))
    }

    fn random_basis(&self, n: usize, rng: &mut Rng) -> Option<Permutation> {
        Some(random_permutation(n, rng))
    }
}
