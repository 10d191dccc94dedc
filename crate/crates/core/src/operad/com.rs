use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::perm::{Permutation, Subset};
use crate::smod::SModule;
use crate::Rng;

use super::Operad;

/// The commutative operad: one basis element `e_n` in each arity, labelled by
/// its arity, with trivial action.
#[derive(Clone, Copy, Debug, Default)]
pub struct Com;

impl SModule for Com {
    type Label = usize;

    fn arity(&self, label: &usize) -> usize {
        *label
    }

    fn basis(&self, n: usize) -> Vec<usize> {
        vec![n]
    }

    fn act_basis(&self, label: &usize, _: &Permutation) -> Lin<usize> {
        Lin::basis(*label)
    }

    fn format_label(&self, label: &usize) -> String {
        format!("e{label}")
    }
}

impl Operad for Com {
    fn name(&self) -> String {
        "com".to_string()
    }

    fn unit(&self) -> usize {
        1
    }

    fn nullary(&self) -> Option<usize> {
        Some(0)
    }

    fn compose_basis(&self, x: &usize, _: usize, y: &usize) -> Lin<usize> {
        Lin::basis(x + y - 1)
    }

    fn restrict_basis(&self, _: &usize, s: &Subset) -> Lin<usize> {
        Lin::basis(s.len())
    }

    fn parse_label(&self, s: &str) -> Result<Lin<usize>> {
        let n = s
            .strip_prefix('e')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("expected e<n>, got {s:?}")))?;
        Ok(Lin::basis(n))
    }

    fn random_basis(&self, n: usize, _: &mut Rng) -> Option<usize> {
        Some(n)
    }
}
