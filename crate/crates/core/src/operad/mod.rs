//! Operads given by a basis in each arity, with partial composition,
//! restriction and degeneracies.

mod assoc;
mod com;
pub mod laws;
pub mod lie;
mod mag;
pub mod pois;

pub use assoc::Assoc;
pub use com::Com;
pub use lie::{lie_dynkin_expand, lie_straighten, DynkinBlock, LieInAs};
pub use mag::{Mag, MagTree};
pub use pois::{Pois, PoisLabel};

use rand::seq::SliceRandom;

use crate::error::{invalid, Error, Result};
use crate::lin::Lin;
use crate::perm::{Permutation, Subset};
use crate::smod::{arity_of, IModule, SModule};
use crate::Rng;

pub trait Operad: SModule {
    /// Short name used in reports and on the command line.
    fn name(&self) -> String;

    /// The unit `1_1`.
    fn unit(&self) -> Self::Label;

    /// The basis element `1_0` of a connected operad.
    fn nullary(&self) -> Option<Self::Label>;

    /// `x o_i y` on basis labels.
    fn compose_basis(&self, x: &Self::Label, i: usize, y: &Self::Label) -> Lin<Self::Label>;

    /// `x|_S`. The default composes `1_0` into every slot outside `S`.
    fn restrict_basis(&self, x: &Self::Label, s: &Subset) -> Lin<Self::Label> {
        let Some(z) = self.nullary() else {
            return Lin::zero();
        };
        let mut cur = Lin::basis(x.clone());
        for v in (1..=s.n()).rev().filter(|v| !s.contains(*v)) {
            cur = cur.flat_map(|l| self.compose_basis(l, v, &z));
        }
        cur
    }

    /// Parses one label token of the textual grammar into an element.
    fn parse_label(&self, s: &str) -> Result<Lin<Self::Label>>;

    fn random_basis(&self, n: usize, rng: &mut Rng) -> Option<Self::Label> {
        self.basis(n).choose(rng).cloned()
    }
}

impl<P: Operad> IModule for P {
    fn degeneracy_basis(&self, label: &Self::Label, i: usize) -> Lin<Self::Label> {
        let n = self.arity(label);
        let members = (1..=n).filter(|&v| v != i).collect();
        self.restrict_basis(label, &Subset::from_sorted_unchecked(n, members))
    }
}

fn require_arity<P: Operad>(p: &P, x: &Lin<P::Label>) -> Result<usize> {
    match arity_of(p, x)? {
        Some(a) => Ok(a),
        None => Err(Error::InvalidInput("zero element has no arity".to_string())),
    }
}

/// `x o_i y`. Zero operands give zero.
pub fn compose_partial<P: Operad>(p: &P, x: &Lin<P::Label>, i: usize, y: &Lin<P::Label>) -> Result<Lin<P::Label>> {
    if let Some(n) = arity_of(p, x)? {
        if i == 0 || i > n {
            return invalid(format!("composition slot {i} out of range 1..={n}"));
        }
    }
    arity_of(p, y)?;
    Ok(x.bilinear(y, |a, b| p.compose_basis(a, i, b)))
}

/// `gamma(x; y_1, ..., y_n)`, filling the slots from the last one down.
pub fn compose_full<P: Operad>(p: &P, x: &Lin<P::Label>, ys: &[Lin<P::Label>]) -> Result<Lin<P::Label>> {
    if x.is_zero() {
        return Ok(Lin::zero());
    }
    let n = require_arity(p, x)?;
    if ys.len() != n {
        return invalid(format!("arity {n} element given {} operands", ys.len()));
    }
    let mut cur = x.clone();
    for (i, y) in ys.iter().enumerate().rev() {
        cur = compose_partial(p, &cur, i + 1, y)?;
    }
    Ok(cur)
}

/// Same as [`compose_full`] but filling slots from the first one up, tracking
/// the shifting slot indices.
pub fn compose_full_forward<P: Operad>(p: &P, x: &Lin<P::Label>, ys: &[Lin<P::Label>]) -> Result<Lin<P::Label>> {
    if x.is_zero() {
        return Ok(Lin::zero());
    }
    let n = require_arity(p, x)?;
    if ys.len() != n {
        return invalid(format!("arity {n} element given {} operands", ys.len()));
    }
    let mut cur = x.clone();
    let mut slot = 1;
    for y in ys {
        cur = compose_partial(p, &cur, slot, y)?;
        if cur.is_zero() {
            return Ok(cur);
        }
        slot += require_arity(p, y)?;
    }
    Ok(cur)
}

pub fn restrict_to_set<P: Operad>(p: &P, x: &Lin<P::Label>, s: &Subset) -> Result<Lin<P::Label>> {
    if let Some(n) = arity_of(p, x)? {
        if n != s.n() {
            return invalid(format!("restricting an arity {n} element along a subset of [{}]", s.n()));
        }
    }
    Ok(x.flat_map(|l| p.restrict_basis(l, s)))
}

pub fn degeneracy<P: Operad>(p: &P, x: &Lin<P::Label>, i: usize) -> Result<Lin<P::Label>> {
    if let Some(n) = arity_of(p, x)? {
        if i == 0 || i > n {
            return invalid(format!("degeneracy index {i} out of range 1..={n}"));
        }
    }
    Ok(x.flat_map(|l| p.degeneracy_basis(l, i)))
}

/// The scalar `c` with `x|_{empty} = c 1_0`.
pub fn empty_restriction_coeff<P: Operad + ?Sized>(p: &P, l: &P::Label) -> crate::exact::Rational {
    match p.nullary() {
        Some(z) => p.restrict_basis(l, &Subset::empty(p.arity(l))).coeff(&z),
        None => num_traits::Zero::zero(),
    }
}

/// A uniformly random permutation of length `n`.
pub fn random_permutation(n: usize, rng: &mut Rng) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffled identity")
}

/// Parses `c1*label1 + c2*label2 - ...` where each label is read by
/// [`Operad::parse_label`]; `1_0` and `1_1` are accepted for every operad.
pub fn parse_element<P: Operad>(p: &P, text: &str) -> Result<Lin<P::Label>> {
    let mut out = Lin::zero();
    let terms = crate::parse::split_terms(text)?;
    for (coeff, body) in terms {
        let l = match body.as_str() {
            "1_0" => match p.nullary() {
                Some(z) => Lin::basis(z),
                None => return Err(Error::Parse(format!("{} has no arity-0 element", p.name()))),
            },
            "1_1" => Lin::basis(p.unit()),
            _ => p.parse_label(&body)?,
        };
        out.add_scaled(&l, &coeff);
    }
    arity_of(p, &out)?;
    Ok(out)
}
