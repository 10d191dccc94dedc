//! Exact computations with operads in S-modules: the associative,
//! commutative, Lie, Poisson and magmatic operads, the twisted Hopf coproduct
//! of a connected Hopf operad, primitive suboperads, and checkers for the
//! identities these structures satisfy.

pub mod error;
pub mod exact;
pub mod freealg;
pub mod hopf;
pub mod lin;
pub mod operad;
pub mod parse;
pub mod perm;
pub mod report;
pub mod smod;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Rational, RationalMatrix};
pub use lin::Lin;
pub use perm::{Permutation, Subset};

/// The random generator used by every sampled check.
pub type Rng = rand_chacha::ChaCha8Rng;
