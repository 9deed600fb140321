//! Grothendieck-group classes of finite-dimensional modules over
//! `k[t1, ..., tn]`, presented as tuples of commuting matrices over `Q` or a
//! prime field.
//!
//! The class of a module is a finitely supported integer vector indexed by
//! the maximal ideals of `k[t1, ..., tn]`: each local piece of the module
//! contributes its length to the maximal ideal it is supported at. For one
//! variable the crate also computes the characteristic-polynomial invariant
//! `det(1 + t f)` and the group of constant-term-one rational functions it
//! lands in, together with the maps relating the two descriptions.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod cli;
pub mod endo;
pub mod error;
pub mod field;
pub mod kzero;
pub mod linalg;
pub mod oracle;
pub mod poly;

pub use endo::{CommutingTuple, Ideal, InvariantSubmodule, MaximalIdealKey};
pub use kzero::{GrothendieckClass, TildeClass};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use linalg::{Matrix, Subspace};
pub use poly::{Monomial, MultiPoly, UniPoly};

/// Seedable generator threaded through every randomized step.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Seed used when the caller does not supply a generator.
pub const DEFAULT_SEED: u64 = 0x6b30_656e_646f;

pub fn default_rng() -> Rng {
    seeded_rng(DEFAULT_SEED)
}

pub fn seeded_rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}
