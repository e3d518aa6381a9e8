//! Finite permutation groups, group factorizations and s-arc-transitivity of
//! coset digraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`numtheory`]: p-parts, prime sets, Legendre's formula, primitive prime divisors.
//! * [`perm`]: permutations, stabilizer chains, orbits, blocks, subgroups.
//! * [`field`] and [`groups`]: small finite fields and the named groups built on them.
//! * [`factor`]: factorization certificates and the homogeneous-factorization search.
//! * [`digraph`]: coset digraphs and the two s-arc-transitivity verifiers.
//! * [`spec`]: textual group specifications.

pub mod bounds;
pub mod digraph;
pub mod error;
pub mod factor;
pub mod field;
pub mod groups;
pub mod numtheory;
pub mod perm;
pub mod spec;

mod ser;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use perm::{PermGroup, Permutation, Subgroup};
