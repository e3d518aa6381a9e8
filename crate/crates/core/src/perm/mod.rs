//! Permutation-group engine: elements, stabilizer chains, orbits, blocks,
//! subgroups, coset actions and small-group lattices.

mod blocks;
mod chain;
mod coset;
mod group;
mod lattice;
mod normal;
mod permutation;
mod subgroup;

pub use blocks::{is_primitive, minimal_block_system, PrimitivityVerdict};
pub use coset::{coset_action, CosetAction};
pub use group::{ElementIter, PermGroup, DEFAULT_SEED};
pub use lattice::{enumerate_subgroups, CayleyTable, ElementSet, GroupProfile, SubgroupClass, SubgroupLattice};
pub use normal::{conjugacy_classes, enumerate_normal_subgroups, is_simple};
pub use permutation::Permutation;
pub use subgroup::{are_conjugate_subgroups, intersection, normalizer, setwise_stabilizer, Subgroup};
