//! Permutations and permutation groups.

mod backtrack;
mod blocks;
mod chain;
mod composition;
mod cosets;
mod group;
pub mod named;
mod parse;
mod permutation;
mod sylow;

pub use backtrack::{is_conjugate_subgroup, setwise_stabilizer, Conjugacy};
pub use blocks::{all_block_systems, minimal_block_system, BlockSystem};
pub use composition::{composition_factors, CompositionFactor, CompositionReport, FactorKind};
pub use cosets::{canonical_coset_element, CosetSpace};
pub use group::{commutator, PermGroup, DERIVED_SERIES_CAP};
pub use named::{alternating, sylow2, symmetric, ExceptionalDegree6, GroupTag};
pub use parse::{GeneratorSpec, GroupSpecFile};
pub use permutation::Permutation;
pub use sylow::{p_core, sylow_subgroup};
