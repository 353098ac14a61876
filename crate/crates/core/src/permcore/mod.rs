//! Permutations, enumerated permutation groups, actions and base search.

pub mod action;
pub mod base;
pub mod group;
pub mod io;
pub mod perm;

pub use action::{
    alternating_group, cyclic_group, dihedral_action, k_subsets, ksubset_action, natural_action,
    pgl2_action, symmetric_group, DomainLabels, GroupAction,
};
pub use base::{is_base, min_base_search, search_base, BaseWitness};
pub use group::{
    conjugacy_classes, generate_group, ConjugacyClasses, PermutationGroup, Subgroup, DEFAULT_CAP,
};
pub use io::{format_group, parse_generators, parse_group};
pub use perm::Permutation;
