//! Finite groups `L`, the extensions `L̃/N`, complements, and identification.

mod closure;
mod coset;
mod ext;
mod group;
mod identify;
mod split;

pub use closure::{galois_closure_pipeline, ClosureReport, SplitVerdict};
pub use coset::coset_enumerate;
pub use ext::{build_ext_group, solve_edge_defects, EdgeDefectTable, ExtElement, ExtGroup, ExtensionSpec};
pub use group::{closure, realize_group, FiniteGroup, GroupOps, Permutation, SubgroupView, DEFAULT_GROUP_BOUND};
pub use identify::{
    abelian_invariants_from_orders, abelian_name, center, derived_subgroup, element_order, fingerprint,
    identify_ext, identify_group, normal_closure, recognize, Fingerprint, Identification, DEFAULT_IDENTIFY_BUDGET,
};
pub use split::{split_test, DEFAULT_SPLIT_BUDGET};
