//! Riemann–Hurwitz bookkeeping, the standard actions on homology, and the
//! scenario catalog built from them.

mod actions;
mod scenarios;
mod signature;

pub use actions::{
    a5_group, format_homology, format_subgroup, free_cyclic_action, homology_names, involution_action,
    order3_action, parse_homology, s3_action, s3_group, single_cycle_action, StandardAction,
};
pub use scenarios::{run_scenario, scenario_catalog, Check, ScenarioInfo, ScenarioReport};
pub use signature::{quotient_genus, riemann_hurwitz_genus, EpimorphismSpec, OrbifoldSignature};
