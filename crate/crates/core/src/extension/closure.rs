//! From a subgroup `N1` to the deck group of the Galois closure: the core
//! `N2`, the quotients it produces, and the split verdict for `L̃/N2`.

use crate::prelude::*;
use crate::zkmod::{quotient_of_subgroups, SubgroupBasis};
use crate::{Error, Result};

use super::ext::{build_ext_group, ExtElement, ExtGroup, ExtensionSpec};
use super::identify::{identify_ext, Identification};
use super::split::split_test;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitVerdict {
    /// Images of the generators of `L` forming a complement.
    Split(Vec<ExtElement>),
    NonSplit,
}

impl SplitVerdict {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitVerdict::Split(_))
    }
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub n1: SubgroupBasis,
    /// The core of `N1`.
    pub n2: SubgroupBasis,
    /// Invariants of `M / N1`.
    pub a_hat: Vec<u64>,
    /// Invariants of `N1 / N2`.
    pub u_group: Vec<u64>,
    /// Invariants of `K = M / N2`.
    pub k_group: Vec<u64>,
    pub group: ExtGroup,
    pub identification: Identification,
    pub verdict: SplitVerdict,
    /// Every defect already lies in `N1`, so `L̃/N2` must split.
    pub split_guaranteed: bool,
}

pub fn galois_closure_pipeline(spec: &ExtensionSpec, n1: &SubgroupBasis, budget: usize) -> Result<ClosureReport> {
    let n2 = spec.action().core(n1)?;
    let group = build_ext_group(spec, &n2)?;
    let verdict = match split_test(&group, budget as u128)? {
        Some(s) => SplitVerdict::Split(s),
        None => SplitVerdict::NonSplit,
    };
    let split_guaranteed = spec.defect_closure()?.is_subgroup_of(n1)?;
    if split_guaranteed && !verdict.is_split() {
        return Err(Error::InconsistentVerdicts("defects lie in N1 but no complement was found".into()));
    }
    let identification = identify_ext(&group, budget)?;
    Ok(ClosureReport {
        n1: n1.clone(),
        a_hat: n1.quotient_invariants()?,
        u_group: quotient_of_subgroups(n1, &n2)?,
        k_group: n2.quotient_invariants()?,
        n2,
        group,
        identification,
        verdict,
        split_guaranteed,
    })
}
