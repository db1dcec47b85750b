//! Cores, invariant closures and subgroup enumeration against exhaustive
//! element-level and subgroup-level oracles.

use std::collections::BTreeSet;

use homolift_core::action::{enumerate_invariant_subgroups, Action, EnumerationConstraints, EnumerationPlan};
use homolift_core::zkmod::{MatrixZk, ModuleVector, SubgroupBasis};
use proptest::prelude::*;

use super::{all_vectors, brute_span, conjugated, modulus, orbit, permutation_from_keys, run};

type Set = BTreeSet<Vec<i64>>;

#[derive(Debug, Clone)]
struct Case {
    k: u64,
    n: usize,
    mats: Vec<MatrixZk>,
    gens: Vec<Vec<i64>>,
}

fn case(max_module: u64) -> impl Strategy<Value = Case> {
    (2u64..=6)
        .prop_flat_map(move |k| {
            let mut top = 1usize;
            while k.pow(top as u32 + 1) <= max_module {
                top += 1;
            }
            (Just(k), 1..=top, 1usize..=2)
        })
        .prop_flat_map(|(k, n, count)| {
            let mat = (
                prop::collection::vec(0u64..1000, n),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec((0usize..16, 0usize..16, 1i64..6), 0..8),
            )
                .prop_map(move |(keys, signs, ops)| conjugated(k, &permutation_from_keys(&keys), &signs, &ops));
            let gen = prop::collection::vec(0..k as i64, n);
            (prop::collection::vec(mat, count), prop::collection::vec(gen, 0..=3))
                .prop_map(move |(mats, gens)| Case { k, n, mats, gens })
        })
}

fn action(c: &Case) -> Action {
    let named = c.mats.iter().enumerate().map(|(i, m)| (format!("g{i}"), m.clone())).collect();
    Action::new(modulus(c.k), c.n, named).unwrap()
}

fn vectors(c: &Case) -> Vec<ModuleVector> {
    c.gens.iter().map(|g| ModuleVector::new(modulus(c.k), g.clone())).collect()
}

fn elements(s: &SubgroupBasis, k: u64, n: usize) -> Set {
    brute_span(&s.generators(), k, n)
}

fn is_invariant_set(set: &Set, c: &Case) -> bool {
    set.iter().all(|v| {
        orbit(&ModuleVector::new(modulus(c.k), v.clone()), &c.mats).iter().all(|w| set.contains(w.coords()))
    })
}

/// k^n ≤ 729: the core is exactly the set of elements whose whole orbit
/// stays in N1, and the closure is the span of the generators' orbits.
pub fn core_and_closure_are_extremal() -> Result<(), String> {
    run(256, case(729), |c| {
        let act = action(&c);
        let gens = vectors(&c);
        let n1 = SubgroupBasis::from_generators(modulus(c.k), c.n, &gens).unwrap();
        let n1_set = elements(&n1, c.k, c.n);

        let core = act.core(&n1).unwrap();
        let oracle: Set = n1_set
            .iter()
            .filter(|v| {
                orbit(&ModuleVector::new(modulus(c.k), (*v).clone()), &c.mats)
                    .iter()
                    .all(|w| n1_set.contains(w.coords()))
            })
            .cloned()
            .collect();
        prop_assert_eq!(elements(&core, c.k, c.n), oracle);
        prop_assert!(act.is_invariant(&core).unwrap());
        prop_assert!(core.is_subgroup_of(&n1).unwrap());

        let closure = act.minimal_invariant_subgroup(&gens).unwrap();
        let orbits: Vec<ModuleVector> = gens.iter().flat_map(|g| orbit(g, &c.mats)).collect();
        prop_assert_eq!(elements(&closure, c.k, c.n), brute_span(&orbits, c.k, c.n));
        prop_assert!(act.is_invariant(&closure).unwrap());
        prop_assert!(n1.is_subgroup_of(&closure).unwrap());
        prop_assert_eq!(act.is_invariant(&n1).unwrap(), core == n1);
        Ok(())
    })
}

/// Every subgroup of `Z_k^n`, from all `n`-tuples of generators.
fn all_subgroups(k: u64, n: usize) -> Vec<SubgroupBasis> {
    let vecs: Vec<ModuleVector> = all_vectors(k, n).collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let gens: Vec<ModuleVector> = idx.iter().map(|&i| vecs[i].clone()).collect();
        out.insert(SubgroupBasis::from_generators(modulus(k), n, &gens).unwrap());
        let mut t = 0;
        loop {
            if t == n {
                return out.into_iter().collect();
            }
            idx[t] += 1;
            if idx[t] < vecs.len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

fn small_case() -> impl Strategy<Value = Case> {
    case(729).prop_filter("subgroup oracle size", |c| c.k.pow(c.n as u32).checked_pow(c.n as u32).is_some_and(|t| t <= 70_000))
}

/// Enumeration, core and closure against the full subgroup lattice.
pub fn enumeration_matches_subgroup_lattice() -> Result<(), String> {
    run(96, small_case(), |c| {
        let act = action(&c);
        let invariant: Vec<(SubgroupBasis, Set)> = all_subgroups(c.k, c.n)
            .into_iter()
            .map(|s| { let e = elements(&s, c.k, c.n); (s, e) })
            .filter(|(_, e)| is_invariant_set(e, &c))
            .collect();
        let listed = enumerate_invariant_subgroups(&act, &EnumerationConstraints::default(), 1_000_000).unwrap();
        let expected: Vec<SubgroupBasis> = invariant.iter().map(|(s, _)| s.clone()).collect();
        prop_assert_eq!(&listed, &expected);

        // Quotient constraints, with chunked runs merged.
        let shapes: BTreeSet<Vec<u64>> = expected.iter().map(|s| s.quotient_invariants().unwrap()).collect();
        for q in shapes {
            let cons = EnumerationConstraints { quotient: Some(q.clone()), ..Default::default() };
            let plan = EnumerationPlan::new(&act, cons, 1_000_000).unwrap();
            let total = plan.candidate_count();
            let mid = total / 3;
            let merged = EnumerationPlan::merge(vec![
                plan.run_range(mid, total).unwrap(),
                plan.run_range(0, mid).unwrap(),
            ]);
            let want: Vec<SubgroupBasis> =
                expected.iter().filter(|s| s.quotient_invariants().unwrap() == q).cloned().collect();
            prop_assert_eq!(merged, want, "quotient {:?}", q);
        }

        // The core is the largest invariant subgroup inside N1.
        let gens = vectors(&c);
        let n1 = SubgroupBasis::from_generators(modulus(c.k), c.n, &gens).unwrap();
        let inside: Vec<&SubgroupBasis> =
            expected.iter().filter(|s| s.is_subgroup_of(&n1).unwrap()).collect();
        let largest = inside.iter().max_by_key(|s| s.order().unwrap()).unwrap();
        let core = act.core(&n1).unwrap();
        prop_assert_eq!(&core, *largest);
        for s in &inside {
            prop_assert!(s.is_subgroup_of(&core).unwrap());
        }
        let above: Vec<&SubgroupBasis> =
            expected.iter().filter(|s| n1.is_subgroup_of(s).unwrap()).collect();
        let closure = act.minimal_invariant_subgroup(&gens).unwrap();
        for s in &above {
            prop_assert!(closure.is_subgroup_of(s).unwrap());
        }
        prop_assert!(above.contains(&&closure));
        Ok(())
    })
}
