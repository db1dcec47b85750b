//! The norm-equation solver against an exhaustive sweep over every `α`.

use std::collections::BTreeSet;

use homolift_core::lift::{
    cyclic_lift_solve, cyclic_lift_solve_modulo, norm_map, norm_matrix, verify_lift, CyclicExtension,
    CyclicLiftProblem,
};
use homolift_core::zkmod::{MatrixZk, ModuleVector, SubgroupBasis};
use proptest::prelude::*;

use super::{all_vectors, brute_span, conjugated, modulus, order_of, orbit, permutation_from_keys, run};

const MAX_MODULE: u64 = 6561; // 3^8

fn max_rank(k: u64) -> usize {
    let mut n = 1;
    while k.pow(n as u32 + 1) <= MAX_MODULE {
        n += 1;
    }
    n
}

#[derive(Debug, Clone)]
struct Case {
    k: u64,
    a: MatrixZk,
    pick: usize,
    seed: usize,
}

fn case() -> impl Strategy<Value = Case> {
    sized_case(false)
}

/// `largest` pins the rank at the biggest one allowed for `k`.
fn sized_case(largest: bool) -> impl Strategy<Value = Case> {
    (2u64..=6).prop_flat_map(move |k| {
        let lo = if largest { max_rank(k) } else { 1 };
        (lo..=max_rank(k)).prop_flat_map(move |n| {
            (
                prop::collection::vec(0u64..1000, n),
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec((0usize..16, 0usize..16, 1i64..6), 0..10),
                any::<usize>(),
                any::<usize>(),
            )
                .prop_map(move |(keys, signs, ops, pick, seed)| Case {
                    k,
                    a: conjugated(k, &permutation_from_keys(&keys), &signs, &ops),
                    pick,
                    seed,
                })
        })
    })
}

/// `Σ_{i<l} A^i v`, by repeated application.
fn naive_norm(a: &MatrixZk, l: u64, v: &ModuleVector) -> ModuleVector {
    let mut acc = v.clone();
    let mut x = v.clone();
    for _ in 1..l {
        x = a.apply(&x).unwrap();
        acc = acc.add(&x).unwrap();
    }
    acc
}

/// Random `(A, m0)` with `k^n ≤ 3^8`, plus a run pinned at the largest rank.
pub fn solver_matches_exhaustive_sweep() -> Result<(), String> {
    run(256, case(), check_against_sweep)?;
    run(24, sized_case(true), check_against_sweep)
}

fn check_against_sweep(c: Case) -> Result<(), TestCaseError> {
    {
        let n = c.a.nrows();
        let l = order_of(&c.a);
        let fixed: Vec<ModuleVector> = all_vectors(c.k, n).filter(|v| c.a.apply(v).unwrap() == *v).collect();
        let m0 = fixed[c.pick % fixed.len()].clone();
        let p = CyclicLiftProblem::new(c.a.clone(), l, m0.clone()).unwrap();

        let norms: BTreeSet<Vec<i64>> = all_vectors(c.k, n).map(|v| naive_norm(&c.a, l, &v).coords().to_vec()).collect();
        let solvable = norms.contains(m0.neg().coords());
        let outcome = cyclic_lift_solve(&p).unwrap();
        prop_assert_eq!(outcome.witness().is_some(), solvable);
        let trivial = SubgroupBasis::trivial(modulus(c.k), n);
        match outcome.witness() {
            Some(alpha) => {
                prop_assert_eq!(naive_norm(&c.a, l, alpha).add(&m0).unwrap().is_zero(), true);
                prop_assert!(verify_lift(&p, alpha, &trivial).unwrap());
            }
            None => {
                let cert = outcome.certificate().unwrap();
                let lambda = cert.functional.as_ref().expect("finite modulus gives a functional");
                prop_assert!(lambda.dot(&m0).unwrap() != 0);
                for v in &norms {
                    prop_assert_eq!(lambda.dot(&ModuleVector::new(modulus(c.k), v.clone())).unwrap(), 0);
                }
            }
        }

        // Modulo an invariant subgroup generated by one orbit.
        let all: Vec<ModuleVector> = all_vectors(c.k, n).collect();
        let w = all[c.seed % all.len()].clone();
        let orb = orbit(&w, std::slice::from_ref(&c.a));
        let n_set = brute_span(&orb, c.k, n);
        let nb = SubgroupBasis::from_generators(modulus(c.k), n, &orb).unwrap();
        let solvable_mod = norms.iter().any(|v| {
            let x = ModuleVector::new(modulus(c.k), v.clone()).add(&m0).unwrap();
            n_set.contains(x.coords())
        });
        let outcome = cyclic_lift_solve_modulo(&p, &nb).unwrap();
        prop_assert_eq!(outcome.witness().is_some(), solvable_mod);
        if let Some(alpha) = outcome.witness() {
            prop_assert!(verify_lift(&p, alpha, &nb).unwrap());
        }
    }
    Ok(())
}

/// Linearity, `N = Σ A^i`, and `A N = N`.
pub fn norm_is_linear_and_telescopes() -> Result<(), String> {
    let coords = || prop::collection::vec(0i64..6, 12);
    run(256, (case(), coords(), coords()), |(c, x, y)| {
        let n = c.a.nrows();
        let m = modulus(c.k);
        let l = order_of(&c.a);
        let u = ModuleVector::new(m, x[..n].iter().map(|&t| t % c.k as i64).collect());
        let v = ModuleVector::new(m, y[..n].iter().map(|&t| t % c.k as i64).collect());
        let nu = norm_map(&c.a, l, &u).unwrap();
        let nv = norm_map(&c.a, l, &v).unwrap();
        prop_assert_eq!(norm_map(&c.a, l, &u.add(&v).unwrap()).unwrap(), nu.add(&nv).unwrap());
        prop_assert_eq!(norm_matrix(&c.a, l).unwrap().apply(&u).unwrap(), nu.clone());
        // (A - I) N = A^l - I = 0
        prop_assert_eq!(c.a.apply(&nu).unwrap(), nu.clone());
        prop_assert_eq!(nu, naive_norm(&c.a, l, &u));
        // Norm over a multiple of the order is a multiple of the norm.
        prop_assert_eq!(norm_map(&c.a, 2 * l, &u).unwrap(), norm_map(&c.a, l, &u).unwrap().scale(2).unwrap());
        Ok(())
    })
}

/// `(ψ ∘ α)^l` by multiplication equals `N(α) + m0`.
pub fn lift_power_is_norm_plus_defect() -> Result<(), String> {
    run(256, (case(), prop::collection::vec(0i64..6, 12)), |(c, x)| {
        let n = c.a.nrows();
        let m = modulus(c.k);
        let l = order_of(&c.a);
        let fixed = norm_map(&c.a, l, &ModuleVector::new(m, x[..n].iter().map(|&t| t % c.k as i64).collect())).unwrap();
        let p = CyclicLiftProblem::new(c.a.clone(), l, fixed.clone()).unwrap();
        let ext = CyclicExtension::new(&p).unwrap();
        let alpha = ModuleVector::new(m, x[..n].iter().rev().map(|&t| t % c.k as i64).collect());
        let (v, i) = ext.lift_power(&alpha).unwrap();
        prop_assert_eq!(i, 0);
        prop_assert_eq!(v, norm_map(&c.a, l, &alpha).unwrap().add(&fixed).unwrap());
        Ok(())
    })
}

