//! Brute-force oracles shared by the property test targets and the
//! acceptance runner. Every suite is a plain function so both can call it.
#![allow(dead_code)]

pub mod action;
pub mod extension;
pub mod lift;
pub mod zkmod;

use std::collections::BTreeSet;

use homolift_core::zkmod::{MatrixZk, ModuleVector, Modulus};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

/// Run a property for `cases` inputs from a fixed seed; the error carries
/// the shrunk counterexample.
pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// Turn a panicking exhaustive check into a `Result`.
pub fn catch(f: impl FnOnce() + std::panic::UnwindSafe) -> Result<(), String> {
    std::panic::catch_unwind(f).map_err(|e| {
        e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
    })
}

pub fn modulus(k: u64) -> Modulus {
    Modulus::new(k).unwrap()
}

/// Coordinate 0 most significant; only used as a set key.
pub fn encode(v: &[i64], k: u64) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * k as usize + x as usize)
}

pub fn decode(mut idx: usize, n: usize, k: u64) -> Vec<i64> {
    let mut v = vec![0; n];
    for i in (0..n).rev() {
        v[i] = (idx % k as usize) as i64;
        idx /= k as usize;
    }
    v
}

pub fn all_vectors(k: u64, n: usize) -> impl Iterator<Item = ModuleVector> {
    let m = modulus(k);
    (0..(k as usize).pow(n as u32)).map(move |i| ModuleVector::new(m, decode(i, n, k)))
}

/// Signed permutation matrix: column `i` is `signs[i] · e_{perm[i]}`.
pub fn signed_permutation(k: u64, perm: &[usize], signs: &[bool]) -> MatrixZk {
    let n = perm.len();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        rows[perm[i]][i] = if signs[i] { k as i64 - 1 } else { 1 };
    }
    MatrixZk::new(modulus(k), rows).unwrap()
}

/// Product of elementary matrices `I + c E_ij`.
pub fn unimodular(k: u64, n: usize, ops: &[(usize, usize, i64)]) -> MatrixZk {
    let m = modulus(k);
    let mut p = MatrixZk::identity(m, n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut rows = MatrixZk::identity(m, n).to_rows();
        rows[i][j] = c.rem_euclid(k as i64);
        p = p.mul(&MatrixZk::new(m, rows).unwrap()).unwrap();
    }
    p
}

/// `P D P^{-1}`: a finite-order automorphism in a random basis.
pub fn conjugated(k: u64, perm: &[usize], signs: &[bool], ops: &[(usize, usize, i64)]) -> MatrixZk {
    let d = signed_permutation(k, perm, signs);
    let p = unimodular(k, perm.len(), ops);
    p.mul(&d).unwrap().mul(&p.inverse().unwrap()).unwrap()
}

pub fn order_of(a: &MatrixZk) -> u64 {
    let mut p = a.clone();
    let mut n = 1;
    while !p.is_identity() {
        p = p.mul(a).unwrap();
        n += 1;
        assert!(n <= 10_000, "matrix of unexpectedly large order");
    }
    n
}

/// Every element of the subgroup generated by `gens`, by breadth-first sums.
pub fn brute_span(gens: &[ModuleVector], k: u64, n: usize) -> BTreeSet<Vec<i64>> {
    let m = modulus(k);
    let zero = ModuleVector::zero(m, n);
    let mut seen = BTreeSet::from([zero.coords().to_vec()]);
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = v.add(g).unwrap();
            if seen.insert(w.coords().to_vec()) {
                frontier.push(w);
            }
        }
    }
    seen
}

/// Orbit of `v` under the group generated by `mats` and their inverses.
pub fn orbit(v: &ModuleVector, mats: &[MatrixZk]) -> Vec<ModuleVector> {
    let mut all: Vec<MatrixZk> = mats.to_vec();
    all.extend(mats.iter().map(|a| a.inverse().unwrap()));
    let mut seen = BTreeSet::from([v.coords().to_vec()]);
    let mut out = vec![v.clone()];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for a in &all {
            let y = a.apply(&x).unwrap();
            if seen.insert(y.coords().to_vec()) {
                out.push(y);
            }
        }
    }
    out
}

pub fn permutation_from_keys(keys: &[u64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by_key(|&i| (keys[i], i));
    idx
}
