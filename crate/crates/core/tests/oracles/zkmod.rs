//! Canonical forms, membership and solving over Z_k checked against
//! brute-force span enumeration.

use std::collections::BTreeSet;

use homolift_core::zkmod::{solve_linear, MatrixZk, ModuleVector, Modulus, SubgroupBasis};
use proptest::prelude::*;

use super::{catch, run};

fn encode_row(v: &[i64], k: i64) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * k as usize + x as usize)
}

fn decode_row(mut idx: usize, n: usize, k: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    for i in (0..n).rev() {
        v[i] = (idx % k as usize) as i64;
        idx /= k as usize;
    }
    v
}

/// All elements of the span, as a sorted set of encoded vectors.
fn brute_span(gens: &[Vec<i64>], n: usize, k: i64) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![vec![0i64; n]];
    seen.insert(encode_row(&frontier[0], k));
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(k)).collect();
            if seen.insert(encode_row(&w, k)) {
                frontier.push(w);
            }
        }
    }
    seen
}

fn basis(k: u64, n: usize, gens: &[Vec<i64>]) -> SubgroupBasis {
    SubgroupBasis::from_rows(Modulus::new(k).unwrap(), n, gens.to_vec()).unwrap()
}

fn system() -> impl Strategy<Value = (u64, usize, Vec<Vec<i64>>)> {
    (2u64..=6, 1usize..=4).prop_flat_map(|(k, n)| {
        let row = prop::collection::vec(0..k as i64, n);
        (Just(k), Just(n), prop::collection::vec(row, 0..=5))
    })
}

/// Random invertible row operations applied to a generating set.
fn mix(gens: &[Vec<i64>], k: i64, ops: &[(usize, usize, i64, bool)]) -> Vec<Vec<i64>> {
    let mut g = gens.to_vec();
    if g.is_empty() {
        return g;
    }
    let m = g.len();
    for &(i, j, c, swap) in ops {
        let (i, j) = (i % m, j % m);
        if swap {
            g.swap(i, j);
        } else if i != j {
            let rj = g[j].clone();
            for (x, y) in g[i].iter_mut().zip(&rj) {
                *x = (*x + c * y).rem_euclid(k);
            }
        }
    }
    // Append a redundant combination and a unit multiple.
    let extra: Vec<i64> = g[0].iter().zip(&g[m - 1]).map(|(a, b)| (2 * a + 3 * b).rem_euclid(k)).collect();
    g.push(extra);
    let unit = (1..k).find(|u| num_gcd(*u, k) == 1 && *u > 1).unwrap_or(1);
    g[0] = g[0].iter().map(|x| (x * unit).rem_euclid(k)).collect();
    g
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// Howell forms of spans related by invertible row operations coincide.
pub fn canonical_form_is_span_invariant() -> Result<(), String> {
    let ops = prop::collection::vec((0usize..6, 0usize..6, 1i64..6, any::<bool>()), 0..8);
    run(10_000, (system(), ops), |((k, n, gens), ops)| {
        let mixed = mix(&gens, k as i64, &ops);
        prop_assert_eq!(brute_span(&gens, n, k as i64), brute_span(&mixed, n, k as i64));
        prop_assert_eq!(basis(k, n, &gens), basis(k, n, &mixed));
        Ok(())
    })
}

/// Canonical rows, order, membership, sums and intersections against spans.
pub fn form_matches_brute_span() -> Result<(), String> {
    let other = prop::collection::vec(prop::collection::vec(0i64..6, 4), 0..=4);
    run(2_000, (system(), other), |((k, n, gens), k2_gens)| {
        let s = basis(k, n, &gens);
        let span = brute_span(&gens, n, k as i64);
        // The canonical rows generate exactly the same set.
        prop_assert_eq!(brute_span(s.rows(), n, k as i64), span.clone());
        prop_assert_eq!(s.order().unwrap(), span.len() as u128);
        // |S| |M/S| = k^n
        let q: u128 = s.quotient_invariants().unwrap().iter().map(|&d| d as u128).product();
        prop_assert_eq!(s.order().unwrap() * q, (k as u128).pow(n as u32));
        // Idempotence.
        let again = SubgroupBasis::from_rows(s.modulus(), n, s.rows().to_vec()).unwrap();
        prop_assert_eq!(&again, &s);

        // Equality of forms iff equality of spans, against a second random set.
        let other: Vec<Vec<i64>> = k2_gens.iter().map(|r| r[..n].iter().map(|x| x % k as i64).collect()).collect();
        let t = basis(k, n, &other);
        let tspan = brute_span(&other, n, k as i64);
        prop_assert_eq!(s == t, span == tspan);

        // Membership, sum, intersection.
        let modulus = Modulus::new(k).unwrap();
        let total = (k as usize).pow(n as u32);
        let sum = s.sum(&t).unwrap();
        let inter = s.intersect(&t).unwrap();
        let sum_span = brute_span(&[gens.clone(), other.clone()].concat(), n, k as i64);
        for idx in 0..total {
            let v = ModuleVector::new(modulus, decode_row(idx, n, k as i64));
            prop_assert_eq!(s.contains(&v).unwrap(), span.contains(&idx));
            prop_assert_eq!(sum.contains(&v).unwrap(), sum_span.contains(&idx));
            prop_assert_eq!(inter.contains(&v).unwrap(), span.contains(&idx) && tspan.contains(&idx));
            // Coset representatives are constant on cosets.
            let rep = s.reduce(&v).unwrap();
            prop_assert!(s.contains(&v.sub(&rep).unwrap()).unwrap());
        }
        Ok(())
    })
}

/// `solve_linear` against exhaustion over all `x`.
pub fn solve_matches_exhaustion() -> Result<(), String> {
    let strategy = (
        2u64..=6,
        1usize..=3,
        1usize..=3,
        prop::collection::vec(0i64..6, 9),
        prop::collection::vec(0i64..6, 3),
    );
    run(2_000, strategy, |(k, m, n, entries, rhs)| {
        let modulus = Modulus::new(k).unwrap();
        let rows: Vec<Vec<i64>> = (0..m).map(|i| (0..n).map(|j| entries[i * 3 + j]).collect()).collect();
        let a = MatrixZk::new(modulus, rows).unwrap();
        let b = ModuleVector::new(modulus, rhs[..m].to_vec());
        let mut solutions = 0u128;
        let mut kernel = 0u128;
        for idx in 0..(k as usize).pow(n as u32) {
            let x = ModuleVector::new(modulus, decode_row(idx, n, k as i64));
            let ax = a.apply(&x).unwrap();
            if ax == b { solutions += 1; }
            if ax.is_zero() { kernel += 1; }
        }
        match solve_linear(&a, &b).unwrap() {
            None => prop_assert_eq!(solutions, 0),
            Some(sol) => {
                prop_assert_eq!(a.apply(&sol.particular).unwrap(), b);
                for r in sol.kernel.generators() {
                    prop_assert!(a.apply(&r).unwrap().is_zero());
                }
                prop_assert_eq!(sol.kernel.order().unwrap(), kernel);
                prop_assert_eq!(solutions, kernel);
            }
        }
        Ok(())
    })
}

fn all_subgroups(k: u64, n: usize) -> Vec<SubgroupBasis> {
    let total = (k as usize).pow(n as u32);
    let mut out = BTreeSet::new();
    for a in 0..total {
        for b in 0..total {
            for c in 0..total {
                let gens: Vec<Vec<i64>> = [a, b, c].iter().map(|&i| decode_row(i, n, k as i64)).collect();
                out.insert(basis(k, n, &gens));
            }
        }
    }
    out.into_iter().collect()
}

/// Lattice laws over every subgroup of two small modules.
pub fn lattice_laws_exhaustive() -> Result<(), String> {
    catch(|| {
        for (k, n, expected) in [(2u64, 3usize, 16usize), (3, 2, 6)] {
            let subs = all_subgroups(k, n);
            assert_eq!(subs.len(), expected, "number of subgroups of Z_{k}^{n}");
            for a in &subs {
                for b in &subs {
                    assert_eq!(a.sum(b).unwrap(), b.sum(a).unwrap());
                    assert_eq!(a.intersect(b).unwrap(), b.intersect(a).unwrap());
                    assert_eq!(a.sum(&a.intersect(b).unwrap()).unwrap(), *a);
                    assert_eq!(a.intersect(&a.sum(b).unwrap()).unwrap(), *a);
                    for c in &subs {
                        assert_eq!(a.sum(b).unwrap().sum(c).unwrap(), a.sum(&b.sum(c).unwrap()).unwrap());
                        assert_eq!(
                            a.intersect(b).unwrap().intersect(c).unwrap(),
                            a.intersect(&b.intersect(c).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    })
}
