//! Smith normal form over `Z` with the column transform, used to put
//! coordinates on finite abelian quotients.

use crate::prelude::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) struct Smith {
    /// Diagonal entries `d_0 | d_1 | ...`, one per column; zeros for free columns.
    pub diag: Vec<BigInt>,
    /// Column transform `V` (`n × n`): `U A V = D`.
    pub v: Vec<Vec<BigInt>>,
    /// `V^{-1}`.
    pub v_inv: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Column operation on columns `(t, j)` of a matrix given by rows:
/// `col_t ← s col_t + x col_j`, `col_j ← u col_t + w col_j`.
fn col_op(m: &mut [Vec<BigInt>], t: usize, j: usize, s: &BigInt, x: &BigInt, u: &BigInt, w: &BigInt) {
    for row in m.iter_mut() {
        let (a, b) = (row[t].clone(), row[j].clone());
        row[t] = s * &a + x * &b;
        row[j] = u * &a + w * &b;
    }
}

/// Row operation on rows `(t, j)`: `row_t ← s row_t + x row_j`, `row_j ← u row_t + w row_j`.
fn row_op(m: &mut [Vec<BigInt>], t: usize, j: usize, s: &BigInt, x: &BigInt, u: &BigInt, w: &BigInt) {
    let (rt, rj) = (m[t].clone(), m[j].clone());
    m[t] = rt.iter().zip(&rj).map(|(a, b)| s * a + x * b).collect();
    m[j] = rt.iter().zip(&rj).map(|(a, b)| u * a + w * b).collect();
}

/// `(g, s, x)` with `s a + x b = g`; prefers `s = 1, x = 0` when `a | b`
/// so that an existing pivot is never swapped out (which could cycle).
fn gcdex(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_multiple_of(a) {
        let sign = if a.is_negative() { -BigInt::one() } else { BigInt::one() };
        return (a.abs(), sign, BigInt::zero());
    }
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub(crate) fn smith(mut a: Vec<Vec<BigInt>>, n: usize) -> Smith {
    let m = a.len();
    let mut v = identity(n);
    let mut v_inv = identity(n);
    let mut diag = vec![BigInt::zero(); n];
    for t in 0..m.min(n) {
        // Pivot: the nonzero entry of least absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut().chain(v.iter_mut()) {
                row.swap(t, pj);
            }
            v_inv.swap(t, pj);
        }
        loop {
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let (g, s, x) = gcdex(&a[t][t], &a[i][t]);
                let u = -(&a[i][t] / &g);
                let w = &a[t][t] / &g;
                row_op(&mut a, t, i, &s, &x, &u, &w);
            }
            let mut touched = false;
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                touched = true;
                let (g, s, x) = gcdex(&a[t][t], &a[t][j]);
                let alpha = &a[t][t] / &g;
                let beta = &a[t][j] / &g;
                let nb = -&beta;
                col_op(&mut a, t, j, &s, &x, &nb, &alpha);
                col_op(&mut v, t, j, &s, &x, &nb, &alpha);
                // (V E)^{-1} = E^{-1} V^{-1}; E^{-1} acts on rows t, j.
                let nx = -&x;
                row_op(&mut v_inv, t, j, &alpha, &beta, &nx, &s);
            }
            if touched && (t + 1..m).any(|i| !a[i][t].is_zero()) {
                continue;
            }
            let p = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&ri) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
        }
        diag[t] = a[t][t].clone();
    }
    Smith { diag, v, v_inv }
}
