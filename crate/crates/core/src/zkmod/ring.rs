//! Coefficient rings for the echelon engine: `Z/kZ` on `i64` residues and `Z`
//! on big integers. Both are principal ideal rings, so one elimination routine
//! yields Howell form for the former and Hermite form for the latter.

use crate::prelude::*;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait EuclidRing {
    type E: Clone + PartialEq + core::fmt::Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// `(g, s, t, u, v)` with `s a + t b = g`, `u a + v b = 0` and `sv - tu` a unit.
    fn gcdex(&self, a: &Self::E, b: &Self::E) -> (Self::E, Self::E, Self::E, Self::E, Self::E);
    /// A unit `u` such that `u a` is the canonical associate of `a`.
    fn normalizer(&self, a: &Self::E) -> Self::E;
    /// Generator of the annihilator of a canonical pivot `g`, if nonzero.
    fn annihilator(&self, g: &Self::E) -> Option<Self::E>;
    /// Quotient `q` such that `a - q g` is the canonical remainder modulo `g`.
    fn quo(&self, a: &Self::E, g: &Self::E) -> Self::E;
    fn from_i64(&self, x: i64) -> Self::E;
    fn to_i64(&self, a: &Self::E) -> Result<i64>;
}

/// `Z/nZ` with `n ≥ 2`, residues in `[0, n)`. Products go through `i128`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ModRing {
    pub n: i64,
}

impl ModRing {
    pub(crate) fn new(n: u64) -> Self {
        debug_assert!((2..(1 << 62)).contains(&n));
        ModRing { n: n as i64 }
    }

    pub(crate) fn reduce(&self, a: i128) -> i64 {
        a.rem_euclid(self.n as i128) as i64
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

impl EuclidRing for ModRing {
    type E = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        self.reduce(*a as i128 + *b as i128)
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        self.reduce(*a as i128 * *b as i128)
    }
    fn neg(&self, a: &i64) -> i64 {
        self.reduce(-(*a as i128))
    }

    fn gcdex(&self, a: &i64, b: &i64) -> (i64, i64, i64, i64, i64) {
        let (g, s, t) = ext_gcd(*a, *b);
        let (u, v) = (-(*b / g), *a / g);
        (
            self.reduce(g as i128),
            self.reduce(s as i128),
            self.reduce(t as i128),
            self.reduce(u as i128),
            self.reduce(v as i128),
        )
    }

    fn normalizer(&self, a: &i64) -> i64 {
        // a = g a', n = g n' with gcd(a', n') = 1; any unit u ≡ a'^{-1} (mod n')
        // maps a to g. Walk the residue class until gcd(u, n) = 1.
        let g = a.gcd(&self.n);
        let a1 = a / g;
        let n1 = self.n / g;
        let mut u = if n1 == 1 {
            1
        } else {
            ext_gcd(a1.rem_euclid(n1), n1).1.rem_euclid(n1)
        };
        if u == 0 {
            u = n1;
        }
        while u.gcd(&self.n) != 1 {
            u += n1;
        }
        u % self.n
    }

    fn annihilator(&self, g: &i64) -> Option<i64> {
        let a = self.n / g;
        if a == self.n {
            None
        } else {
            Some(a)
        }
    }

    fn quo(&self, a: &i64, g: &i64) -> i64 {
        a / g
    }
    fn from_i64(&self, x: i64) -> i64 {
        x.rem_euclid(self.n)
    }
    fn to_i64(&self, a: &i64) -> Result<i64> {
        Ok(*a)
    }
}

/// The integers, for modulus 0.
#[derive(Clone, Copy, Debug)]
pub(crate) struct IntRing;

impl EuclidRing for IntRing {
    type E = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn gcdex(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
        let e = a.extended_gcd(b);
        let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        let u = -(b / &g);
        let v = a / &g;
        (g, s, t, u, v)
    }

    fn normalizer(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn annihilator(&self, _g: &BigInt) -> Option<BigInt> {
        None
    }

    fn quo(&self, a: &BigInt, g: &BigInt) -> BigInt {
        a.div_floor(g)
    }
    fn from_i64(&self, x: i64) -> BigInt {
        BigInt::from(x)
    }
    fn to_i64(&self, a: &BigInt) -> Result<i64> {
        i64::try_from(a).map_err(|_| Error::Overflow)
    }
}

/// Row-echelon data: canonical rows and their pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

fn combine<R: EuclidRing>(ring: &R, x: &R::E, p: &[R::E], y: &R::E, q: &[R::E]) -> Vec<R::E> {
    p.iter()
        .zip(q)
        .map(|(a, b)| ring.add(&ring.mul(x, a), &ring.mul(y, b)))
        .collect()
}

fn scale<R: EuclidRing>(ring: &R, x: &R::E, p: &[R::E]) -> Vec<R::E> {
    p.iter().map(|a| ring.mul(x, a)).collect()
}

fn is_zero_row<R: EuclidRing>(ring: &R, row: &[R::E]) -> bool {
    row.iter().all(|a| ring.is_zero(a))
}

/// Canonical echelon form of the row span: Howell form over `Z/nZ`, Hermite
/// form over `Z`. Pivots are canonical associates, entries above a pivot are
/// reduced to the canonical remainder range, zero rows are dropped.
pub(crate) fn echelon<R: EuclidRing>(ring: &R, rows: Vec<Vec<R::E>>, ncols: usize) -> Echelon<R::E> {
    let mut work: Vec<Vec<R::E>> = rows.into_iter().filter(|r| !is_zero_row(ring, r)).collect();
    let mut out: Vec<Vec<R::E>> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if work.is_empty() {
            break;
        }
        let mut pivot: Option<Vec<R::E>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for row in work.drain(..) {
            if ring.is_zero(&row[c]) {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (_, s, t, u, v) = ring.gcdex(&p[c], &row[c]);
                    let np = combine(ring, &s, &p, &t, &row);
                    let nr = combine(ring, &u, &p, &v, &row);
                    debug_assert!(ring.is_zero(&nr[c]));
                    if !is_zero_row(ring, &nr) {
                        rest.push(nr);
                    }
                    pivot = Some(np);
                }
            }
        }
        if let Some(p) = pivot {
            let unit = ring.normalizer(&p[c]);
            let p = scale(ring, &unit, &p);
            if let Some(ann) = ring.annihilator(&p[c]) {
                let ar = scale(ring, &ann, &p);
                if !is_zero_row(ring, &ar) {
                    rest.push(ar);
                }
            }
            out.push(p);
            pivots.push(c);
        }
        work = rest;
    }
    for i in 0..out.len() {
        let c = pivots[i];
        for j in 0..i {
            let q = ring.quo(&out[j][c], &out[i][c]);
            if !ring.is_zero(&q) {
                let nq = ring.neg(&q);
                let one = ring.one();
                out[j] = combine(ring, &one, &out[j], &nq, &out[i]);
            }
        }
    }
    Echelon { rows: out, pivots }
}

impl<E: Clone> Echelon<E> {
    /// Canonical remainder of `v` modulo the span, using only rows whose
    /// pivot lies before `limit`. Returns the remainder and the coefficient
    /// of each row used.
    pub(crate) fn reduce<R: EuclidRing<E = E>>(&self, ring: &R, v: &[E], limit: usize) -> (Vec<E>, Vec<E>) {
        let mut v = v.to_vec();
        let mut coeffs = vec![ring.zero(); self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let c = self.pivots[i];
            if c >= limit {
                break;
            }
            let q = ring.quo(&v[c], &row[c]);
            if !ring.is_zero(&q) {
                let nq = ring.neg(&q);
                let one = ring.one();
                v = combine(ring, &one, &v, &nq, row);
                coeffs[i] = q;
            }
        }
        (v, coeffs)
    }
}
