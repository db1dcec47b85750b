//! Exact linear algebra over `Z_k` (`k ≥ 2`) and `Z` (modulus 0).
//!
//! Subgroups are stored in a span-canonical form (Howell form over `Z_k`,
//! Hermite form over `Z`), so equality of subgroups is equality of bases.

mod quotient;
mod ring;
mod smith;

use core::fmt;

use crate::prelude::*;
use crate::{Error, Result};
use num_bigint::BigInt;
use ring::{echelon, Echelon, EuclidRing, IntRing, ModRing};

pub use quotient::{QMatrix, QuotientModule};
pub(crate) use ring::gcd_u64;

/// Run `$body` with `$r` bound to the coefficient ring of `$m`.
macro_rules! with_ring {
    ($m:expr, $r:ident => $body:expr) => {
        match $m.value() {
            0 => {
                let $r = IntRing;
                $body
            }
            k => {
                let $r = ModRing::new(k);
                $body
            }
        }
    };
}

/// Coefficient modulus: `0` stands for `Z`, any `k ≥ 2` for `Z_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub const INTEGERS: Modulus = Modulus(0);

    pub fn new(k: u64) -> Result<Self> {
        if k == 1 || k >= (1 << 62) {
            return Err(Error::InvalidModulus(k));
        }
        Ok(Modulus(k))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0 != 0
    }

    pub fn reduce(self, x: i64) -> i64 {
        if self.0 == 0 {
            x
        } else {
            x.rem_euclid(self.0 as i64)
        }
    }

    fn reduce_wide(self, x: i128) -> Result<i64> {
        if self.0 == 0 {
            i64::try_from(x).map_err(|_| Error::Overflow)
        } else {
            Ok(x.rem_euclid(self.0 as i128) as i64)
        }
    }

    fn check(self, other: Modulus) -> Result<()> {
        if self != other {
            return Err(Error::ModulusMismatch(self.0, other.0));
        }
        Ok(())
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "Z")
        } else {
            write!(f, "Z_{}", self.0)
        }
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// An element of `Z_k^n`, coordinates reduced to `[0, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleVector {
    modulus: Modulus,
    coords: Vec<i64>,
}

impl ModuleVector {
    pub fn new(modulus: Modulus, coords: Vec<i64>) -> Self {
        let coords = coords.into_iter().map(|x| modulus.reduce(x)).collect();
        ModuleVector { modulus, coords }
    }

    pub fn zero(modulus: Modulus, n: usize) -> Self {
        ModuleVector { modulus, coords: vec![0; n] }
    }

    pub fn unit(modulus: Modulus, n: usize, i: usize) -> Self {
        let mut v = Self::zero(modulus, n);
        v.coords[i] = 1;
        v
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    fn check(&self, other: &ModuleVector) -> Result<()> {
        self.modulus.check(other.modulus)?;
        check_len(self.len(), other.len())
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.modulus.reduce_wide(a as i128 + b as i128))
            .collect::<Result<_>>()?;
        Ok(ModuleVector { modulus: self.modulus, coords })
    }

    pub fn sub(&self, other: &ModuleVector) -> Result<ModuleVector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModuleVector {
        let coords = self.coords.iter().map(|&a| self.modulus.reduce(-a)).collect();
        ModuleVector { modulus: self.modulus, coords }
    }

    pub fn scale(&self, c: i64) -> Result<ModuleVector> {
        let coords = self
            .coords
            .iter()
            .map(|&a| self.modulus.reduce_wide(a as i128 * c as i128))
            .collect::<Result<_>>()?;
        Ok(ModuleVector { modulus: self.modulus, coords })
    }

    /// `Σ λ_i v_i` reduced mod k.
    pub fn dot(&self, other: &ModuleVector) -> Result<i64> {
        self.check(other)?;
        let s: i128 = self.coords.iter().zip(&other.coords).map(|(&a, &b)| a as i128 * b as i128).sum();
        self.modulus.reduce_wide(s)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense matrix over `Z_k` or `Z`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixZk {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl MatrixZk {
    pub fn new(modulus: Modulus, rows: Vec<Vec<i64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::InvalidParams("matrix dimensions must be positive".into()));
        }
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            check_len(ncols, r.len())?;
            data.extend(r.into_iter().map(|x| modulus.reduce(x)));
        }
        Ok(MatrixZk { modulus, rows: nrows, cols: ncols, data })
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        MatrixZk { modulus, rows: n, cols: n, data }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[ModuleVector]) -> Result<Self> {
        let first = cols.first().ok_or_else(|| Error::InvalidParams("no columns".into()))?;
        let n = first.len();
        let rows = (0..n).map(|i| cols.iter().map(|c| c.coords.get(i).copied().unwrap_or(0)).collect()).collect();
        for c in cols {
            first.check(c)?;
        }
        MatrixZk::new(first.modulus, rows)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> ModuleVector {
        ModuleVector { modulus: self.modulus, coords: (0..self.rows).map(|i| self.get(i, j)).collect() }
    }

    pub fn transpose(&self) -> MatrixZk {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        MatrixZk { modulus: self.modulus, rows: self.cols, cols: self.rows, data }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    pub fn mul(&self, other: &MatrixZk) -> Result<MatrixZk> {
        self.modulus.check(other.modulus)?;
        check_len(self.cols, other.rows)?;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: i128 = (0..self.cols).map(|t| self.get(i, t) as i128 * other.get(t, j) as i128).sum();
                data.push(self.modulus.reduce_wide(s)?);
            }
        }
        Ok(MatrixZk { modulus: self.modulus, rows: self.rows, cols: other.cols, data })
    }

    /// `A v` for a column vector `v`.
    pub fn apply(&self, v: &ModuleVector) -> Result<ModuleVector> {
        self.modulus.check(v.modulus)?;
        check_len(self.cols, v.len())?;
        let coords = (0..self.rows)
            .map(|i| {
                let s: i128 = self.row(i).iter().zip(&v.coords).map(|(&a, &b)| a as i128 * b as i128).sum();
                self.modulus.reduce_wide(s)
            })
            .collect::<Result<_>>()?;
        Ok(ModuleVector { modulus: self.modulus, coords })
    }

    pub fn pow(&self, e: u64) -> Result<MatrixZk> {
        check_len(self.rows, self.cols)?;
        let mut result = MatrixZk::identity(self.modulus, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn add(&self, other: &MatrixZk) -> Result<MatrixZk> {
        self.modulus.check(other.modulus)?;
        check_len(self.rows, other.rows)?;
        check_len(self.cols, other.cols)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.modulus.reduce_wide(a as i128 + b as i128))
            .collect::<Result<_>>()?;
        Ok(MatrixZk { modulus: self.modulus, rows: self.rows, cols: self.cols, data })
    }

    /// Inverse over `Z_k` (or over `Z` when `det = ±1`), from the canonical
    /// form of `[A | I]`.
    pub fn inverse(&self) -> Result<MatrixZk> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::NotInvertible(self.modulus.0));
        }
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| i64::from(i == j)));
                r
            })
            .collect();
        let (rows, pivots) = canonical_rows(self.modulus, rows, 2 * n)?;
        let ok = rows.len() == n && pivots.iter().enumerate().all(|(i, &p)| p == i && rows[i][i] == 1);
        if !ok {
            return Err(Error::NotInvertible(self.modulus.0));
        }
        // The span is {(x A | x)}; canonical row i is (e_i | x) with x A = e_i,
        // so the right block is the left inverse, hence the inverse.
        let inv_rows = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        MatrixZk::new(self.modulus, inv_rows)
    }
}

impl fmt::Display for MatrixZk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

fn echelon_i64<R: EuclidRing>(ring: &R, rows: Vec<Vec<i64>>, ncols: usize) -> Result<(Vec<Vec<i64>>, Vec<usize>)> {
    let rows = rows.into_iter().map(|r| r.into_iter().map(|x| ring.from_i64(x)).collect()).collect();
    let e = echelon(ring, rows, ncols);
    let rows = e
        .rows
        .iter()
        .map(|r| r.iter().map(|x| ring.to_i64(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok((rows, e.pivots))
}

fn canonical_rows(modulus: Modulus, rows: Vec<Vec<i64>>, ncols: usize) -> Result<(Vec<Vec<i64>>, Vec<usize>)> {
    with_ring!(modulus, r => echelon_i64(&r, rows, ncols))
}

fn lift_echelon<R: EuclidRing>(ring: &R, rows: &[Vec<i64>], pivots: &[usize]) -> Echelon<R::E> {
    Echelon {
        rows: rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect(),
        pivots: pivots.to_vec(),
    }
}

/// A subgroup of `Z_k^n` (or a sublattice of `Z^n`) in canonical form.
///
/// The derived ordering compares canonical bases lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupBasis {
    modulus: Modulus,
    rank: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl SubgroupBasis {
    pub fn trivial(modulus: Modulus, rank: usize) -> Self {
        SubgroupBasis { modulus, rank, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(modulus: Modulus, rank: usize) -> Self {
        let rows = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        SubgroupBasis { modulus, rank, rows, pivots: (0..rank).collect() }
    }

    pub fn from_rows(modulus: Modulus, rank: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        for r in &rows {
            check_len(rank, r.len())?;
        }
        let (rows, pivots) = canonical_rows(modulus, rows, rank)?;
        Ok(SubgroupBasis { modulus, rank, rows, pivots })
    }

    pub fn from_generators(modulus: Modulus, rank: usize, gens: &[ModuleVector]) -> Result<Self> {
        for g in gens {
            modulus.check(g.modulus)?;
        }
        Self::from_rows(modulus, rank, gens.iter().map(|g| g.coords.clone()).collect())
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Canonical basis rows.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn generators(&self) -> Vec<ModuleVector> {
        self.rows.iter().map(|r| ModuleVector { modulus: self.modulus, coords: r.clone() }).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.modulus, self.rank)
    }

    fn check(&self, other: &SubgroupBasis) -> Result<()> {
        self.modulus.check(other.modulus)?;
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    fn check_vec(&self, v: &ModuleVector) -> Result<()> {
        self.modulus.check(v.modulus)?;
        if self.rank != v.len() {
            return Err(Error::RankMismatch(self.rank, v.len()));
        }
        Ok(())
    }

    /// Canonical representative of `v + S`.
    pub fn reduce(&self, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_vec(v)?;
        let coords = with_ring!(self.modulus, r => {
            let e = lift_echelon(&r, &self.rows, &self.pivots);
            let x: Vec<_> = v.coords.iter().map(|&c| r.from_i64(c)).collect();
            let (rem, _) = e.reduce(&r, &x, self.rank);
            rem.iter().map(|c| r.to_i64(c)).collect::<Result<Vec<_>>>()?
        });
        Ok(ModuleVector { modulus: self.modulus, coords })
    }

    pub fn contains(&self, v: &ModuleVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn is_subgroup_of(&self, other: &SubgroupBasis) -> Result<bool> {
        self.check(other)?;
        for g in self.generators() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest subgroup containing both.
    pub fn sum(&self, other: &SubgroupBasis) -> Result<SubgroupBasis> {
        self.check(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::from_rows(self.modulus, self.rank, rows)
    }

    /// Largest subgroup contained in both, by the Zassenhaus construction:
    /// the rows `(s1 | s1)` and `(s2 | 0)` span `{(u + w | u)}`, whose
    /// elements with vanishing left half are exactly `(0 | u)` with
    /// `u ∈ s1 ∩ s2`.
    pub fn intersect(&self, other: &SubgroupBasis) -> Result<SubgroupBasis> {
        self.check(other)?;
        let n = self.rank;
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for r in &self.rows {
            let mut x = r.clone();
            x.extend_from_slice(r);
            rows.push(x);
        }
        for r in &other.rows {
            let mut x = r.clone();
            x.extend(core::iter::repeat(0).take(n));
            rows.push(x);
        }
        let (rows, pivots) = canonical_rows(self.modulus, rows, 2 * n)?;
        let tail = rows.into_iter().zip(pivots).filter(|(_, p)| *p >= n).map(|(r, _)| r[n..].to_vec()).collect();
        Self::from_rows(self.modulus, n, tail)
    }

    /// `|S|`; only defined for finite modulus.
    pub fn order(&self) -> Result<u128> {
        let k = self.modulus.0;
        if k == 0 {
            return Err(Error::InfiniteSubgroup);
        }
        let mut order: u128 = 1;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let factor = (k / r[p] as u64) as u128;
            order = order.checked_mul(factor).ok_or(Error::Overflow)?;
        }
        Ok(order)
    }

    /// Invariant factors `d_1 | d_2 | ...` of `M / S`, ones omitted; a `0`
    /// entry is a free `Z` summand (modulus 0 only).
    pub fn quotient_invariants(&self) -> Result<Vec<u64>> {
        Ok(QuotientModule::new(self)?.moduli().to_vec())
    }

    /// `S` as a linear map: the subgroup's image under `A`.
    pub fn image(&self, a: &MatrixZk) -> Result<SubgroupBasis> {
        let gens = self.generators().iter().map(|g| a.apply(g)).collect::<Result<Vec<_>>>()?;
        SubgroupBasis::from_generators(self.modulus, a.nrows(), &gens)
    }
}

impl fmt::Display for SubgroupBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

/// Canonical form of the row span of `m`.
pub fn howell_form(m: &MatrixZk) -> Result<SubgroupBasis> {
    SubgroupBasis::from_rows(m.modulus, m.cols, m.to_rows())
}

/// The solutions of `A x = b`: `particular + kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    /// Canonical representative of the solution coset.
    pub particular: ModuleVector,
    pub kernel: SubgroupBasis,
}

fn solve_generic<R: EuclidRing>(
    ring: &R,
    a: &MatrixZk,
    b: &ModuleVector,
) -> Result<Option<(Vec<i64>, Vec<Vec<i64>>)>> {
    let (m, n) = (a.rows, a.cols);
    // Row j is (column j of A | e_j): its span is {(A x | x)}.
    let rows: Vec<Vec<R::E>> = (0..n)
        .map(|j| {
            let mut r: Vec<R::E> = (0..m).map(|i| ring.from_i64(a.get(i, j))).collect();
            r.extend((0..n).map(|t| if t == j { ring.one() } else { ring.zero() }));
            r
        })
        .collect();
    let e = echelon(ring, rows, m + n);
    let mut target: Vec<R::E> = b.coords.iter().map(|&x| ring.from_i64(x)).collect();
    target.extend((0..n).map(|_| ring.zero()));
    let (rem, _) = e.reduce(ring, &target, m);
    if rem[..m].iter().any(|x| !ring.is_zero(x)) {
        return Ok(None);
    }
    let x = rem[m..].iter().map(|y| ring.to_i64(&ring.neg(y))).collect::<Result<Vec<_>>>()?;
    let kernel = e
        .rows
        .iter()
        .zip(&e.pivots)
        .filter(|(_, &p)| p >= m)
        .map(|(r, _)| r[m..].iter().map(|y| ring.to_i64(y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((x, kernel)))
}

/// Solve `A x = b`. Returns `None` when `b ∉ image(A)`.
pub fn solve_linear(a: &MatrixZk, b: &ModuleVector) -> Result<Option<SolutionSet>> {
    a.modulus.check(b.modulus)?;
    check_len(a.rows, b.len())?;
    let found = with_ring!(a.modulus, r => solve_generic(&r, a, b))?;
    let Some((x, kernel_rows)) = found else { return Ok(None) };
    let kernel = SubgroupBasis::from_rows(a.modulus, a.cols, kernel_rows)?;
    let particular = kernel.reduce(&ModuleVector::new(a.modulus, x))?;
    Ok(Some(SolutionSet { particular, kernel }))
}

/// Solutions `λ` of `λ A = 0` (row vectors), i.e. the kernel of `A^T`.
pub fn left_kernel(a: &MatrixZk) -> Result<SubgroupBasis> {
    let zero = ModuleVector::zero(a.modulus, a.cols);
    let sol = solve_linear(&a.transpose(), &zero)?.expect("zero is always in the image");
    Ok(sol.kernel)
}

/// Invariant factors of `big / small`, ones omitted (`small ⊆ big` required).
pub fn quotient_of_subgroups(big: &SubgroupBasis, small: &SubgroupBasis) -> Result<Vec<u64>> {
    big.check(small)?;
    if !small.is_subgroup_of(big)? {
        return Err(Error::InvalidParams("quotient of non-nested subgroups".into()));
    }
    let q = QuotientModule::new(small)?;
    let images: Vec<Vec<i64>> = big.generators().iter().map(|g| q.project(g)).collect::<Result<_>>()?;
    q.subgroup_invariants(&images)
}

pub(crate) fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}
