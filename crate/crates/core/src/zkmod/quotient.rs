//! Coordinates on `M / N` as a product of cyclic groups.

use crate::prelude::*;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::smith::smith;
use super::{to_big, ModuleVector, Modulus, SubgroupBasis};

/// `M / N ≅ ⊕ Z_{d_i}` with explicit projection and section.
///
/// Coordinate `i` of the image of `x` is `(x V)_i mod d_i`, where `V` is the
/// Smith column transform of the relation matrix `[N; k I]`. A modulus entry
/// `0` is a free coordinate (only for `M = Z^n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientModule {
    subgroup: SubgroupBasis,
    moduli: Vec<u64>,
    /// `n × q`.
    proj: Vec<Vec<i64>>,
    /// `q × n`: row `i` lifts the `i`-th generator.
    lift: Vec<Vec<i64>>,
}

impl QuotientModule {
    pub fn new(subgroup: &SubgroupBasis) -> Result<Self> {
        let modulus = subgroup.modulus();
        let n = subgroup.rank();
        let k = modulus.value();
        let mut rel = to_big(subgroup.rows());
        if k != 0 {
            for i in 0..n {
                let mut r = vec![BigInt::zero(); n];
                r[i] = BigInt::from(k);
                rel.push(r);
            }
        }
        let s = smith(rel, n);
        let mut moduli = Vec::new();
        let mut keep = Vec::new();
        for (t, d) in s.diag.iter().enumerate() {
            if *d == BigInt::from(1) {
                continue;
            }
            moduli.push(d.to_u64().ok_or(Error::Overflow)?);
            keep.push(t);
        }
        let small = |x: &BigInt, m: u64| -> Result<i64> {
            if m == 0 {
                x.to_i64().ok_or(Error::Overflow)
            } else {
                Ok(x.mod_floor(&BigInt::from(m)).to_i64().expect("reduced below modulus"))
            }
        };
        let proj = (0..n)
            .map(|j| keep.iter().zip(&moduli).map(|(&t, &d)| small(&s.v[j][t], d)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let lift = keep
            .iter()
            .map(|&t| s.v_inv[t].iter().map(|x| small(x, k)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(QuotientModule { subgroup: subgroup.clone(), moduli, proj, lift })
    }

    pub fn modulus(&self) -> Modulus {
        self.subgroup.modulus()
    }

    pub fn ambient_rank(&self) -> usize {
        self.subgroup.rank()
    }

    pub fn subgroup(&self) -> &SubgroupBasis {
        &self.subgroup
    }

    /// Cyclic factor orders `d_1 | d_2 | ...`.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    /// `|M / N|`, or `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        self.moduli.iter().try_fold(1u128, |acc, &d| if d == 0 { None } else { acc.checked_mul(d as u128) })
    }

    pub fn reduce_coords(&self, y: &mut [i64]) {
        for (x, &d) in y.iter_mut().zip(&self.moduli) {
            if d != 0 {
                *x = x.rem_euclid(d as i64);
            }
        }
    }

    pub fn project(&self, v: &ModuleVector) -> Result<Vec<i64>> {
        if v.len() != self.ambient_rank() {
            return Err(Error::RankMismatch(self.ambient_rank(), v.len()));
        }
        self.moduli
            .iter()
            .enumerate()
            .map(|(t, &d)| {
                let s: i128 = v.coords().iter().zip(&self.proj).map(|(&x, p)| x as i128 * p[t] as i128).sum();
                if d == 0 {
                    i64::try_from(s).map_err(|_| Error::Overflow)
                } else {
                    Ok(s.rem_euclid(d as i128) as i64)
                }
            })
            .collect()
    }

    /// A representative in `M` of the coset with coordinates `y`.
    pub fn lift(&self, y: &[i64]) -> Result<ModuleVector> {
        let modulus = self.modulus();
        let coords = (0..self.ambient_rank())
            .map(|j| {
                let s: i128 = y.iter().zip(&self.lift).map(|(&c, l)| c as i128 * l[j] as i128).sum();
                if modulus.is_finite() {
                    Ok(s.rem_euclid(modulus.value() as i128) as i64)
                } else {
                    i64::try_from(s).map_err(|_| Error::Overflow)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleVector::new(modulus, coords))
    }

    /// Mixed-radix index of a reduced coordinate vector (finite case).
    pub fn encode(&self, y: &[i64]) -> u64 {
        let mut idx = 0u64;
        for (&x, &d) in y.iter().zip(&self.moduli).rev() {
            idx = idx * d + x as u64;
        }
        idx
    }

    pub fn decode(&self, mut idx: u64) -> Vec<i64> {
        self.moduli
            .iter()
            .map(|&d| {
                let x = idx % d;
                idx /= d;
                x as i64
            })
            .collect()
    }

    /// The matrix of the endomorphism induced by `a` (which must preserve `N`).
    pub fn induced(&self, a: &super::MatrixZk) -> Result<QMatrix> {
        let q = self.dim();
        let mut data = vec![vec![0i64; q]; q];
        for t in 0..q {
            let mut e = vec![0i64; q];
            e[t] = 1;
            let img = self.project(&a.apply(&self.lift(&e)?)?)?;
            for i in 0..q {
                data[i][t] = img[i];
            }
        }
        Ok(QMatrix { moduli: self.moduli.clone(), data })
    }

    /// Invariant factors of the subgroup of `⊕ Z_{d_i}` generated by `gens`
    /// (each a reduced coordinate vector): the group is `Z^r / Λ` with
    /// `Λ = {c : Σ c_j g_j = 0}`, computed from the Hermite form of
    /// `[[G | I]; [D | 0]]`.
    pub fn subgroup_invariants(&self, gens: &[Vec<i64>]) -> Result<Vec<u64>> {
        let q = self.dim();
        let r = gens.len();
        if r == 0 {
            return Ok(Vec::new());
        }
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (j, g) in gens.iter().enumerate() {
            let mut row = g.clone();
            row.extend((0..r).map(|t| i64::from(t == j)));
            rows.push(row);
        }
        for (i, &d) in self.moduli.iter().enumerate() {
            let mut row = vec![0i64; q + r];
            row[i] = d as i64;
            rows.push(row);
        }
        let lattice = SubgroupBasis::from_rows(Modulus::INTEGERS, q + r, rows)?;
        let kernel: Vec<Vec<i64>> = lattice
            .rows()
            .iter()
            .zip(lattice.pivots())
            .filter(|(_, &p)| p >= q)
            .map(|(row, _)| row[q..].to_vec())
            .collect();
        let s = smith(to_big(&kernel), r);
        let mut inv = Vec::new();
        for d in &s.diag {
            if *d != BigInt::from(1) {
                inv.push(d.to_u64().ok_or(Error::Overflow)?);
            }
        }
        Ok(inv)
    }
}

/// An endomorphism of `⊕ Z_{d_i}`, acting on coordinate column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    moduli: Vec<u64>,
    data: Vec<Vec<i64>>,
}

impl QMatrix {
    pub fn identity(moduli: &[u64]) -> Self {
        let q = moduli.len();
        let data = (0..q).map(|i| (0..q).map(|j| i64::from(i == j)).collect()).collect();
        QMatrix { moduli: moduli.to_vec(), data }
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.data
    }

    fn reduce(&self, i: usize, x: i128) -> i64 {
        let d = self.moduli[i];
        if d == 0 {
            x as i64
        } else {
            x.rem_euclid(d as i128) as i64
        }
    }

    pub fn apply(&self, y: &[i64]) -> Vec<i64> {
        (0..self.dim())
            .map(|i| self.reduce(i, self.data[i].iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum()))
            .collect()
    }

    /// `self ∘ other`.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        let q = self.dim();
        let mut data = vec![vec![0i64; q]; q];
        for t in 0..q {
            let col: Vec<i64> = (0..q).map(|i| other.data[i][t]).collect();
            let img = self.apply(&col);
            for i in 0..q {
                data[i][t] = img[i];
            }
        }
        QMatrix { moduli: self.moduli.clone(), data }
    }

    pub fn is_identity(&self) -> bool {
        *self == QMatrix::identity(&self.moduli)
    }
}
