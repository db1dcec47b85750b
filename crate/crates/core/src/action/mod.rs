//! The homological action of `L` on `M_k`: invariant closures, cores,
//! induced actions on quotients, and enumeration of invariant subgroups.

mod enumerate;

use crate::prelude::*;
use crate::word::Word;
use crate::zkmod::{MatrixZk, ModuleVector, Modulus, QMatrix, QuotientModule, SubgroupBasis};
use crate::{Error, Result};

pub use enumerate::{enumerate_invariant_subgroups, EnumerationConstraints, EnumerationPlan};

/// Fixed-point iterations over `Z` stop with an error after this many rounds.
const MAX_ROUNDS_OVER_Z: usize = 4096;

/// Named generators with their matrices (acting on column vectors) and inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    modulus: Modulus,
    rank: usize,
    names: Vec<String>,
    mats: Vec<MatrixZk>,
    invs: Vec<MatrixZk>,
}

impl Action {
    pub fn new(modulus: Modulus, rank: usize, gens: Vec<(String, MatrixZk)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut mats = Vec::new();
        let mut invs = Vec::new();
        for (name, m) in gens {
            if m.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.value(), m.modulus().value()));
            }
            if m.nrows() != rank || m.ncols() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: m.nrows().max(m.ncols()) });
            }
            invs.push(m.inverse()?);
            mats.push(m);
            names.push(name);
        }
        Ok(Action { modulus, rank, names, mats, invs })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.mats.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn matrix(&self, j: usize) -> &MatrixZk {
        &self.mats[j]
    }

    pub fn inverse_matrix(&self, j: usize) -> &MatrixZk {
        &self.invs[j]
    }

    /// `A_{j1} ⋯ A_{jt}` for the word `j1 ⋯ jt`.
    pub fn eval_word(&self, w: &Word) -> Result<MatrixZk> {
        let mut m = MatrixZk::identity(self.modulus, self.rank);
        for l in w.letters() {
            let a = if l.inverse { &self.invs[l.gen] } else { &self.mats[l.gen] };
            m = m.mul(a)?;
        }
        Ok(m)
    }

    /// The same action with every generator's matrix reduced to a new modulus
    /// dividing the old one (or any modulus, from `Z`).
    pub fn reduce_modulus(&self, modulus: Modulus) -> Result<Action> {
        let gens = self
            .names
            .iter()
            .zip(&self.mats)
            .map(|(n, m)| Ok((n.clone(), MatrixZk::new(modulus, m.to_rows())?)))
            .collect::<Result<Vec<_>>>()?;
        Action::new(modulus, self.rank, gens)
    }

    fn check(&self, s: &SubgroupBasis) -> Result<()> {
        if s.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus.value(), s.modulus().value()));
        }
        if s.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, s.rank()));
        }
        Ok(())
    }

    /// `A_j S = S` for every generator.
    pub fn is_invariant(&self, s: &SubgroupBasis) -> Result<bool> {
        self.check(s)?;
        for (a, ainv) in self.mats.iter().zip(&self.invs) {
            for g in s.generators() {
                if !s.contains(&a.apply(&g)?)? || !s.contains(&ainv.apply(&g)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Smallest invariant subgroup containing `gens`.
    pub fn minimal_invariant_subgroup(&self, gens: &[ModuleVector]) -> Result<SubgroupBasis> {
        let mut s = SubgroupBasis::from_generators(self.modulus, self.rank, gens)?;
        for _ in 0..MAX_ROUNDS_OVER_Z {
            let mut next = s.clone();
            for (a, ainv) in self.mats.iter().zip(&self.invs) {
                next = next.sum(&s.image(a)?)?.sum(&s.image(ainv)?)?;
            }
            if next == s {
                return Ok(s);
            }
            s = next;
        }
        Err(Error::NonTerminating(MAX_ROUNDS_OVER_Z))
    }

    /// Largest invariant subgroup contained in `n1`: iterate
    /// `N ← N ∩ A_j N ∩ A_j^{-1} N` to a fixed point.
    pub fn core(&self, n1: &SubgroupBasis) -> Result<SubgroupBasis> {
        self.check(n1)?;
        let mut s = n1.clone();
        for _ in 0..MAX_ROUNDS_OVER_Z {
            let mut next = s.clone();
            for (a, ainv) in self.mats.iter().zip(&self.invs) {
                next = next.intersect(&s.image(a)?)?.intersect(&s.image(ainv)?)?;
            }
            if next == s {
                return Ok(s);
            }
            s = next;
        }
        Err(Error::NonTerminating(MAX_ROUNDS_OVER_Z))
    }

    /// Coordinates on `M / N` and the induced generator matrices.
    pub fn induced_quotient_action(&self, n: &SubgroupBasis) -> Result<(QuotientModule, Vec<QMatrix>)> {
        if !self.is_invariant(n)? {
            return Err(Error::NotInvariant);
        }
        let q = QuotientModule::new(n)?;
        let mats = self.mats.iter().map(|a| q.induced(a)).collect::<Result<Vec<_>>>()?;
        Ok((q, mats))
    }
}
