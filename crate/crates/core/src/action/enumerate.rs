//! Enumeration of invariant subgroups under quotient / containment constraints.

use super::Action;
use crate::prelude::*;
use crate::zkmod::{solve_linear, MatrixZk, ModuleVector, SubgroupBasis};
use crate::{Error, Result};

/// Filters for [`enumerate_invariant_subgroups`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationConstraints {
    /// Required invariant factors of `M / N` (ones ignored); `None` means any.
    pub quotient: Option<Vec<u64>>,
    pub contains: Vec<ModuleVector>,
    pub excludes: Vec<ModuleVector>,
}

#[derive(Clone, Debug)]
enum Strategy {
    /// Kernels of nonzero functionals `M → Z_p`, up to scalars.
    Hyperplanes { p: u64 },
    /// Kernels of surjections `M → ⊕ Z_{e_i}`, one candidate per tuple of
    /// generator images.
    Homomorphisms { invariants: Vec<u64>, size: u64 },
    /// Joins of cyclic invariant submodules, breadth first.
    Lattice,
    /// The constraints admit nothing (e.g. a quotient whose exponent does not divide k).
    Empty,
    /// Only the full module (trivial quotient).
    Full,
}

/// A partitionable enumeration: candidates are indexed `0..candidate_count()`
/// and any split of that range into chunks gives the same merged result.
#[derive(Clone, Debug)]
pub struct EnumerationPlan<'a> {
    action: &'a Action,
    constraints: EnumerationConstraints,
    strategy: Strategy,
    count: u128,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn normalize_invariants(q: &[u64]) -> Vec<u64> {
    q.iter().copied().filter(|&d| d != 1).collect()
}

impl<'a> EnumerationPlan<'a> {
    pub fn new(action: &'a Action, constraints: EnumerationConstraints, budget: u128) -> Result<Self> {
        let k = action.modulus().value();
        if k == 0 {
            return Err(Error::InvalidParams("enumeration needs a finite modulus".into()));
        }
        let n = action.rank() as u32;
        let (strategy, count) = match constraints.quotient.as_deref().map(normalize_invariants) {
            Some(q) if q.is_empty() => (Strategy::Full, 1),
            Some(q) if q.iter().any(|&d| d == 0 || k % d != 0) => (Strategy::Empty, 0),
            Some(q) if q.len() == 1 && is_prime(q[0]) => {
                let p = q[0];
                let count = ((p as u128).checked_pow(n).ok_or(Error::Overflow)? - 1) / (p as u128 - 1);
                (Strategy::Hyperplanes { p }, count)
            }
            Some(q) => {
                let size: u64 = q.iter().product();
                let count = (size as u128).checked_pow(n).unwrap_or(u128::MAX);
                (Strategy::Homomorphisms { invariants: q, size }, count)
            }
            None => {
                let elements = (k as u128).checked_pow(n).unwrap_or(u128::MAX);
                if elements > budget {
                    return Err(Error::BudgetExceeded { candidates: elements });
                }
                (Strategy::Lattice, 1)
            }
        };
        if count > budget {
            return Err(Error::BudgetExceeded { candidates: count });
        }
        Ok(EnumerationPlan { action, constraints, strategy, count })
    }

    pub fn candidate_count(&self) -> u128 {
        self.count
    }

    fn accept(&self, s: &SubgroupBasis) -> Result<bool> {
        for v in &self.constraints.contains {
            if !s.contains(v)? {
                return Ok(false);
            }
        }
        for v in &self.constraints.excludes {
            if s.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Examine candidates `start..end`; the result is sorted and duplicate free.
    pub fn run_range(&self, start: u128, end: u128) -> Result<Vec<SubgroupBasis>> {
        let end = end.min(self.count);
        let mut found = BTreeSet::new();
        match &self.strategy {
            Strategy::Empty => {}
            Strategy::Full => {
                if start == 0 && end > 0 {
                    let full = SubgroupBasis::full(self.action.modulus(), self.action.rank());
                    if self.accept(&full)? {
                        found.insert(full);
                    }
                }
            }
            Strategy::Hyperplanes { p } => {
                for idx in start..end {
                    if let Some(s) = self.hyperplane(*p, idx)? {
                        if self.accept(&s)? {
                            found.insert(s);
                        }
                    }
                }
            }
            Strategy::Homomorphisms { invariants, size } => {
                for idx in start..end {
                    if let Some(s) = self.hom_kernel(invariants, *size, idx)? {
                        if self.accept(&s)? {
                            found.insert(s);
                        }
                    }
                }
            }
            Strategy::Lattice => {
                if start == 0 && end > 0 {
                    for s in self.lattice()? {
                        if self.accept(&s)? {
                            found.insert(s);
                        }
                    }
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// Merge chunk results into the deterministic sorted order.
    pub fn merge(chunks: Vec<Vec<SubgroupBasis>>) -> Vec<SubgroupBasis> {
        let set: BTreeSet<SubgroupBasis> = chunks.into_iter().flatten().collect();
        set.into_iter().collect()
    }

    /// The `idx`-th normalized functional: leading 1 at position `i0`, free
    /// digits after it. Returns its kernel if invariant.
    fn hyperplane(&self, p: u64, mut idx: u128) -> Result<Option<SubgroupBasis>> {
        let n = self.action.rank();
        let p128 = p as u128;
        let mut i0 = 0;
        loop {
            let block = p128.pow((n - 1 - i0) as u32);
            if idx < block {
                break;
            }
            idx -= block;
            i0 += 1;
        }
        let mut lambda = vec![0i64; n];
        lambda[i0] = 1;
        for slot in lambda.iter_mut().skip(i0 + 1).rev() {
            *slot = (idx % p128) as i64;
            idx /= p128;
        }
        // Invariance: λ A_j must be a multiple of λ mod p.
        for j in 0..self.action.generator_count() {
            let a = self.action.matrix(j);
            let mu: Vec<i64> = (0..n)
                .map(|c| {
                    let s: i128 = (0..n).map(|r| lambda[r] as i128 * a.get(r, c) as i128).sum();
                    s.rem_euclid(p as i128) as i64
                })
                .collect();
            let c = mu[i0];
            if (0..n).any(|t| mu[t] != (c as i128 * lambda[t] as i128).rem_euclid(p as i128) as i64) {
                return Ok(None);
            }
        }
        let modulus = self.action.modulus();
        let mut gens = Vec::with_capacity(n);
        let mut pe = vec![0i64; n];
        pe[i0] = p as i64;
        gens.push(pe);
        for j in 0..n {
            if j != i0 {
                let mut v = vec![0i64; n];
                v[j] = 1;
                v[i0] = -lambda[j];
                gens.push(v);
            }
        }
        Ok(Some(SubgroupBasis::from_rows(modulus, n, gens)?))
    }

    fn hom_kernel(&self, invariants: &[u64], size: u64, mut idx: u128) -> Result<Option<SubgroupBasis>> {
        let modulus = self.action.modulus();
        let k = modulus.value();
        let n = self.action.rank();
        let r = invariants.len();
        // Images of the basis vectors in Q = ⊕ Z_{e_i}, embedded in Z_k^r by
        // multiplying coordinate i with k / e_i.
        let mut h = vec![vec![0i64; n]; r];
        for col in 0..n {
            let mut img = (idx % size as u128) as u64;
            idx /= size as u128;
            for (i, &e) in invariants.iter().enumerate() {
                h[i][col] = ((img % e) * (k / e)) as i64;
                img /= e;
            }
        }
        let hm = MatrixZk::new(modulus, h)?;
        let kernel = solve_linear(&hm, &ModuleVector::zero(modulus, r))?
            .expect("zero is in the image")
            .kernel;
        let total = (k as u128).pow(n as u32);
        if total / kernel.order()? != size as u128 {
            return Ok(None);
        }
        if !self.action.is_invariant(&kernel)? {
            return Ok(None);
        }
        Ok(Some(kernel))
    }

    fn lattice(&self) -> Result<Vec<SubgroupBasis>> {
        let modulus = self.action.modulus();
        let k = modulus.value() as u128;
        let n = self.action.rank();
        let total = k.pow(n as u32);
        let mut cyclic = BTreeSet::new();
        for mut idx in 0..total {
            let mut v = vec![0i64; n];
            for slot in v.iter_mut().rev() {
                *slot = (idx % k) as i64;
                idx /= k;
            }
            cyclic.insert(self.action.minimal_invariant_subgroup(&[ModuleVector::new(modulus, v)])?);
        }
        let cyclic: Vec<SubgroupBasis> = cyclic.into_iter().collect();
        let mut seen: BTreeSet<SubgroupBasis> = BTreeSet::new();
        let mut queue = vec![SubgroupBasis::trivial(modulus, n)];
        seen.insert(queue[0].clone());
        while let Some(s) = queue.pop() {
            for c in &cyclic {
                let t = s.sum(c)?;
                if seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// All invariant subgroups meeting the constraints, sorted by canonical basis.
pub fn enumerate_invariant_subgroups(
    action: &Action,
    constraints: &EnumerationConstraints,
    budget: u128,
) -> Result<Vec<SubgroupBasis>> {
    let plan = EnumerationPlan::new(action, constraints.clone(), budget)?;
    plan.run_range(0, plan.candidate_count())
}
