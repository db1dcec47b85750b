//! Order-preserving lifts of a cyclic automorphism.
//!
//! Given `ψ` with `θ(ψ) = φ` of order `l` and `ψ^l = m0 ∈ M`, every other
//! lift is `ψ ∘ α` and `(ψ ∘ α)^l = Σ_{i<l} A^i α + m0`, so a lift of order
//! `l` exists iff the twisted norm equation `Σ_{i<l} A^i α = -m0` is solvable.

use crate::prelude::*;
use crate::zkmod::{left_kernel, solve_linear, MatrixZk, ModuleVector, SubgroupBasis};
use crate::{Error, Result};

/// One generator's matrix `A`, its order `l` in `L`, and the defect `ψ^l = m0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicLiftProblem {
    a: MatrixZk,
    order: u64,
    defect: ModuleVector,
}

impl CyclicLiftProblem {
    pub fn new(a: MatrixZk, order: u64, defect: ModuleVector) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() != defect.len() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), found: defect.len() });
        }
        if a.modulus() != defect.modulus() {
            return Err(Error::ModulusMismatch(a.modulus().value(), defect.modulus().value()));
        }
        if order == 0 {
            return Err(Error::InvalidProblem("order must be positive".into()));
        }
        if !a.pow(order)?.is_identity() {
            return Err(Error::InvalidProblem(format!("A^{order} is not the identity")));
        }
        if a.apply(&defect)? != defect {
            return Err(Error::InvalidProblem("the defect is not fixed by A".into()));
        }
        Ok(CyclicLiftProblem { a, order, defect })
    }

    pub fn matrix(&self) -> &MatrixZk {
        &self.a
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn defect(&self) -> &ModuleVector {
        &self.defect
    }
}

/// `Σ_{i<l} A^i`.
pub fn norm_matrix(a: &MatrixZk, l: u64) -> Result<MatrixZk> {
    let mut sum = MatrixZk::identity(a.modulus(), a.nrows());
    let mut power = MatrixZk::identity(a.modulus(), a.nrows());
    for _ in 1..l {
        power = power.mul(a)?;
        sum = sum.add(&power)?;
    }
    Ok(sum)
}

/// `Σ_{i<l} A^i v`.
pub fn norm_map(a: &MatrixZk, l: u64, v: &ModuleVector) -> Result<ModuleVector> {
    if a.ncols() != v.len() {
        return Err(Error::DimensionMismatch { expected: a.ncols(), found: v.len() });
    }
    let mut acc = v.clone();
    let mut cur = v.clone();
    for _ in 1..l {
        cur = a.apply(&cur)?;
        acc = acc.add(&cur)?;
    }
    Ok(acc)
}

/// Why no order-`l` lift exists: `-m0` is not in the image of the norm
/// (plus `N`, when working modulo a subgroup).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCertificate {
    /// `-m0`.
    pub target: ModuleVector,
    /// Image of the norm map (plus `N`), in canonical form.
    pub image: SubgroupBasis,
    /// Canonical representative of `-m0` modulo the image; nonzero.
    pub residual: ModuleVector,
    /// A functional `λ` vanishing on the image with `λ · m0 ≠ 0`. Always
    /// present for finite modulus; over `Z` the obstruction may be torsion.
    pub functional: Option<ModuleVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    /// `α` with `Σ A^i α ≡ -m0`; the lift `ψ ∘ α` has order dividing `l`.
    Lift(ModuleVector),
    Obstructed(LiftCertificate),
}

impl LiftOutcome {
    pub fn witness(&self) -> Option<&ModuleVector> {
        match self {
            LiftOutcome::Lift(a) => Some(a),
            LiftOutcome::Obstructed(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&LiftCertificate> {
        match self {
            LiftOutcome::Lift(_) => None,
            LiftOutcome::Obstructed(c) => Some(c),
        }
    }
}

pub fn cyclic_lift_solve(p: &CyclicLiftProblem) -> Result<LiftOutcome> {
    cyclic_lift_solve_modulo(p, &SubgroupBasis::trivial(p.a.modulus(), p.a.nrows()))
}

/// Solve the norm equation in `M / N` for an `A`-invariant `N`.
pub fn cyclic_lift_solve_modulo(p: &CyclicLiftProblem, n: &SubgroupBasis) -> Result<LiftOutcome> {
    let modulus = p.a.modulus();
    let dim = p.a.nrows();
    let norm = norm_matrix(&p.a, p.order)?;
    let mut columns: Vec<ModuleVector> = (0..dim).map(|j| norm.column(j)).collect();
    columns.extend(n.generators());
    let system = MatrixZk::from_columns(&columns)?;
    let target = p.defect.neg();
    if let Some(sol) = solve_linear(&system, &target)? {
        let alpha = ModuleVector::new(modulus, sol.particular.coords()[..dim].to_vec());
        let alpha = n.reduce(&alpha)?;
        return Ok(LiftOutcome::Lift(alpha));
    }
    let image = SubgroupBasis::from_generators(modulus, dim, &columns)?;
    let residual = image.reduce(&target)?;
    let functional = if modulus.is_finite() {
        let dual = left_kernel(&system)?;
        let mut found = None;
        for lambda in dual.generators() {
            if lambda.dot(&p.defect)? != 0 {
                found = Some(lambda);
                break;
            }
        }
        found
    } else {
        None
    };
    Ok(LiftOutcome::Obstructed(LiftCertificate { target, image, residual, functional }))
}

/// Elements `(v, i)` of the cyclic extension `M · ⟨ψ⟩` with `ψ^l = m0`:
/// `(v1, i)(v2, j) = (v1 + A^i v2 + [i + j ≥ l] m0, (i + j) mod l)`.
pub struct CyclicExtension<'a> {
    problem: &'a CyclicLiftProblem,
    powers: Vec<MatrixZk>,
}

impl<'a> CyclicExtension<'a> {
    pub fn new(problem: &'a CyclicLiftProblem) -> Result<Self> {
        let mut powers = vec![MatrixZk::identity(problem.a.modulus(), problem.a.nrows())];
        for i in 1..problem.order as usize {
            powers.push(powers[i - 1].mul(&problem.a)?);
        }
        Ok(CyclicExtension { problem, powers })
    }

    pub fn mul(&self, x: &(ModuleVector, u64), y: &(ModuleVector, u64)) -> Result<(ModuleVector, u64)> {
        let l = self.problem.order;
        let mut v = x.0.add(&self.powers[x.1 as usize].apply(&y.0)?)?;
        if x.1 + y.1 >= l {
            v = v.add(&self.problem.defect)?;
        }
        Ok((v, (x.1 + y.1) % l))
    }

    /// `(ψ ∘ α)^l` computed by `l` explicit multiplications.
    pub fn lift_power(&self, alpha: &ModuleVector) -> Result<(ModuleVector, u64)> {
        let modulus = alpha.modulus();
        // For l = 1, ψ itself is the defect.
        let psi = if self.problem.order == 1 {
            (self.problem.defect.clone(), 0)
        } else {
            (ModuleVector::zero(modulus, alpha.len()), 1)
        };
        let g = self.mul(&psi, &(alpha.clone(), 0))?;
        let mut acc = (ModuleVector::zero(modulus, alpha.len()), 0);
        for _ in 0..self.problem.order {
            acc = self.mul(&acc, &g)?;
        }
        Ok(acc)
    }
}

/// Check a witness by multiplying in the extension, modulo `N`.
pub fn verify_lift(p: &CyclicLiftProblem, alpha: &ModuleVector, n: &SubgroupBasis) -> Result<bool> {
    let ext = CyclicExtension::new(p)?;
    let (v, i) = ext.lift_power(alpha)?;
    Ok(i == 0 && n.contains(&v)?)
}

/// `gcd(l, k) = 1`: the Schur–Zassenhaus case, where a lift always exists.
pub fn coprime_split(l: u64, k: u64) -> bool {
    crate::zkmod::gcd_u64(l, k) == 1
}

/// The combined verdict for a cyclic generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub split: bool,
    /// Verdict of the fixed-point shortcut, when it applies.
    pub fixed_point_path: Option<bool>,
    /// Verdict of the coprimality shortcut, when it applies.
    pub coprime_path: Option<bool>,
    /// The norm-equation decision, always computed.
    pub outcome: LiftOutcome,
}

/// Combine the fixed-point shortcut (an automorphism with fixed points has a
/// lift of the same order), the coprimality shortcut and the norm equation.
/// Every applicable path must agree.
pub fn cyclic_split_verdict(p: &CyclicLiftProblem, has_fixed_points: bool) -> Result<SplitReport> {
    let outcome = cyclic_lift_solve(p)?;
    let norm_split = outcome.witness().is_some();
    if let Some(alpha) = outcome.witness() {
        let trivial = SubgroupBasis::trivial(p.a.modulus(), p.a.nrows());
        if !verify_lift(p, alpha, &trivial)? {
            return Err(Error::InconsistentVerdicts("norm witness fails the multiplication check".into()));
        }
    }
    let fixed_point_path = has_fixed_points.then_some(true);
    let k = p.a.modulus().value();
    let coprime_path = (k >= 2 && p.order >= 2 && coprime_split(p.order, k)).then_some(true);
    for (name, path) in [("fixed-point", fixed_point_path), ("coprime", coprime_path)] {
        if path == Some(true) && !norm_split {
            return Err(Error::InconsistentVerdicts(format!("{name} shortcut says split, norm equation says no")));
        }
    }
    Ok(SplitReport { split: norm_split, fixed_point_path, coprime_path, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zkmod::Modulus;

    fn z(k: u64) -> Modulus {
        Modulus::new(k).unwrap()
    }

    #[test]
    fn norm_of_identity() {
        let a = MatrixZk::identity(z(3), 2);
        let v = ModuleVector::new(z(3), vec![1, 2]);
        assert!(norm_map(&a, 3, &v).unwrap().is_zero());
        let a4 = MatrixZk::identity(z(4), 2);
        let e1 = ModuleVector::unit(z(4), 2, 0);
        assert_eq!(norm_map(&a4, 2, &e1).unwrap().coords(), &[2, 0]);
    }

    #[test]
    fn zero_defect_lifts_trivially() {
        let a = MatrixZk::new(z(5), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let p = CyclicLiftProblem::new(a, 2, ModuleVector::zero(z(5), 2)).unwrap();
        assert_eq!(cyclic_lift_solve(&p).unwrap(), LiftOutcome::Lift(ModuleVector::zero(z(5), 2)));
    }

    #[test]
    fn invalid_problems() {
        let a = MatrixZk::new(z(5), vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(CyclicLiftProblem::new(a.clone(), 3, ModuleVector::zero(z(5), 2)).is_err());
        assert!(CyclicLiftProblem::new(a, 2, ModuleVector::unit(z(5), 2, 0)).is_err());
    }

    #[test]
    fn coprimality() {
        assert!(coprime_split(3, 2));
        assert!(!coprime_split(3, 3));
        assert!(!coprime_split(2, 4));
    }

    #[test]
    fn free_involution_on_one_coordinate() {
        // A = 1 on Z_2, l = 2, m0 = 1: 2α = 1 has no solution.
        let a = MatrixZk::identity(z(2), 1);
        let p = CyclicLiftProblem::new(a, 2, ModuleVector::new(z(2), vec![1])).unwrap();
        let out = cyclic_lift_solve(&p).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.residual.coords(), &[1]);
        assert_eq!(cert.functional.as_ref().unwrap().coords(), &[1]);
        let report = cyclic_split_verdict(&p, false).unwrap();
        assert!(!report.split);
        assert!(matches!(cyclic_split_verdict(&p, true), Err(Error::InconsistentVerdicts(_))));
    }
}
