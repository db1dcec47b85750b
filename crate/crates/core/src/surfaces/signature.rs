//! Orbifold signatures, Riemann–Hurwitz, and surface-group epimorphisms.

use core::fmt;

use crate::extension::{closure, FiniteGroup, GroupOps};
use crate::prelude::*;
use crate::{Error, Result};

/// `(γ; m_1, ..., m_r)`: quotient genus and cone orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldSignature {
    genus: u64,
    periods: Vec<u64>,
}

impl OrbifoldSignature {
    /// Rejects periods below 2 and non-hyperbolic signatures.
    pub fn new(genus: u64, periods: Vec<u64>) -> Result<Self> {
        if periods.iter().any(|&m| m < 2) {
            return Err(Error::InvalidParams("cone orders must be at least 2".into()));
        }
        // 2γ - 2 + Σ (1 - 1/m) > 0, scaled by the lcm of the periods.
        let l = periods.iter().fold(1u64, |a, &m| num_integer::lcm(a, m)) as i128;
        let area = (2 * genus as i128 - 2) * l + periods.iter().map(|&m| l - l / m as i128).sum::<i128>();
        if area <= 0 {
            return Err(Error::InvalidParams(format!("signature ({genus}; {periods:?}) is not hyperbolic")));
        }
        Ok(OrbifoldSignature { genus, periods })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.genus)?;
        let p: Vec<String> = self.periods.iter().map(|m| m.to_string()).collect();
        if p.is_empty() {
            write!(f, " -)")
        } else {
            write!(f, " {})", p.join(","))
        }
    }
}

/// `g = 1 + |L|(γ - 1) + (|L|/2) Σ (1 - 1/m_i)`.
pub fn riemann_hurwitz_genus(sig: &OrbifoldSignature, group_order: u64) -> Result<u64> {
    if group_order < 2 {
        return Err(Error::InvalidParams("group order must be at least 2".into()));
    }
    let n = group_order as i128;
    let mut twice = 2 + n * (2 * sig.genus as i128 - 2);
    for &m in &sig.periods {
        if group_order % m != 0 {
            return Err(Error::NonIntegerGenus);
        }
        twice += n - n / m as i128;
    }
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::NonIntegerGenus);
    }
    Ok((twice / 2) as u64)
}

/// Genus of `S / L` for a surface of genus `g`, given the cone orders of the
/// quotient (empty for a free action).
pub fn quotient_genus(cover_genus: u64, group_order: u64, periods: &[u64]) -> Result<u64> {
    if group_order == 0 {
        return Err(Error::InvalidParams("group order must be positive".into()));
    }
    let n = group_order as i128;
    // 2g - 2 = n (2γ - 2) + Σ (n - n/m)
    let mut rhs = 2 * cover_genus as i128 - 2;
    for &m in periods {
        if m < 2 || group_order % m != 0 {
            return Err(Error::NonIntegerGenus);
        }
        rhs -= n - n / m as i128;
    }
    if rhs % n != 0 {
        return Err(Error::NonIntegerGenus);
    }
    let two_gamma = rhs / n + 2;
    if two_gamma < 0 || two_gamma % 2 != 0 {
        return Err(Error::NonIntegerGenus);
    }
    Ok((two_gamma / 2) as u64)
}

/// A surjection from the orbifold group onto `L`, given by the images of the
/// handle generators `α_s, β_s` and the cone generators `δ_i`.
#[derive(Clone, Debug)]
pub struct EpimorphismSpec {
    signature: OrbifoldSignature,
    handles: Vec<(usize, usize)>,
    cones: Vec<usize>,
}

impl EpimorphismSpec {
    /// Checks `Π [α_s, β_s] · δ_1 ⋯ δ_r = 1`, that each `δ_i` has exactly its
    /// cone order, and that the images generate `L`.
    pub fn new(
        signature: OrbifoldSignature,
        group: &FiniteGroup,
        handles: Vec<(usize, usize)>,
        cones: Vec<usize>,
    ) -> Result<Self> {
        if handles.len() as u64 != signature.genus() {
            return Err(Error::DimensionMismatch { expected: signature.genus() as usize, found: handles.len() });
        }
        if cones.len() != signature.periods().len() {
            return Err(Error::DimensionMismatch { expected: signature.periods().len(), found: cones.len() });
        }
        if handles.iter().any(|&(a, b)| a >= group.len() || b >= group.len()) || cones.iter().any(|&c| c >= group.len())
        {
            return Err(Error::InvalidParams("image outside the group".into()));
        }
        let mut prod = group.identity();
        for &(a, b) in &handles {
            let comm = group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)));
            prod = group.mul(prod, comm);
        }
        for &c in &cones {
            prod = group.mul(prod, c);
        }
        if prod != group.identity() {
            return Err(Error::InvalidParams("the long relation does not map to the identity".into()));
        }
        for (i, (&c, &m)) in cones.iter().zip(signature.periods()).enumerate() {
            if crate::extension::element_order(group, c) != m {
                return Err(Error::InvalidParams(format!("cone generator {} does not have order {m}", i + 1)));
            }
        }
        let mut gens: Vec<usize> = handles.iter().flat_map(|&(a, b)| [a, b]).collect();
        gens.extend(&cones);
        if closure(group, &gens).len() != group.len() {
            return Err(Error::InvalidParams("the images do not generate the group".into()));
        }
        Ok(EpimorphismSpec { signature, handles, cones })
    }

    pub fn signature(&self) -> &OrbifoldSignature {
        &self.signature
    }

    pub fn handles(&self) -> &[(usize, usize)] {
        &self.handles
    }

    pub fn cones(&self) -> &[usize] {
        &self.cones
    }

    /// Genus of the surface the kernel uniformizes.
    pub fn cover_genus(&self, group: &FiniteGroup) -> Result<u64> {
        riemann_hurwitz_genus(&self.signature, group.len() as u64)
    }
}
