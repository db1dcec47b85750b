//! The standard symplectic actions on `H_1(S; Z_k)` and symbolic homology.
//!
//! Coordinates: `a_1..a_g` are `0..g`, `b_1..b_g` are `g..2g`. Column `i`
//! of a matrix is the image of basis element `i`.

use crate::action::Action;
use crate::extension::{realize_group, ExtensionSpec, FiniteGroup, Permutation, DEFAULT_GROUP_BOUND};
use crate::prelude::*;
use crate::word::Word;
use crate::zkmod::{MatrixZk, ModuleVector, Modulus, SubgroupBasis};
use crate::{Error, Result};

/// A finite group acting on `M = Z_k^{2g}`, with the defects `ψ(R_i)`.
#[derive(Clone, Debug)]
pub struct StandardAction {
    pub genus: usize,
    pub group: FiniteGroup,
    pub action: Action,
    pub defects: Vec<ModuleVector>,
}

impl StandardAction {
    pub fn modulus(&self) -> Modulus {
        self.action.modulus()
    }

    pub fn spec(&self) -> Result<ExtensionSpec> {
        ExtensionSpec::new(self.group.clone(), self.action.clone(), self.defects.clone())
    }

    /// Parse a homology element in this action's genus.
    pub fn element(&self, text: &str) -> Result<ModuleVector> {
        parse_homology(text, self.genus, self.modulus())
    }

    /// Subgroup generated by symbolic elements.
    pub fn subgroup(&self, gens: &[&str]) -> Result<SubgroupBasis> {
        let v = gens.iter().map(|s| self.element(s)).collect::<Result<Vec<_>>>()?;
        SubgroupBasis::from_generators(self.modulus(), 2 * self.genus, &v)
    }
}

pub(crate) fn a(i: usize) -> usize {
    i - 1
}

pub(crate) fn b(g: usize, i: usize) -> usize {
    g + i - 1
}

/// Basis names `a1..ag, b1..bg` in coordinate order.
pub fn homology_names(g: usize) -> Vec<String> {
    (1..=g).map(|i| format!("a{i}")).chain((1..=g).map(|i| format!("b{i}"))).collect()
}

/// `"a1*a2^-1*b4"` to coordinates; `"1"` is zero. Exponents are summed.
pub fn parse_homology(text: &str, g: usize, modulus: Modulus) -> Result<ModuleVector> {
    let names = homology_names(g);
    let w = Word::parse(text.trim(), &names)?;
    let mut coords = vec![0i64; 2 * g];
    for l in w.letters() {
        coords[l.gen] += if l.inverse { -1 } else { 1 };
    }
    let coords = coords.into_iter().map(|c| modulus.reduce(c)).collect();
    Ok(ModuleVector::new(modulus, coords))
}

/// Inverse of [`parse_homology`], using reduced representatives.
pub fn format_homology(v: &ModuleVector, g: usize) -> String {
    let names = homology_names(g);
    let parts: Vec<String> = v
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { names[i].clone() } else { format!("{}^{c}", names[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Generators of a subgroup, one per canonical row.
pub fn format_subgroup(s: &SubgroupBasis, g: usize) -> String {
    let gens: Vec<String> = s.generators().iter().map(|v| format_homology(v, g)).collect();
    format!("<{}>", gens.join(", "))
}

struct Images {
    g: usize,
    modulus: Modulus,
    cols: Vec<Vec<i64>>,
}

impl Images {
    fn new(g: usize, modulus: Modulus) -> Self {
        let mut cols = vec![vec![0i64; 2 * g]; 2 * g];
        for (i, c) in cols.iter_mut().enumerate() {
            c[i] = 1;
        }
        Images { g, modulus, cols }
    }

    fn set(&mut self, from: usize, to: &[(usize, i64)]) {
        let mut c = vec![0i64; 2 * self.g];
        for &(i, x) in to {
            c[i] += x;
        }
        self.cols[from] = c;
    }

    /// `x_1 → x_2 → ... → x_m → x_1` on both the a- and b-indices.
    fn cycle(&mut self, idx: &[usize]) {
        let g = self.g;
        for t in 0..idx.len() {
            let (i, j) = (idx[t], idx[(t + 1) % idx.len()]);
            self.set(a(i), &[(a(j), 1)]);
            self.set(b(g, i), &[(b(g, j), 1)]);
        }
    }

    /// `x → x'`, `x' → -x - x'` on a- and b-indices.
    fn pair(&mut self, i: usize, j: usize) {
        let g = self.g;
        self.set(a(i), &[(a(j), 1)]);
        self.set(a(j), &[(a(i), -1), (a(j), -1)]);
        self.set(b(g, i), &[(b(g, j), 1)]);
        self.set(b(g, j), &[(b(g, i), -1), (b(g, j), -1)]);
    }

    /// `a → b`, `b → -a - b`.
    fn twist(&mut self, i: usize) {
        let g = self.g;
        self.set(a(i), &[(b(g, i), 1)]);
        self.set(b(g, i), &[(a(i), -1), (b(g, i), -1)]);
    }

    fn negate(&mut self, i: usize) {
        let g = self.g;
        self.set(a(i), &[(a(i), -1)]);
        self.set(b(g, i), &[(b(g, i), -1)]);
    }

    fn matrix(&self) -> Result<MatrixZk> {
        let cols: Vec<ModuleVector> =
            self.cols.iter().map(|c| ModuleVector::new(self.modulus, c.iter().map(|&x| self.modulus.reduce(x)).collect())).collect();
        MatrixZk::from_columns(&cols)
    }
}

fn cyclic_group(name: &str, m: usize) -> Result<FiniteGroup> {
    let p = Permutation::from_cycles(m, &[(0..m).collect()])?;
    let names = vec![name.to_string()];
    let rel = Word::generator(0).pow(m as i64);
    realize_group(names, vec![p], vec![rel], DEFAULT_GROUP_BOUND)
}

fn assemble(g: usize, group: FiniteGroup, mats: Vec<MatrixZk>, defects: Vec<ModuleVector>) -> Result<StandardAction> {
    let modulus = mats[0].modulus();
    let gens = group.names().iter().cloned().zip(mats).collect();
    let action = Action::new(modulus, 2 * g, gens)?;
    Ok(StandardAction { genus: g, group, action, defects })
}

fn check_genus(g: usize) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidParams(format!("genus {g} is below 2")));
    }
    Ok(())
}

/// Free `Z_m` action on genus `g = m·blocks + 1`: each block of `m` handles
/// is cycled, handle `g` is fixed, and `ψ^m = b_g`.
pub fn free_cyclic_action(m: usize, blocks: usize, k: u64) -> Result<StandardAction> {
    if m < 2 || blocks == 0 {
        return Err(Error::InvalidParams("need m >= 2 and at least one block".into()));
    }
    let g = m * blocks + 1;
    let modulus = Modulus::new(k)?;
    let mut im = Images::new(g, modulus);
    for blk in 0..blocks {
        let idx: Vec<usize> = (1..=m).map(|t| blk * m + t).collect();
        im.cycle(&idx);
    }
    let bg = ModuleVector::unit(modulus, 2 * g, b(g, g));
    assemble(g, cyclic_group("phi", m)?, vec![im.matrix()?], vec![bg])
}

/// The single cycle `a_1 → ... → a_{g-1} → a_1` with handle `g` fixed, an
/// automorphism of order `g - 1`, and defect `ψ^{g-1} = b_g`. Agrees with
/// [`free_cyclic_action`] only for `g = 3`.
pub fn single_cycle_action(g: usize, k: u64) -> Result<StandardAction> {
    if g < 3 {
        return Err(Error::InvalidParams("single cycle needs g >= 3".into()));
    }
    let modulus = Modulus::new(k)?;
    let mut im = Images::new(g, modulus);
    im.cycle(&(1..g).collect::<Vec<_>>());
    let bg = ModuleVector::unit(modulus, 2 * g, b(g, g));
    assemble(g, cyclic_group("phi", g - 1)?, vec![im.matrix()?], vec![bg])
}

/// Involution with `2n` fixed points on genus `g = 2γ + n - 1`: swaps
/// handles `2j-1 ↔ 2j` for `j ≤ γ`, negates the rest. Split, zero defect.
pub fn involution_action(gamma: usize, n: usize, k: u64) -> Result<StandardAction> {
    if n == 0 {
        return Err(Error::InvalidParams("need at least one pair of fixed points".into()));
    }
    let g = 2 * gamma + n - 1;
    check_genus(g)?;
    let modulus = Modulus::new(k)?;
    let mut im = Images::new(g, modulus);
    for j in 1..=gamma {
        im.cycle(&[2 * j - 1, 2 * j]);
    }
    for i in 2 * gamma + 1..=g {
        im.negate(i);
    }
    let zero = ModuleVector::zero(modulus, 2 * g);
    assemble(g, cyclic_group("phi", 2)?, vec![im.matrix()?], vec![zero])
}

/// Order-3 action with `n + 1` fixed points on genus `g = 3γ + n - 1`
/// (`g = n - 1` for `γ = 0`): `γ` cycled triples of handles, then `l` pair
/// blocks, then twists on the remaining handles. Zero defect.
pub fn order3_action(gamma: usize, n: usize, l: usize, k: u64) -> Result<StandardAction> {
    if n == 0 {
        return Err(Error::InvalidParams("need n >= 1".into()));
    }
    let g = 3 * gamma + n - 1;
    check_genus(g)?;
    if 3 * gamma + 2 * l > g {
        return Err(Error::InvalidParams(format!("{l} pair blocks do not fit in genus {g}")));
    }
    let modulus = Modulus::new(k)?;
    let mut im = Images::new(g, modulus);
    for j in 1..=gamma {
        im.cycle(&[3 * j - 2, 3 * j - 1, 3 * j]);
    }
    let base = 3 * gamma;
    for i in 1..=l {
        im.pair(base + 2 * i - 1, base + 2 * i);
    }
    for s in base + 2 * l + 1..=g {
        im.twist(s);
    }
    let zero = ModuleVector::zero(modulus, 2 * g);
    assemble(g, cyclic_group("phi", 3)?, vec![im.matrix()?], vec![zero])
}

/// `S_3 = ⟨r, h | r^3, h^2, (rh)^2⟩` on genus `g = (3n - 7)/2`, `n ≥ 5` odd:
/// `r` cycles handle triples and fixes handle `g`, `h` negates and swaps.
/// Defects `ψ_r^3 = b_g`, the others zero.
pub fn s3_action(n: usize, k: u64) -> Result<StandardAction> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::InvalidParams("need n >= 5 odd".into()));
    }
    let g = (3 * n - 7) / 2;
    let modulus = Modulus::new(k)?;
    let mut r = Images::new(g, modulus);
    let mut h = Images::new(g, modulus);
    for j in 1..=(g - 1) / 3 {
        let (x, y, z) = (3 * j - 2, 3 * j - 1, 3 * j);
        r.cycle(&[x, y, z]);
        for base in [0, g] {
            h.set(base + x - 1, &[(base + x - 1, -1)]);
            h.set(base + y - 1, &[(base + z - 1, -1)]);
            h.set(base + z - 1, &[(base + y - 1, -1)]);
        }
    }
    h.negate(g);
    let group = s3_group()?;
    let zero = ModuleVector::zero(modulus, 2 * g);
    let bg = ModuleVector::unit(modulus, 2 * g, b(g, g));
    assemble(g, group, vec![r.matrix()?, h.matrix()?], vec![bg, zero.clone(), zero])
}

/// `⟨r, h | r^3, h^2, (r*h)^2⟩` on three points.
pub fn s3_group() -> Result<FiniteGroup> {
    let names = vec!["r".to_string(), "h".to_string()];
    let r = Permutation::from_cycles(3, &[vec![0, 1, 2]])?;
    let h = Permutation::from_cycles(3, &[vec![1, 2]])?;
    let rels = ["r^3", "h^2", "(r*h)^2"].iter().map(|s| Word::parse(s, &names)).collect::<Result<Vec<_>>>()?;
    realize_group(names, vec![r, h], rels, DEFAULT_GROUP_BOUND)
}

/// `A_5 = ⟨r, h⟩` with `r = (1,2,3)`, `h = (2,4)(3,5)`.
pub fn a5_group() -> Result<FiniteGroup> {
    let names = vec!["r".to_string(), "h".to_string()];
    let r = Permutation::from_cycles(5, &Permutation::parse_cycles("(1,2,3)")?)?;
    let h = Permutation::from_cycles(5, &Permutation::parse_cycles("(2,4)(3,5)")?)?;
    let rels = ["r^3", "h^2", "(r*h)^5"].iter().map(|s| Word::parse(s, &names)).collect::<Result<Vec<_>>>()?;
    realize_group(names, vec![r, h], rels, DEFAULT_GROUP_BOUND)
}
