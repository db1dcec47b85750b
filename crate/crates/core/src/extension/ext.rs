//! The extension `1 → M/N → L̃/N → L → 1` built from relator defects.

use crate::action::Action;
use crate::prelude::*;
use crate::word::Word;
use crate::zkmod::{solve_linear, MatrixZk, ModuleVector, Modulus, QMatrix, QuotientModule, SubgroupBasis};
use crate::{Error, Result};

use super::coset::coset_enumerate;
use super::group::{FiniteGroup, GroupOps};

/// Coset budget used to confirm that the relators present `L`.
const PRESENTATION_BUDGET: usize = 200_000;

/// `L` with its action on `M` and the values `R_i(ψ) = m_i` of the relators
/// on chosen lifts of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    group: FiniteGroup,
    action: Action,
    defects: Vec<ModuleVector>,
    /// `A_l` for every element, from the spanning tree.
    element_mats: Vec<MatrixZk>,
}

impl ExtensionSpec {
    /// Checks that generator names agree, that the action factors through
    /// `L`, and that the declared relators present `L`.
    pub fn new(group: FiniteGroup, action: Action, defects: Vec<ModuleVector>) -> Result<Self> {
        if group.names() != action.names() {
            return Err(Error::InvalidProblem("group and action generators differ".into()));
        }
        if defects.len() != group.relators().len() {
            return Err(Error::DimensionMismatch { expected: group.relators().len(), found: defects.len() });
        }
        for d in &defects {
            if d.modulus() != action.modulus() {
                return Err(Error::ModulusMismatch(action.modulus().value(), d.modulus().value()));
            }
            if d.len() != action.rank() {
                return Err(Error::RankMismatch(action.rank(), d.len()));
            }
        }
        let mut element_mats = vec![MatrixZk::identity(action.modulus(), action.rank())];
        for i in 1..group.len() {
            let (p, j) = group.tree_parent(i).expect("non-identity elements have a parent");
            element_mats.push(element_mats[p].mul(action.matrix(j))?);
        }
        for l in 0..group.len() {
            for j in 0..group.generator_count() {
                if element_mats[l].mul(action.matrix(j))? != element_mats[group.right_mul(l, j)] {
                    return Err(Error::InvalidProblem("the action does not factor through the group".into()));
                }
            }
        }
        let presented = coset_enumerate(group.generator_count(), group.relators(), PRESENTATION_BUDGET)?;
        if presented != group.len() {
            return Err(Error::InvalidProblem(format!(
                "relators define a group of order {presented}, not {}",
                group.len()
            )));
        }
        Ok(ExtensionSpec { group, action, defects, element_mats })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn defects(&self) -> &[ModuleVector] {
        &self.defects
    }

    pub fn modulus(&self) -> Modulus {
        self.action.modulus()
    }

    pub fn rank(&self) -> usize {
        self.action.rank()
    }

    /// `A_l`.
    pub fn element_matrix(&self, l: usize) -> &MatrixZk {
        &self.element_mats[l]
    }

    /// The smallest invariant subgroup containing every defect. Quotienting
    /// by it (or anything larger) makes the extension split.
    pub fn defect_closure(&self) -> Result<SubgroupBasis> {
        self.action.minimal_invariant_subgroup(&self.defects)
    }
}

/// `f(l, j)` in `M/N` coordinates with `s(l) ψ_j = f(l, j) s(l g_j)`, where
/// `s` lifts canonical words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDefectTable {
    generators: usize,
    values: Vec<Vec<i64>>,
}

impl EdgeDefectTable {
    pub fn get(&self, l: usize, j: usize) -> &[i64] {
        &self.values[l * self.generators + j]
    }
}

/// Walk a relator from `l`, returning the signed edges it crosses and the
/// endpoint.
fn relator_cycle(group: &FiniteGroup, l: usize, r: &Word) -> (Vec<(usize, i64)>, usize) {
    let ng = group.generator_count();
    let mut cur = l;
    let mut edges = Vec::with_capacity(r.len());
    for letter in r.letters() {
        if letter.inverse {
            let prev = group.mul(cur, group.inv(group.generator_element(letter.gen)));
            edges.push((prev * ng + letter.gen, -1));
            cur = prev;
        } else {
            edges.push((cur * ng + letter.gen, 1));
            cur = group.right_mul(cur, letter.gen);
        }
    }
    (edges, cur)
}

/// Solve for the edge defects of `L̃/N`; tree edges are fixed at zero.
///
/// Each relator cycle based at `l` must pick up exactly `A_l m_i` mod `N`.
/// The system has ±1 coefficients, so it splits into one system per cyclic
/// factor of `M/N`.
pub fn solve_edge_defects(spec: &ExtensionSpec, n: &SubgroupBasis) -> Result<EdgeDefectTable> {
    let (quotient, _) = spec.action.induced_quotient_action(n)?;
    solve_with_quotient(spec, &quotient)
}

fn solve_with_quotient(spec: &ExtensionSpec, quotient: &QuotientModule) -> Result<EdgeDefectTable> {
    let group = &spec.group;
    let ng = group.generator_count();
    let nedges = group.len() * ng;
    let mut unknown = vec![None; nedges];
    let mut count = 0;
    for l in 0..group.len() {
        for j in 0..ng {
            if !group.is_tree_edge(l, j) {
                unknown[l * ng + j] = Some(count);
                count += 1;
            }
        }
    }
    let q = quotient.dim();
    let projected: Vec<Vec<i64>> = spec.defects.iter().map(|m| quotient.project(m)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut rhs: Vec<Vec<i64>> = Vec::new();
    for l in 0..group.len() {
        let a = quotient.induced(&spec.element_mats[l])?;
        for (i, r) in group.relators().iter().enumerate() {
            let (edges, end) = relator_cycle(group, l, r);
            debug_assert_eq!(end, l);
            let mut row = vec![0i64; count];
            for (e, s) in edges {
                if let Some(u) = unknown[e] {
                    row[u] += s;
                }
            }
            rows.push(row);
            rhs.push(a.apply(&projected[i]));
        }
    }
    let mut solution = vec![vec![0i64; q]; count];
    for (t, &d) in quotient.moduli().iter().enumerate() {
        let modulus = Modulus::new(d)?;
        let b: Vec<i64> = rhs.iter().map(|v| v[t]).collect();
        if count == 0 || rows.is_empty() {
            if b.iter().any(|&x| modulus.reduce(x) != 0) {
                return Err(Error::InconsistentDefects(format!("coordinate {t} has no free edges")));
            }
            continue;
        }
        let a = MatrixZk::new(modulus, rows.clone())?;
        let sol = solve_linear(&a, &ModuleVector::new(modulus, b))?
            .ok_or_else(|| Error::InconsistentDefects(format!("no solution in coordinate {t} (modulo {d})")))?;
        for (u, x) in sol.particular.coords().iter().enumerate() {
            solution[u][t] = *x;
        }
    }
    let values = (0..nedges).map(|e| unknown[e].map_or_else(|| vec![0; q], |u| solution[u].clone())).collect();
    Ok(EdgeDefectTable { generators: ng, values })
}

/// An element `(v, l)` of `L̃/N`: `v` in quotient coordinates, `l` an element
/// index of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub v: Vec<i64>,
    pub l: usize,
}

/// `L̃/N` with the multiplication
/// `(v1, l1)(v2, l2) = (v1 + A_{l1} v2 + f(l1, l2), l1 l2)`.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    spec: ExtensionSpec,
    quotient: QuotientModule,
    mats: Vec<QMatrix>,
    edges: EdgeDefectTable,
    /// `f(l1, l2)` at `l1 * |L| + l2`.
    factor: Vec<Vec<i64>>,
    qsize: usize,
}

/// Build `L̃/N`; `n` must be invariant and the modulus finite.
pub fn build_ext_group(spec: &ExtensionSpec, n: &SubgroupBasis) -> Result<ExtGroup> {
    if !spec.modulus().is_finite() {
        return Err(Error::InfiniteSubgroup);
    }
    let (quotient, _) = spec.action.induced_quotient_action(n)?;
    let edges = solve_with_quotient(spec, &quotient)?;
    ExtGroup::assemble(spec.clone(), quotient, edges)
}

impl ExtGroup {
    fn assemble(spec: ExtensionSpec, quotient: QuotientModule, edges: EdgeDefectTable) -> Result<Self> {
        let qsize = quotient.order().ok_or(Error::InfiniteSubgroup)?;
        let total = qsize.checked_mul(spec.group.len() as u128).ok_or(Error::Overflow)?;
        if total > u32::MAX as u128 {
            return Err(Error::GroupTooLarge(u32::MAX as usize));
        }
        let mats = spec.element_mats.iter().map(|a| quotient.induced(a)).collect::<Result<Vec<_>>>()?;
        let group = &spec.group;
        let nl = group.len();
        let q = quotient.dim();
        let mut factor = vec![vec![0i64; q]; nl * nl];
        // s(l1) s(p g_j) = s(l1) s(p) ψ_j = f(l1, p) s(l1 p) ψ_j, and the last
        // step crosses the edge (l1 p, j).
        for l2 in 1..nl {
            let (p, j) = group.tree_parent(l2).expect("non-identity elements have a parent");
            for l1 in 0..nl {
                let base = group.mul(l1, p);
                let mut v: Vec<i64> =
                    factor[l1 * nl + p].iter().zip(edges.get(base, j)).map(|(a, b)| a + b).collect();
                quotient.reduce_coords(&mut v);
                factor[l1 * nl + l2] = v;
            }
        }
        Ok(ExtGroup { spec, quotient, mats, edges, factor, qsize: qsize as usize })
    }

    pub fn spec(&self) -> &ExtensionSpec {
        &self.spec
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.spec.group
    }

    pub fn quotient(&self) -> &QuotientModule {
        &self.quotient
    }

    pub fn edge_defects(&self) -> &EdgeDefectTable {
        &self.edges
    }

    pub fn module_order(&self) -> usize {
        self.qsize
    }

    pub fn len(&self) -> usize {
        self.qsize * self.spec.group.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity_element(&self) -> ExtElement {
        ExtElement { v: vec![0; self.quotient.dim()], l: 0 }
    }

    pub fn factor(&self, l1: usize, l2: usize) -> &[i64] {
        &self.factor[l1 * self.spec.group.len() + l2]
    }

    pub fn multiply(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let av = self.mats[a.l].apply(&b.v);
        let f = self.factor(a.l, b.l);
        let mut v: Vec<i64> = a.v.iter().zip(&av).zip(f).map(|((x, y), z)| x + y + z).collect();
        self.quotient.reduce_coords(&mut v);
        ExtElement { v, l: self.spec.group.mul(a.l, b.l) }
    }

    pub fn inverse(&self, a: &ExtElement) -> ExtElement {
        let li = self.spec.group.inv(a.l);
        let f = self.factor(a.l, li);
        let sum: Vec<i64> = a.v.iter().zip(f).map(|(x, y)| -(x + y)).collect();
        let mut v = self.mats[li].apply(&sum);
        self.quotient.reduce_coords(&mut v);
        ExtElement { v, l: li }
    }

    pub fn power(&self, a: &ExtElement, e: u64) -> ExtElement {
        let mut acc = self.identity_element();
        for _ in 0..e {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: &ExtElement) -> u64 {
        let id = self.identity_element();
        let mut x = a.clone();
        let mut n = 1;
        while x != id {
            x = self.multiply(&x, a);
            n += 1;
        }
        n
    }

    /// The image of `m ∈ M` in the kernel `M/N`.
    pub fn module_element(&self, m: &ModuleVector) -> Result<ExtElement> {
        Ok(ExtElement { v: self.quotient.project(m)?, l: 0 })
    }

    /// `ψ_j` = `(f(1, j), g_j)`.
    pub fn generator_lift(&self, j: usize) -> ExtElement {
        ExtElement { v: self.edges.get(0, j).to_vec(), l: self.spec.group.generator_element(j) }
    }

    /// Evaluate a word with letter `j` sent to `images[j]`.
    pub fn eval_word(&self, w: &Word, images: &[ExtElement]) -> ExtElement {
        let mut acc = self.identity_element();
        for letter in w.letters() {
            let x = &images[letter.gen];
            acc = if letter.inverse { self.multiply(&acc, &self.inverse(x)) } else { self.multiply(&acc, x) };
        }
        acc
    }

    pub fn index(&self, a: &ExtElement) -> usize {
        a.l * self.qsize + self.quotient.encode(&a.v) as usize
    }

    pub fn element(&self, i: usize) -> ExtElement {
        ExtElement { v: self.quotient.decode((i % self.qsize) as u64), l: i / self.qsize }
    }

    /// Indices of the kernel `M/N` inside the group.
    pub fn module_indices(&self) -> core::ops::Range<usize> {
        0..self.qsize
    }

    pub fn is_in_module(&self, i: usize) -> bool {
        i < self.qsize
    }
}

impl GroupOps for ExtGroup {
    fn order(&self) -> usize {
        self.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index(&self.multiply(&self.element(a), &self.element(b)))
    }

    fn inv(&self, a: usize) -> usize {
        self.index(&self.inverse(&self.element(a)))
    }

    fn generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> =
            (0..self.spec.group.generator_count()).map(|j| self.index(&self.generator_lift(j))).collect();
        for t in 0..self.quotient.dim() {
            let mut v = vec![0; self.quotient.dim()];
            v[t] = 1;
            g.push(self.index(&ExtElement { v, l: 0 }));
        }
        g
    }
}
