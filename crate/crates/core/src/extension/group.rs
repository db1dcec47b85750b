//! Finite permutation groups enumerated by breadth-first search.

use core::fmt;

use crate::prelude::*;
use crate::word::Word;
use crate::{Error, Result};

/// Default cap on the number of elements [`realize_group`] will enumerate.
pub const DEFAULT_GROUP_BOUND: usize = 100_000;

/// A permutation of `0..degree`. Products compose left to right:
/// `(p * q)(x) = q(p(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| Error::InvalidProblem(format!("image {x} out of range")))?;
            if *slot {
                return Err(Error::InvalidProblem(format!("image {x} repeated")));
            }
            *slot = true;
        }
        Ok(Permutation(images))
    }

    /// Cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidProblem(format!("point {} exceeds degree {degree}", x + 1)));
                }
                if used[x] {
                    return Err(Error::InvalidProblem(format!("point {} appears twice", x + 1)));
                }
                used[x] = true;
                img[x] = c[(i + 1) % c.len()] as u32;
            }
        }
        Ok(Permutation(img))
    }

    /// Cycle notation with 1-based points, e.g. `(1,2,3)(4,5)`; `()` is the
    /// identity. Returns 0-based cycles.
    pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
        let bad = |why: &str| Error::InvalidProblem(format!("bad permutation `{text}`: {why}"));
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let inner = body[..close].trim();
            if !inner.is_empty() {
                let cycle = inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| match t.parse::<usize>() {
                        Ok(p) if p >= 1 => Ok(p - 1),
                        _ => Err(bad("points are positive integers")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    fn padded(&self, degree: usize) -> Permutation {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree as u32);
        Permutation(v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.0[x] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// Index-based access to a finite group, shared by permutation groups,
/// extension groups and subgroups of either.
pub trait GroupOps {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn generators(&self) -> Vec<usize>;
}

/// The group generated by named permutations, with shortlex canonical words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    gens: Vec<Permutation>,
    relators: Vec<Word>,
    elements: Vec<Permutation>,
    index: BTreeMap<Permutation, usize>,
    words: Vec<Word>,
    /// `right[l * J + j]` is the index of `l * g_j`.
    right: Vec<usize>,
    /// Breadth-first tree: the edge `(l, j)` that discovered each element.
    parent: Vec<Option<(usize, usize)>>,
    inverses: Vec<usize>,
}

/// Enumerate the group generated by `gens` and check the relators on it.
pub fn realize_group(
    names: Vec<String>,
    gens: Vec<Permutation>,
    relators: Vec<Word>,
    bound: usize,
) -> Result<FiniteGroup> {
    if names.len() != gens.len() {
        return Err(Error::DimensionMismatch { expected: names.len(), found: gens.len() });
    }
    let degree = gens.iter().map(Permutation::degree).max().unwrap_or(0);
    let gens: Vec<Permutation> = gens.iter().map(|g| g.padded(degree)).collect();
    let ngen = gens.len();
    for (i, r) in relators.iter().enumerate() {
        if r.max_generator().is_some_and(|g| g >= ngen) {
            return Err(Error::InvalidProblem(format!("relator {i} uses an unknown generator")));
        }
        let mut p = Permutation::identity(degree);
        for l in r.letters() {
            p = if l.inverse { p.then(&gens[l.gen].inverse()) } else { p.then(&gens[l.gen]) };
        }
        if !p.is_identity() {
            return Err(Error::RelatorViolated(i));
        }
    }

    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = BTreeMap::new();
    index.insert(id, 0usize);
    let mut words = vec![Word::identity()];
    let mut parent = vec![None];
    let mut right = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (j, g) in gens.iter().enumerate() {
            let next = elements[head].then(g);
            let idx = match index.get(&next) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i >= bound {
                        return Err(Error::GroupTooLarge(bound));
                    }
                    let mut w = words[head].clone();
                    w.push(crate::word::Letter { gen: j, inverse: false });
                    index.insert(next.clone(), i);
                    elements.push(next);
                    words.push(w);
                    parent.push(Some((head, j)));
                    i
                }
            };
            right.push(idx);
        }
        head += 1;
    }
    let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
    Ok(FiniteGroup { names, gens, relators, elements, index, words, right, parent, inverses })
}

impl FiniteGroup {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_perms(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(&p.padded(self.degree())).copied()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    /// Shortest, then lexicographically least, positive word for element `i`.
    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    /// `l * g_j`.
    pub fn right_mul(&self, l: usize, j: usize) -> usize {
        self.right[l * self.gens.len() + j]
    }

    /// The tree edge `(l, j)` with `l * g_j = i`, or `None` for the identity.
    pub fn tree_parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    pub fn is_tree_edge(&self, l: usize, j: usize) -> bool {
        self.parent[self.right_mul(l, j)] == Some((l, j))
    }

    pub fn generator_element(&self, j: usize) -> usize {
        self.right_mul(0, j)
    }

    /// Element index of a word over the generators.
    pub fn eval_word(&self, w: &Word) -> usize {
        let mut cur = 0;
        for l in w.letters() {
            let g = self.generator_element(l.gen);
            cur = if l.inverse { self.mul(cur, self.inverses[g]) } else { self.right_mul(cur, l.gen) };
        }
        cur
    }

    /// Elements of the subgroup generated by the given elements, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        closure(self, gens)
    }
}

impl GroupOps for FiniteGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.gens.len()).map(|j| self.generator_element(j)).collect()
    }
}

/// The subgroup generated by `gens`, as a sorted list of element indices.
pub fn closure<G: GroupOps + ?Sized>(g: &G, gens: &[usize]) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    seen.insert(g.identity());
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// A subgroup of `G` viewed as a group in its own right.
pub struct SubgroupView<'a, G: GroupOps + ?Sized> {
    parent: &'a G,
    elements: Vec<usize>,
    local: BTreeMap<usize, usize>,
    gens: Vec<usize>,
}

impl<'a, G: GroupOps + ?Sized> SubgroupView<'a, G> {
    pub fn generated_by(parent: &'a G, gens: &[usize]) -> Self {
        let elements = closure(parent, gens);
        let local: BTreeMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let gens = gens.iter().map(|g| local[g]).collect();
        SubgroupView { parent, elements, local, gens }
    }

    /// Parent indices of the subgroup's elements, sorted.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }
}

impl<G: GroupOps + ?Sized> GroupOps for SubgroupView<'_, G> {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        self.local[&self.parent.identity()]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.local[&self.parent.mul(self.elements[a], self.elements[b])]
    }

    fn inv(&self, a: usize) -> usize {
        self.local[&self.parent.inv(self.elements[a])]
    }

    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}
