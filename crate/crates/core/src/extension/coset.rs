//! Coset enumeration (HLT strategy with coincidence processing) for the
//! trivial subgroup of a finitely presented group.

use crate::prelude::*;
use crate::word::Word;
use crate::{Error, Result};

struct Table {
    /// Column `2j` is generator `j`, column `2j + 1` its inverse.
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    budget: usize,
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl Table {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.rows.len() >= self.budget {
            return Err(Error::Undecided(self.budget));
        }
        let d = self.rows.len();
        let cols = self.rows[0].len();
        self.rows.push(vec![None; cols]);
        self.parent.push(d);
        self.rows[c][x] = Some(d);
        self.rows[d][inv_col(x)] = Some(c);
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.rows[g].len() {
                let Some(d) = self.rows[g][x] else { continue };
                self.rows[d][inv_col(x)] = None;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if let Some(t) = self.rows[mu][x] {
                    self.merge(nu, t);
                } else if let Some(t) = self.rows[nu][inv_col(x)] {
                    self.merge(mu, t);
                } else {
                    self.rows[mu][x] = Some(nu);
                    self.rows[nu][inv_col(x)] = Some(mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j {
                match self.rows[f][w[i as usize]] {
                    Some(t) => {
                        f = t;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j >= i {
                match self.rows[b][inv_col(w[j as usize])] {
                    Some(t) => {
                        b = t;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.rows[f][x] = Some(b);
                self.rows[b][inv_col(x)] = Some(f);
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }
}

/// Order of `⟨generators | relators⟩`, if enumeration closes with at most
/// `budget` cosets defined.
pub fn coset_enumerate(generators: usize, relators: &[Word], budget: usize) -> Result<usize> {
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| r.letters().iter().map(|l| 2 * l.gen + usize::from(l.inverse)).collect())
        .collect();
    if rels.iter().flatten().any(|&c| c >= 2 * generators) {
        return Err(Error::InvalidProblem("relator uses an unknown generator".into()));
    }
    let mut t = Table { rows: vec![vec![None; 2 * generators]], parent: vec![0], queue: Vec::new(), budget };
    let mut c = 0;
    while c < t.rows.len() {
        for r in &rels {
            if t.parent[c] != c {
                break;
            }
            t.scan_and_fill(c, r)?;
        }
        for x in 0..2 * generators {
            if t.parent[c] != c {
                break;
            }
            if t.rows[c][x].is_none() {
                t.define(c, x)?;
            }
        }
        c += 1;
    }
    Ok((0..t.rows.len()).filter(|&i| t.parent[i] == i).count())
}
