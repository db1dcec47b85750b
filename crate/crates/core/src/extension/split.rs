//! Complement search: does `L̃/N → L` have a section?

use crate::prelude::*;
use crate::{Error, Result};

use super::ext::{ExtElement, ExtGroup};

/// Default cap on candidate tuples examined by [`split_test`].
pub const DEFAULT_SPLIT_BUDGET: u128 = 1_000_000;

/// Search for images `(v_j, g_j)` of the generators satisfying every relator.
///
/// Candidates for each generator are first filtered by the relators that
/// involve that generator alone; the rest are checked as soon as all their
/// generators are assigned. Returns the lexicographically least section.
pub fn split_test(g: &ExtGroup, budget: u128) -> Result<Option<Vec<ExtElement>>> {
    let base = g.base();
    let ng = base.generator_count();
    let qsize = g.module_order() as u128;
    let full = qsize.checked_pow(ng as u32).unwrap_or(u128::MAX);
    if qsize.saturating_mul(ng as u128) > budget {
        return Err(Error::BudgetExceeded { candidates: full });
    }
    let relators = base.relators();
    let gens_of = |i: usize| -> BTreeSet<usize> { relators[i].letters().iter().map(|l| l.gen).collect() };

    let mut candidates: Vec<Vec<ExtElement>> = Vec::with_capacity(ng);
    for j in 0..ng {
        let own: Vec<usize> = (0..relators.len()).filter(|&i| gens_of(i).iter().eq([j].iter())).collect();
        let gl = base.generator_element(j);
        let mut list: Vec<ExtElement> = (0..g.module_order())
            .map(|c| ExtElement { v: g.quotient().decode(c as u64), l: gl })
            .filter(|x| {
                own.iter().all(|&i| {
                    let mut imgs = vec![g.identity_element(); ng];
                    imgs[j] = x.clone();
                    g.eval_word(&relators[i], &imgs) == g.identity_element()
                })
            })
            .collect();
        list.sort();
        if list.is_empty() {
            return Ok(None);
        }
        candidates.push(list);
    }
    let tuples = candidates.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    if tuples > budget {
        return Err(Error::BudgetExceeded { candidates: tuples });
    }

    // Relators to check once generator t is assigned.
    let mut at_depth: Vec<Vec<usize>> = vec![Vec::new(); ng];
    for i in 0..relators.len() {
        let gens = gens_of(i);
        if gens.len() > 1 {
            at_depth[*gens.iter().next_back().expect("nonempty")].push(i);
        }
    }
    let mut chosen: Vec<ExtElement> = Vec::with_capacity(ng);
    if search(g, &candidates, &at_depth, &mut chosen) {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn search(g: &ExtGroup, candidates: &[Vec<ExtElement>], at_depth: &[Vec<usize>], chosen: &mut Vec<ExtElement>) -> bool {
    let t = chosen.len();
    if t == candidates.len() {
        return true;
    }
    let relators = g.base().relators();
    for c in &candidates[t] {
        chosen.push(c.clone());
        let mut imgs = chosen.clone();
        imgs.resize(candidates.len(), g.identity_element());
        let ok = at_depth[t].iter().all(|&i| g.eval_word(&relators[i], &imgs) == g.identity_element());
        if ok && search(g, candidates, at_depth, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
