//! Isomorphism-invariant fingerprints and a small recognition table.

use core::fmt;

use crate::prelude::*;
use crate::{Error, Result};

use super::ext::ExtGroup;
use super::group::{closure, FiniteGroup, GroupOps};
use super::split::split_test;

/// Default cap on group order for [`fingerprint`].
pub const DEFAULT_IDENTIFY_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    /// Invariant factors of `G / [G, G]`, ascending and dividing each other.
    pub abelianization: Vec<u64>,
    /// `(element order, how many)`, ascending.
    pub order_histogram: Vec<(u64, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    /// For extension groups: whether `G` splits over its module image.
    pub split: Option<bool>,
}

impl Fingerprint {
    pub fn is_abelian(&self) -> bool {
        self.derived_order == 1
    }

    pub fn count_of_order(&self, d: u64) -> usize {
        self.order_histogram.iter().find(|(o, _)| *o == d).map_or(0, |(_, c)| *c)
    }

    pub fn exponent(&self) -> u64 {
        self.order_histogram.iter().map(|(o, _)| *o).fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order={} abelianization={} orders=", self.order, abelian_name(&self.abelianization))?;
        let hist: Vec<String> = self.order_histogram.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        write!(f, "[{}] center={} derived={}", hist.join(","), self.center_order, self.derived_order)?;
        if let Some(s) = self.split {
            write!(f, " split={s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub fingerprint: Fingerprint,
    pub name: Option<String>,
}

/// `"1"`, `"Z4"`, `"Z2 x Z4"`, `"Z3^2"`.
pub fn abelian_name(invariants: &[u64]) -> String {
    let inv: Vec<u64> = invariants.iter().copied().filter(|&d| d != 1).collect();
    if inv.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < inv.len() {
        let mut run = 1;
        while i + run < inv.len() && inv[i + run] == inv[i] {
            run += 1;
        }
        parts.push(if run == 1 { format!("Z{}", inv[i]) } else { format!("Z{}^{run}", inv[i]) });
        i += run;
    }
    parts.join(" x ")
}

pub fn element_order<G: GroupOps + ?Sized>(g: &G, a: usize) -> u64 {
    let id = g.identity();
    let mut x = a;
    let mut n = 1;
    while x != id {
        x = g.mul(x, a);
        n += 1;
    }
    n
}

fn commutator<G: GroupOps + ?Sized>(g: &G, a: usize, b: usize) -> usize {
    g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))
}

/// Smallest normal subgroup containing `seeds`, sorted.
pub fn normal_closure<G: GroupOps + ?Sized>(g: &G, seeds: &[usize]) -> Vec<usize> {
    let gens_g = g.generators();
    let mut gens: Vec<usize> = seeds.to_vec();
    loop {
        let sub = closure(g, &gens);
        let members: BTreeSet<usize> = sub.iter().copied().collect();
        let mut added = false;
        for s in gens.clone() {
            for &x in &gens_g {
                let c = g.mul(g.mul(x, s), g.inv(x));
                if !members.contains(&c) && !gens.contains(&c) {
                    gens.push(c);
                    added = true;
                }
            }
        }
        if !added {
            return sub;
        }
    }
}

pub fn derived_subgroup<G: GroupOps + ?Sized>(g: &G) -> Vec<usize> {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for &a in &gens {
        for &b in &gens {
            seeds.push(commutator(g, a, b));
        }
    }
    normal_closure(g, &seeds)
}

pub fn center<G: GroupOps + ?Sized>(g: &G) -> Vec<usize> {
    let gens = g.generators();
    (0..g.order()).filter(|&z| gens.iter().all(|&x| g.mul(z, x) == g.mul(x, z))).collect()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of an abelian group given the order of each element.
pub fn abelian_invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let m = orders.len() as u64;
    let mut prime_powers: Vec<Vec<u64>> = Vec::new();
    for p in prime_factors(m) {
        // r_i = number of cyclic p-factors of exponent ≥ i.
        let mut r = Vec::new();
        let mut prev_log = 0u32;
        let mut pi = 1u64;
        loop {
            pi *= p;
            let c = orders.iter().filter(|&&o| pi % o == 0).count() as u64;
            let log = c.ilog(p);
            if log == prev_log {
                break;
            }
            r.push(log - prev_log);
            prev_log = log;
        }
        let mut powers = Vec::new();
        for (i, &ri) in r.iter().enumerate() {
            let next = r.get(i + 1).copied().unwrap_or(0);
            for _ in 0..ri - next {
                powers.push(p.pow(i as u32 + 1));
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        prime_powers.push(powers);
    }
    let len = prime_powers.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv: Vec<u64> =
        (0..len).map(|i| prime_powers.iter().map(|pp| pp.get(i).copied().unwrap_or(1)).product()).collect();
    inv.reverse();
    inv
}

/// The isomorphism invariants listed on [`Fingerprint`] (without `split`).
pub fn fingerprint<G: GroupOps + ?Sized>(g: &G, budget: usize) -> Result<Fingerprint> {
    let order = g.order();
    if order > budget {
        return Err(Error::BudgetExceeded { candidates: order as u128 });
    }
    let orders: Vec<u64> = (0..order).map(|a| element_order(g, a)).collect();
    let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
    for &o in &orders {
        *hist.entry(o).or_default() += 1;
    }
    let derived = derived_subgroup(g);
    // Label cosets of the derived subgroup, then read off orders in G/G'.
    let mut coset = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &d in &derived {
            coset[g.mul(x, d)] = id;
        }
    }
    let quotient_orders: Vec<u64> = reps
        .iter()
        .map(|&x| {
            let target = coset[g.identity()];
            let mut y = x;
            let mut n = 1;
            while coset[y] != target {
                y = g.mul(y, x);
                n += 1;
            }
            n
        })
        .collect();
    Ok(Fingerprint {
        order,
        abelianization: abelian_invariants_from_orders(&quotient_orders),
        order_histogram: hist.into_iter().collect(),
        center_order: center(g).len(),
        derived_order: derived.len(),
        split: None,
    })
}

/// Names for the groups that the standard examples produce.
pub fn recognize(fp: &Fingerprint) -> Option<String> {
    if fp.is_abelian() {
        return Some(abelian_name(&fp.abelianization));
    }
    let involutions = fp.count_of_order(2);
    let has = |d: u64| fp.count_of_order(d) > 0;
    let name = match (fp.order, fp.derived_order, fp.center_order) {
        (6, 3, 1) => "S3",
        (8, _, _) if involutions == 5 => "D4",
        (8, _, _) if involutions == 1 => "Q8",
        (12, 4, 1) => "A4",
        (16, _, _) if has(8) && involutions == 3 => "M4(2)",
        (16, _, _) if has(8) && involutions == 5 => "SD16",
        (16, _, _) if has(8) && involutions == 9 => "D8",
        (16, _, _) if has(8) && involutions == 1 => "Q16",
        (24, 12, 1) => "S4",
        (60, 60, 1) => "A5",
        _ => return None,
    };
    Some(name.into())
}

pub fn identify_group(g: &FiniteGroup, budget: usize) -> Result<Identification> {
    let fingerprint = fingerprint(g, budget)?;
    let name = recognize(&fingerprint);
    Ok(Identification { fingerprint, name })
}

/// Fingerprint plus split verdict. Split extensions without a table name
/// are named `K : L` from the module and base group.
pub fn identify_ext(g: &ExtGroup, budget: usize) -> Result<Identification> {
    let mut fp = fingerprint(g, budget)?;
    let split = split_test(g, budget as u128)?.is_some();
    fp.split = Some(split);
    let mut name = recognize(&fp);
    if name.is_none() && split {
        let base = identify_group(g.base(), budget)?;
        if let Some(l) = base.name {
            name = Some(format!("{} : {l}", abelian_name(g.quotient().moduli())));
        }
    }
    Ok(Identification { fingerprint: fp, name })
}
