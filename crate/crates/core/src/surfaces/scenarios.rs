//! Named, fully configured scenarios with their expected results.
//!
//! Each scenario computes its facts from scratch and compares them against
//! the expectations bundled here; callers only print the report.

use core::fmt::Display;

use crate::action::{enumerate_invariant_subgroups, EnumerationConstraints};
use crate::extension::{
    abelian_name, build_ext_group, element_order, fingerprint, galois_closure_pipeline, identify_group, recognize,
    split_test, ClosureReport, ExtElement, GroupOps, SubgroupView, DEFAULT_SPLIT_BUDGET,
};
use crate::lift::{cyclic_lift_solve, cyclic_lift_solve_modulo, cyclic_split_verdict, norm_matrix, CyclicLiftProblem};
use crate::prelude::*;
use crate::zkmod::{ModuleVector, SubgroupBasis};
use crate::{Error, Result};

use super::actions::{
    a5_group, free_cyclic_action, involution_action, order3_action, s3_action, single_cycle_action, format_homology,
    format_subgroup, StandardAction, a, b,
};
use super::signature::{quotient_genus, riemann_hurwitz_genus, EpimorphismSpec, OrbifoldSignature};

const BUDGET: usize = DEFAULT_SPLIT_BUDGET as usize;

/// One expectation and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub text: String,
    pub pass: bool,
}

impl core::fmt::Display for Check {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} {}", self.text, if self.pass { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub name: &'static str,
    pub description: &'static str,
    /// Human-readable narrative.
    pub lines: Vec<String>,
    /// Machine-readable `key=value` facts, in output order.
    pub facts: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScenarioInfo {
    pub name: &'static str,
    pub description: &'static str,
}

type Runner = fn(&mut Builder) -> Result<()>;

const CATALOG: &[(ScenarioInfo, Runner)] = &[
    (
        ScenarioInfo { name: "riemann-hurwitz", description: "genus formulas of every standard family and spot values" },
        riemann_hurwitz,
    ),
    (
        ScenarioInfo { name: "sec4-free-cyclic", description: "free Z_m actions: order-m lifts exist iff gcd(m, k) = 1" },
        free_cyclic,
    ),
    (
        ScenarioInfo { name: "sec4.1-QD16", description: "free involution, g = 3, k = 4: order-16 non-split closure" },
        free_involution_closure,
    ),
    (
        ScenarioInfo { name: "sec4.1-generic", description: "free involution, g = 5, k = 4: core against the listed basis" },
        free_involution_generic,
    ),
    (
        ScenarioInfo { name: "sec4.2-A5", description: "A5 of signature (0;5,5,5): no order-3 lift of r over Z_3" },
        a5_obstruction,
    ),
    (
        ScenarioInfo { name: "sec4.2.2-A4", description: "A4 and Klein four subgroups of A5 acting freely on genus 13" },
        a5_subgroups,
    ),
    (
        ScenarioInfo { name: "sec5-involution", description: "involutions with fixed points always lift with order 2" },
        involution,
    ),
    (
        ScenarioInfo { name: "sec6.1.1", description: "order 3, genus 3 over the sphere: closure Z_k^2 : Z_3" },
        order3_sphere,
    ),
    (
        ScenarioInfo { name: "sec6.3-omega", description: "the two order-3 actions on genus 7 over a torus" },
        order3_torus,
    ),
    (
        ScenarioInfo { name: "sec6.3.3", description: "order 3 on genus 7, k = 3: an invariant N1 with abelian quotient" },
        order3_torus_quotient,
    ),
    (
        ScenarioInfo { name: "sec7-lemma-dichotomy", description: "S3 on genus 4: split iff 3 does not divide k" },
        s3_dichotomy,
    ),
    (ScenarioInfo { name: "sec7.3-S4", description: "S3 on genus 4, k = 2: Galois closure S4" }, s3_closure_s4),
    (
        ScenarioInfo { name: "sec7.4.1-count40", description: "S3 on genus 4, k = 3: invariant subgroups of index 3" },
        s3_count,
    ),
    (ScenarioInfo { name: "sec7.4.2", description: "S3, k = 3: invariant N, split, order 54" }, s3_case_2),
    (ScenarioInfo { name: "sec7.4.3", description: "S3, k = 3: invariant N, non-split, order 54" }, s3_case_3),
    (ScenarioInfo { name: "sec7.4.4", description: "S3, k = 3: closure of order 486, non-split" }, s3_case_4),
    (ScenarioInfo { name: "sec7.4.5", description: "S3, k = 3: closure of order 4374, split" }, s3_case_5),
];

/// Every scenario name with a one-line description, in catalog order.
pub fn scenario_catalog() -> Vec<ScenarioInfo> {
    CATALOG.iter().map(|(i, _)| *i).collect()
}

pub fn run_scenario(name: &str) -> Result<ScenarioReport> {
    let (info, run) = CATALOG.iter().find(|(i, _)| i.name == name).ok_or_else(|| Error::UnknownScenario(name.into()))?;
    let mut b = Builder::default();
    run(&mut b)?;
    Ok(ScenarioReport { name: info.name, description: info.description, lines: b.lines, facts: b.facts, checks: b.checks })
}

#[derive(Default)]
struct Builder {
    lines: Vec<String>,
    facts: Vec<(String, String)>,
    checks: Vec<Check>,
}

impl Builder {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn fact(&mut self, key: impl Into<String>, value: impl Display) {
        self.facts.push((key.into(), value.to_string()));
    }

    fn check(&mut self, text: impl Into<String>, pass: bool) {
        self.checks.push(Check { text: text.into(), pass });
    }

    fn expect<T: PartialEq + Display>(&mut self, label: &str, actual: T, expected: T) {
        let pass = actual == expected;
        let text = if pass { format!("{label}={actual}") } else { format!("{label}={actual} (expected {expected})") };
        self.check(text, pass);
    }

    fn closure(&mut self, prefix: &str, r: &ClosureReport, g: usize) {
        let p = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        self.line(format!("{}N1 = {}", label(prefix), format_subgroup(&r.n1, g)));
        self.line(format!("{}N2 = {}", label(prefix), format_subgroup(&r.n2, g)));
        self.line(format!(
            "{}M/N1 = {}, N1/N2 = {}, K = M/N2 = {}",
            label(prefix),
            abelian_name(&r.a_hat),
            abelian_name(&r.u_group),
            abelian_name(&r.k_group)
        ));
        self.line(format!("{}G: {}", label(prefix), r.identification.fingerprint));
        self.fact(p("n1"), format_subgroup(&r.n1, g));
        self.fact(p("n2"), format_subgroup(&r.n2, g));
        self.fact(p("a_hat"), abelian_name(&r.a_hat));
        self.fact(p("u"), abelian_name(&r.u_group));
        self.fact(p("k"), abelian_name(&r.k_group));
        self.fact(p("order"), r.group.len());
        self.fact(p("split"), r.verdict.is_split());
        self.fact(p("split_guaranteed"), r.split_guaranteed);
        self.fact(p("name"), r.identification.name.as_deref().unwrap_or("?"));
    }
}

fn label(prefix: &str) -> String {
    if prefix.is_empty() {
        String::new()
    } else {
        format!("[{prefix}] ")
    }
}

fn name_of(r: &ClosureReport) -> String {
    r.identification.name.clone().unwrap_or_else(|| "?".into())
}

fn riemann_hurwitz(bd: &mut Builder) -> Result<()> {
    let mut cases = 0;
    let mut bad: Vec<String> = Vec::new();
    let mut record = |family: &str, params: String, rh: u64, closed: u64, built: usize| {
        cases += 1;
        if rh != closed || rh != built as u64 {
            bad.push(format!("{family}{params}: rh={rh} closed={closed} constructed={built}"));
        }
    };
    // Free Z_m: cover genus m·blocks + 1 over quotient genus blocks + 1.
    for m in 2..=4u64 {
        for blocks in 1..=3u64 {
            let act = free_cyclic_action(m as usize, blocks as usize, 2)?;
            let sig = OrbifoldSignature::new(blocks + 1, vec![])?;
            record("free", format!("(m={m},blocks={blocks})"), riemann_hurwitz_genus(&sig, m)?, m * blocks + 1, act.genus);
        }
    }
    for gamma in 0..=3u64 {
        for n in 1..=9u64 {
            let g = 2 * gamma + n - 1;
            if g >= 2 {
                let sig = OrbifoldSignature::new(gamma, vec![2; 2 * n as usize])?;
                let act = involution_action(gamma as usize, n as usize, 2)?;
                record("involution", format!("(γ={gamma},n={n})"), riemann_hurwitz_genus(&sig, 2)?, g, act.genus);
            }
            let g3 = if gamma == 0 { n.wrapping_sub(1) } else { 3 * gamma + n - 1 };
            if n >= 1 && g3 >= 2 {
                let sig = OrbifoldSignature::new(gamma, vec![3; n as usize + 1])?;
                let act = order3_action(gamma as usize, n as usize, 0, 2)?;
                record("order3", format!("(γ={gamma},n={n})"), riemann_hurwitz_genus(&sig, 3)?, g3, act.genus);
            }
        }
    }
    for n in [5u64, 7, 9] {
        let sig = OrbifoldSignature::new(0, vec![2; n as usize + 1])?;
        let act = s3_action(n as usize, 2)?;
        record("s3", format!("(n={n})"), riemann_hurwitz_genus(&sig, 6)?, (3 * n - 7) / 2, act.genus);
    }
    for line in &bad {
        bd.line(format!("mismatch {line}"));
    }
    bd.fact("grid.cases", cases);
    bd.fact("grid.mismatches", bad.len());
    let s3_torus = riemann_hurwitz_genus(&OrbifoldSignature::new(1, vec![2; 6])?, 6)?;
    bd.line(format!(
        "S3 with n = 5 over a torus: Riemann–Hurwitz gives g = {s3_torus}, i.e. 6γ + (3n-7)/2; only γ = 0 is used"
    ));
    bd.fact("s3.gamma1.n5", s3_torus);

    let spot = [
        ("(0;5,5,5) |L|=60", OrbifoldSignature::new(0, vec![5, 5, 5])?, 60, 13),
        ("(0;2,2,2,2,2,2) |L|=6", OrbifoldSignature::new(0, vec![2; 6])?, 6, 4),
        ("(1;3,3,3,3,3,3) |L|=3", OrbifoldSignature::new(1, vec![3; 6])?, 3, 7),
    ];
    bd.check(format!("grid cases={cases} mismatches={}", bad.len()), bad.is_empty());
    for (label, sig, order, expected) in spot {
        bd.expect(&format!("genus {label}"), riemann_hurwitz_genus(&sig, order)?, expected);
    }
    bd.expect("quotient genus of a free Z3 on genus 13", quotient_genus(13, 3, &[])?, 5);
    let bad_data = riemann_hurwitz_genus(&OrbifoldSignature::new(0, vec![3; 4])?, 2);
    bd.check("(0;3,3,3,3) over |L|=2 rejected as NonIntegerGenus", bad_data == Err(Error::NonIntegerGenus));
    Ok(())
}

fn cyclic_problem(act: &StandardAction, j: usize, order: u64, defect: ModuleVector) -> Result<CyclicLiftProblem> {
    CyclicLiftProblem::new(act.action.matrix(j).clone(), order, defect)
}

fn free_cyclic(bd: &mut Builder) -> Result<()> {
    for (m, k) in [(2usize, 2u64), (3, 3), (2, 3), (3, 2), (2, 4)] {
        let act = free_cyclic_action(m, 1, k)?;
        let g = act.genus;
        let key = format!("m{m}.k{k}");
        let p = cyclic_problem(&act, 0, m as u64, act.defects[0].clone())?;
        let verdict = cyclic_split_verdict(&p, false)?;
        let spec = act.spec()?;
        let full = build_ext_group(&spec, &SubgroupBasis::trivial(act.modulus(), 2 * g))?;
        let searched = split_test(&full, DEFAULT_SPLIT_BUDGET)?.is_some();
        let expected = num_integer::gcd(m as u64, k) == 1;
        bd.fact(format!("{key}.split"), verdict.split);
        bd.expect(&format!("m={m} k={k} split"), verdict.split, expected);
        bd.check(format!("m={m} k={k} complement search agrees ({searched})"), searched == verdict.split);
        if !expected {
            // Every lift of φ then has order m·k.
            let phi = full.base().generator_element(0);
            let orders: BTreeSet<u64> = (0..full.module_order())
                .map(|c| {
                    let x = ExtElement { v: full.quotient().decode(c as u64), l: phi };
                    full.element_order(&x)
                })
                .collect();
            let ok = orders.len() == 1 && orders.contains(&((m as u64) * k));
            bd.check(format!("m={m} k={k} every lift of phi has order {}", m as u64 * k), ok);
        }
        // Quotienting by the defect closure ⟨b_g⟩ forces a split.
        let bg = SubgroupBasis::from_generators(act.modulus(), 2 * g, &[act.defects[0].clone()])?;
        let closure_group = build_ext_group(&spec, &spec.defect_closure()?)?;
        let split_mod = split_test(&closure_group, DEFAULT_SPLIT_BUDGET)?.is_some();
        bd.check(format!("m={m} k={k} splits modulo <b{g}>"), split_mod && spec.defect_closure()? == bg);
    }
    Ok(())
}

fn free_involution_closure(bd: &mut Builder) -> Result<()> {
    let act = free_cyclic_action(2, 1, 4)?;
    let n1 = act.subgroup(&["a1", "a2", "a3", "b2", "b1*b3^2"])?;
    let listed = act.subgroup(&["a1", "a2", "a3", "b1^2", "b2^2", "b1*b2*b3^2"])?;
    let r = galois_closure_pipeline(&act.spec()?, &n1, BUDGET)?;
    bd.closure("", &r, act.genus);
    let g = &r.group;
    let involutions: Vec<usize> = (0..g.len()).filter(|&x| element_order(g, x) == 2).collect();
    let inside = involutions.iter().all(|&x| g.is_in_module(x));
    let name = name_of(&r);
    bd.line(format!("order-16 type by fingerprint: {name} ({} involutions)", involutions.len()));
    if name != "SD16" {
        bd.line("the quasidihedral group has 5 involutions, so it is not the group that arises");
    }
    bd.fact("involutions", involutions.len());
    bd.fact("order16_type", &name);
    bd.expect("N2 equals the listed basis", r.n2 == listed, true);
    bd.expect("|G|", r.group.len(), 16);
    bd.expect("K", abelian_name(&r.k_group), "Z2 x Z4".into());
    bd.expect("A_hat", abelian_name(&r.a_hat), "Z4".into());
    bd.expect("U", abelian_name(&r.u_group), "Z2".into());
    bd.expect("split", r.verdict.is_split(), false);
    bd.check(format!("all {} involutions lie in K", involutions.len()), inside);
    Ok(())
}

fn free_involution_generic(bd: &mut Builder) -> Result<()> {
    let g = 5;
    let n1_gens = ["a1", "a2", "a3", "a4", "a5", "b2", "b3", "b4", "b1*b5^2"];
    let listed_gens = ["a1", "a2", "a3", "a4", "a5", "b1^2", "b2^2", "b3", "b4", "b1*b2*b5^2"];
    let block = free_cyclic_action(2, 2, 4)?;
    let n1 = block.subgroup(&n1_gens)?;
    let listed = block.subgroup(&listed_gens)?;
    let r = galois_closure_pipeline(&block.spec()?, &n1, BUDGET)?;
    bd.line("block action: handles (1,2) and (3,4) swapped, handle 5 fixed");
    bd.closure("block", &r, g);
    bd.line(format!("listed N2 = {}", format_subgroup(&listed, g)));

    let literal = single_cycle_action(g, 4)?;
    let core = literal.action.core(&n1)?;
    let matches = core == listed;
    bd.line("single-cycle action: a1 -> a2 -> a3 -> a4 -> a1 (order 4), handle 5 fixed");
    bd.line(format!("[single-cycle] N2 = {}", format_subgroup(&core, g)));
    bd.line(format!(
        "[single-cycle] {} the listed basis",
        if matches { "agrees with" } else { "differs from" }
    ));
    bd.fact("single_cycle.n2", format_subgroup(&core, g));
    bd.fact("single_cycle.matches_listed", matches);
    bd.expect("block N2 equals the listed basis", r.n2 == listed, true);
    bd.expect("block split", r.verdict.is_split(), false);
    Ok(())
}

fn a5_obstruction(bd: &mut Builder) -> Result<()> {
    let act = free_cyclic_action(3, 4, 3)?;
    let g = act.genus;
    let m0 = ModuleVector::unit(act.modulus(), 2 * g, a(13));
    let p = cyclic_problem(&act, 0, 3, m0.clone())?;
    let outcome = cyclic_lift_solve(&p)?;
    let cert = outcome.certificate();
    bd.line(format!("r acts on Z_3^{} with handle {g} fixed; m0 = {}", 2 * g, format_homology(&m0, g)));
    let norm = norm_matrix(p.matrix(), 3)?;
    let certified = match cert.and_then(|c| c.functional.as_ref()) {
        Some(lambda) => {
            bd.line(format!("functional: {}", format_homology(lambda, g)));
            let kills_image = (0..norm.ncols()).all(|j| lambda.dot(&norm.column(j)).is_ok_and(|x| x == 0));
            kills_image && lambda.dot(&m0)? != 0
        }
        None => false,
    };
    let row_zero = norm.row(a(13)).iter().all(|&x| x == 0);
    bd.line("a13 coefficient of N(alpha) + m0 is 3*x + 1 for alpha with a13 coefficient x");
    let n1 = act.subgroup(
        &(1..=12).map(|i| format!("a{i}")).chain((1..=13).map(|i| format!("b{i}"))).collect::<Vec<_>>().iter().map(String::as_str).collect::<Vec<_>>(),
    )?;
    let modulo = cyclic_lift_solve_modulo(&p, &n1)?;
    let l = a5_group()?;
    let l_name = identify_group(&l, BUDGET)?.name.unwrap_or_default();
    let genus = riemann_hurwitz_genus(&OrbifoldSignature::new(0, vec![5, 5, 5])?, l.len() as u64)?;
    bd.fact("lift", if outcome.witness().is_some() { "found" } else { "none" });
    bd.fact("lift_modulo_n1", if modulo.witness().is_some() { "found" } else { "none" });
    bd.fact("group", &l_name);
    bd.expect("|L|", l.len(), 60);
    bd.expect("L", l_name, "A5".into());
    bd.expect("genus", genus, g as u64);
    bd.expect("genus of S/<r>", quotient_genus(genus, 3, &[])?, 5);
    bd.check("certificate: functional kills the norm image and not m0", certified);
    bd.check("a13 row of the norm matrix vanishes mod 3 and m0 has a13 coefficient 1", row_zero && m0.coords()[a(13)] == 1);
    bd.check("no order-3 lift modulo <a1..a12, b1..b13>", modulo.witness().is_none());
    bd.check("order-3 lift of r: NONE (norm equation unsolvable)", outcome.witness().is_none());
    Ok(())
}

fn a5_subgroups(bd: &mut Builder) -> Result<()> {
    let l = a5_group()?;
    let (r, h) = (l.generator_element(0), l.generator_element(1));
    // h∘r applies r first.
    let hr = l.mul(r, h);
    let s = l.mul(l.mul(l.inv(hr), h), hr);
    let t = l.mul(l.mul(l.inv(r), s), r);
    let k = SubgroupView::generated_by(&l, &[r, s]);
    let khat = SubgroupView::generated_by(&l, &[s, t]);
    let k_name = recognize(&fingerprint(&k, BUDGET)?).unwrap_or_else(|| "?".into());
    let khat_name = recognize(&fingerprint(&khat, BUDGET)?).unwrap_or_else(|| "?".into());
    let khat_normal = k.elements().iter().all(|&x| {
        khat.elements().iter().all(|&y| khat.elements().binary_search(&l.mul(l.mul(l.inv(x), y), x)).is_ok())
    });
    // Only the order-5 elements of A5 have fixed points on S.
    let free = k.elements().iter().all(|&x| element_order(&l, x) != 5);
    let g = 13;
    let x_genus = quotient_genus(g, k.elements().len() as u64, &[])?;
    let y_genus = quotient_genus(g, khat.elements().len() as u64, &[])?;
    let a_order = (k.elements().len() / khat.elements().len()) as u64;
    let y_over_a = quotient_genus(y_genus, a_order, &[])?;
    bd.line(format!("K = <r, s> with s = {}, t = {}", l.element(s), l.element(t)));
    bd.line(format!("genus of X = S/K is {x_genus} by Riemann–Hurwitz for a free action of order 12"));
    bd.fact("k", &k_name);
    bd.fact("khat", &khat_name);
    bd.fact("x_genus", x_genus);
    bd.fact("y_genus", y_genus);
    bd.expect("|K|", k.elements().len(), 12);
    bd.expect("K", k_name, "A4".into());
    bd.expect("K_hat", khat_name, "Z2^2".into());
    bd.check("K_hat is normal in K", khat_normal);
    bd.check("K acts freely (no elements of order 5)", free);
    bd.expect("genus of Y = S/K_hat", y_genus, 4);
    bd.check(format!("genus of Y/(K/K_hat) = genus of X = {x_genus}"), y_over_a == x_genus);
    Ok(())
}

fn involution(bd: &mut Builder) -> Result<()> {
    for (gamma, n, k) in [(1usize, 2usize, 2u64), (1, 2, 3), (0, 3, 2), (2, 1, 2)] {
        let act = involution_action(gamma, n, k)?;
        let g = act.genus;
        let key = format!("gamma{gamma}.n{n}.k{k}");
        let spec = act.spec()?;
        let ext = build_ext_group(&spec, &SubgroupBasis::trivial(act.modulus(), 2 * g))?;
        let section = split_test(&ext, DEFAULT_SPLIT_BUDGET)?;
        let p = cyclic_problem(&act, 0, 2, act.defects[0].clone())?;
        let verdict = cyclic_split_verdict(&p, true)?;
        let sig = OrbifoldSignature::new(gamma as u64, vec![2; 2 * n])?;
        let phi = act.group.generator_element(0);
        let id = act.group.identity();
        let epi = EpimorphismSpec::new(sig, &act.group, vec![(id, id); gamma], vec![phi; 2 * n])?;
        let odd = OrbifoldSignature::new(gamma as u64, vec![2; 2 * n + 1])
            .and_then(|s| EpimorphismSpec::new(s, &act.group, vec![(id, id); gamma], vec![phi; 2 * n + 1]));
        bd.fact(format!("{key}.genus"), g);
        bd.fact(format!("{key}.split"), section.is_some());
        bd.expect(&format!("(γ,n,k)=({gamma},{n},{k}) genus"), epi.cover_genus(&act.group)?, (2 * gamma + n - 1) as u64);
        bd.expect(&format!("(γ,n,k)=({gamma},{n},{k}) split"), section.is_some(), true);
        bd.check(
            format!("(γ,n,k)=({gamma},{n},{k}) fixed-point criterion agrees"),
            verdict.fixed_point_path == Some(true) && verdict.split,
        );
        bd.check(format!("(γ,n,k)=({gamma},{n},{k}) odd number of cone images rejected"), odd.is_err());
    }
    Ok(())
}

fn order3_sphere(bd: &mut Builder) -> Result<()> {
    for k in 2..=5u64 {
        let act = order3_action(0, 4, 1, k)?;
        let g = act.genus;
        let n1 = act.subgroup(&["a1", "a3", "b1", "b2", "b3"])?;
        let expected_n2 = act.subgroup(&["a3", "b1", "b2", "b3"])?;
        let r = galois_closure_pipeline(&act.spec()?, &n1, BUDGET)?;
        let prefix = format!("k{k}");
        bd.closure(&prefix, &r, g);
        bd.expect(&format!("k={k} N2 matches"), r.n2 == expected_n2, true);
        bd.expect(&format!("k={k} K"), abelian_name(&r.k_group), abelian_name(&[k, k]));
        bd.expect(&format!("k={k} U"), abelian_name(&r.u_group), abelian_name(&[k]));
        bd.expect(&format!("k={k} |G|"), r.group.len(), 3 * (k * k) as usize);
        bd.expect(&format!("k={k} split"), r.verdict.is_split(), true);
        if k == 2 {
            bd.expect("k=2 G", name_of(&r), "A4".into());
        }
    }
    let act = order3_action(0, 4, 1, 2)?;
    let phi = act.group.generator_element(0);
    let phi_inv = act.group.inv(phi);
    let epi = EpimorphismSpec::new(
        OrbifoldSignature::new(0, vec![3; 5])?,
        &act.group,
        vec![],
        vec![phi, phi_inv, phi, phi, phi],
    )?;
    bd.expect("genus", epi.cover_genus(&act.group)?, act.genus as u64);
    Ok(())
}

fn order3_torus(bd: &mut Builder) -> Result<()> {
    let w1 = order3_action(1, 5, 1, 3)?;
    let w2 = order3_action(1, 5, 2, 3)?;
    let g = w1.genus;
    let phi = w1.group.generator_element(0);
    let phi_inv = w1.group.inv(phi);
    let id = w1.group.identity();
    let sig = OrbifoldSignature::new(1, vec![3; 6])?;
    let e1 = EpimorphismSpec::new(sig.clone(), &w1.group, vec![(id, id)], vec![phi; 6])?;
    let e2 = EpimorphismSpec::new(sig, &w2.group, vec![(id, id)], [phi, phi_inv].repeat(3))?;
    let image = |act: &StandardAction, i: usize| format_homology(&act.action.matrix(0).column(i), g);
    bd.line(format!("omega1: phi(a6) = {}, phi(a7) = {}", image(&w1, a(6)), image(&w1, a(7))));
    bd.line(format!("omega2: phi(a6) = {}, phi(a7) = {}", image(&w2, a(6)), image(&w2, a(7))));
    bd.expect("genus omega1", e1.cover_genus(&w1.group)?, 7);
    bd.expect("genus omega2", e2.cover_genus(&w2.group)?, 7);
    bd.check("omega1 phi^3 = 1 on homology", w1.action.matrix(0).pow(3)?.is_identity());
    bd.check("omega2 phi^3 = 1 on homology", w2.action.matrix(0).pow(3)?.is_identity());
    bd.expect("omega1 phi(a6)", image(&w1, a(6)), "b6".into());
    bd.expect("omega2 phi(a6)", image(&w2, a(6)), "a7".into());
    for (label, act) in [("omega1", &w1), ("omega2", &w2)] {
        let p = cyclic_problem(act, 0, 3, act.defects[0].clone())?;
        bd.expect(&format!("{label} split (k=3)"), cyclic_split_verdict(&p, true)?.split, true);
        let small = order3_action(1, 5, if label == "omega1" { 1 } else { 2 }, 2)?;
        let ext = build_ext_group(&small.spec()?, &SubgroupBasis::trivial(small.modulus(), 2 * g))?;
        bd.expect(&format!("{label} complement found (k=2)"), split_test(&ext, DEFAULT_SPLIT_BUDGET)?.is_some(), true);
    }
    Ok(())
}

fn order3_torus_quotient(bd: &mut Builder) -> Result<()> {
    let act = order3_action(1, 5, 1, 3)?;
    let mut gens = vec!["a1*a2^-1".to_string(), "a1*a3^-1".to_string()];
    gens.extend((4..=7).map(|i| format!("a{i}")));
    gens.extend((1..=7).map(|i| format!("b{i}")));
    let n1 = act.subgroup(&gens.iter().map(String::as_str).collect::<Vec<_>>())?;
    let invariant = act.action.is_invariant(&n1)?;
    let r = galois_closure_pipeline(&act.spec()?, &n1, BUDGET)?;
    bd.closure("", &r, act.genus);
    bd.check("N1 is invariant", invariant);
    bd.expect("N2 = N1", r.n2 == n1, true);
    bd.expect("|G|", r.group.len(), 9);
    bd.expect("G", name_of(&r), "Z3^2".into());
    Ok(())
}

fn s3_module_n(act: &StandardAction) -> Result<SubgroupBasis> {
    let g = act.genus;
    let mut gens: Vec<ModuleVector> = (1..=g).map(|i| ModuleVector::unit(act.modulus(), 2 * g, a(i))).collect();
    gens.extend((1..g).map(|i| ModuleVector::unit(act.modulus(), 2 * g, b(g, i))));
    SubgroupBasis::from_generators(act.modulus(), 2 * g, &gens)
}

fn s3_dichotomy(bd: &mut Builder) -> Result<()> {
    for k in [2u64, 4, 5, 3, 6, 9] {
        let act = s3_action(5, k)?;
        let n = s3_module_n(&act)?;
        let ext = build_ext_group(&act.spec()?, &n)?;
        let split = split_test(&ext, DEFAULT_SPLIT_BUDGET)?.is_some();
        let p = cyclic_problem(&act, 0, 3, act.defects[0].clone())?;
        let r_lift = cyclic_lift_solve_modulo(&p, &n)?.witness().is_some();
        bd.fact(format!("k{k}.split"), split);
        bd.fact(format!("k{k}.r_lift"), r_lift);
        bd.expect(&format!("k={k} split"), split, k % 3 != 0);
    }
    let act = s3_action(5, 2)?;
    let p = cyclic_problem(&act, 0, 3, act.defects[0].clone())?;
    let lift = cyclic_lift_solve(&p)?;
    if let Some(alpha) = lift.witness() {
        bd.line(format!("k=2: order-3 lift of r with alpha = {}", format_homology(alpha, act.genus)));
    }
    bd.check("k=2: an order-3 lift of r exists on the full module", lift.witness().is_some());
    Ok(())
}

fn s3_closure_s4(bd: &mut Builder) -> Result<()> {
    let act = s3_action(5, 2)?;
    let n1 = act.subgroup(&["a1", "a2*a3", "a4", "b1", "b2", "b3", "b4"])?;
    let expected_n2 = act.subgroup(&["a1*a2*a3", "a4", "b1", "b2", "b3", "b4"])?;
    let r = galois_closure_pipeline(&act.spec()?, &n1, BUDGET)?;
    bd.closure("", &r, act.genus);
    let g = &r.group;
    let a1 = g.index(&g.module_element(&act.element("a1")?)?);
    let a2 = g.index(&g.module_element(&act.element("a2")?)?);
    let psi_h = g.index(&g.generator_lift(1));
    let h = SubgroupView::generated_by(g, &[a1, a2, psi_h]);
    let h_name = recognize(&fingerprint(&h, BUDGET)?).unwrap_or_else(|| "?".into());
    bd.fact("h_subgroup", &h_name);
    bd.expect("N2 matches", r.n2 == expected_n2, true);
    bd.expect("K", abelian_name(&r.k_group), "Z2^2".into());
    bd.expect("A_hat", abelian_name(&r.a_hat), "Z2".into());
    bd.expect("U", abelian_name(&r.u_group), "Z2".into());
    bd.expect("|G|", g.len(), 24);
    bd.expect("G", name_of(&r), "S4".into());
    bd.expect("<A1, A2, Psi_h>", h_name, "D4".into());
    Ok(())
}

fn s3_count(bd: &mut Builder) -> Result<()> {
    let act = s3_action(5, 3)?;
    let c = EnumerationConstraints { quotient: Some(vec![3]), ..Default::default() };
    let found = enumerate_invariant_subgroups(&act.action, &c, 1_000_000)?;
    let b4 = act.element("b4")?;
    let mut with_b4 = 0;
    for s in &found {
        if s.contains(&b4)? {
            with_b4 += 1;
        }
    }
    bd.line(format!("invariant subgroups of index 3 in Z_3^{}: {}", 2 * act.genus, found.len()));
    bd.fact("count", found.len());
    bd.fact("contains_b4", with_b4);
    bd.check(format!("count={} contains_b4={with_b4}", found.len()), found.len() == 40 && with_b4 == 13);
    Ok(())
}

struct S3Case {
    n1: &'static [&'static str],
    n2: &'static [&'static str],
    order: usize,
    split: bool,
    name: Option<&'static str>,
    b4_outside: bool,
}

fn s3_case(bd: &mut Builder, case: S3Case) -> Result<()> {
    let act = s3_action(5, 3)?;
    let n1 = act.subgroup(case.n1)?;
    let expected = act.subgroup(case.n2)?;
    let r = galois_closure_pipeline(&act.spec()?, &n1, BUDGET)?;
    bd.closure("", &r, act.genus);
    let invariant = act.action.is_invariant(&n1)?;
    bd.fact("n1_invariant", invariant);
    if !invariant {
        bd.line("N1 is not invariant under the action");
    }
    bd.expect("N2 matches", r.n2 == expected, true);
    bd.expect("|G|", r.group.len(), case.order);
    bd.expect("split", r.verdict.is_split(), case.split);
    if case.b4_outside {
        bd.check("b4 not in N1", !n1.contains(&act.element("b4")?)?);
    }
    if let Some(name) = case.name {
        bd.expect("G", name_of(&r), name.into());
    }
    Ok(())
}

fn s3_case_2(bd: &mut Builder) -> Result<()> {
    s3_case(
        bd,
        S3Case {
            n1: &["a1*a2*a3", "a4", "b1", "b2", "b3", "b4"],
            n2: &["a1*a2*a3", "a4", "b1", "b2", "b3", "b4"],
            order: 54,
            split: true,
            name: Some("Z3^2 : S3"),
            b4_outside: false,
        },
    )
}

fn s3_case_3(bd: &mut Builder) -> Result<()> {
    s3_case(
        bd,
        S3Case {
            n1: &["a1", "a2", "a3", "b1", "b2", "b3"],
            n2: &["a1", "a2", "a3", "b1", "b2", "b3"],
            order: 54,
            split: false,
            name: None,
            b4_outside: true,
        },
    )
}

fn s3_case_4(bd: &mut Builder) -> Result<()> {
    s3_case(
        bd,
        S3Case {
            n1: &["a1", "a2", "a4", "b1", "b2", "b3"],
            n2: &["a4", "b1", "b2", "b3"],
            order: 486,
            split: false,
            name: None,
            b4_outside: true,
        },
    )
}

fn s3_case_5(bd: &mut Builder) -> Result<()> {
    s3_case(
        bd,
        S3Case {
            n1: &["a1", "a2", "a4", "b1", "b2", "b4"],
            n2: &["a4", "b4"],
            order: 4374,
            split: true,
            name: Some("Z3^6 : S3"),
            b4_outside: false,
        },
    )
}
