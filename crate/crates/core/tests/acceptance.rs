//! Acceptance runner: one PASS/FAIL line per criterion, with wall time
//! against its limit. Exits non-zero if any criterion fails.

mod oracles;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use homolift_core::action::{enumerate_invariant_subgroups, EnumerationConstraints};
use homolift_core::extension::{
    abelian_name, build_ext_group, element_order, fingerprint, galois_closure_pipeline, recognize, split_test,
    ClosureReport, SubgroupView,
};
use homolift_core::lift::{cyclic_lift_solve, norm_matrix, CyclicLiftProblem};
use homolift_core::surfaces::{
    free_cyclic_action, order3_action, run_scenario, s3_action, StandardAction,
};

const BUDGET: usize = 1_000_000;

type Outcome = Result<String, String>;
type Suite = (&'static str, fn() -> Result<(), String>);
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn pipeline(act: &StandardAction, n1: &[&str]) -> Result<ClosureReport, String> {
    let n1 = act.subgroup(n1).map_err(err)?;
    galois_closure_pipeline(&act.spec().map_err(err)?, &n1, BUDGET).map_err(err)
}

fn name(r: &ClosureReport) -> String {
    r.identification.name.clone().unwrap_or_else(|| "?".into())
}

fn index_three_count() -> Outcome {
    let act = s3_action(5, 3).map_err(err)?;
    let c = EnumerationConstraints { quotient: Some(vec![3]), ..Default::default() };
    let found = enumerate_invariant_subgroups(&act.action, &c, 10_000_000).map_err(err)?;
    let b4 = act.element("b4").map_err(err)?;
    let with_b4 = found.iter().filter(|s| s.contains(&b4).unwrap()).count();
    let detail = format!("count={} contains_b4={with_b4}", found.len());
    ensure(found.len() == 40 && with_b4 == 13, detail.clone())?;
    Ok(detail)
}

fn a5_obstruction() -> Outcome {
    let act = free_cyclic_action(3, 4, 3).map_err(err)?;
    let m0 = act.element("a13").map_err(err)?;
    let p = CyclicLiftProblem::new(act.action.matrix(0).clone(), 3, m0.clone()).map_err(err)?;
    let outcome = cyclic_lift_solve(&p).map_err(err)?;
    ensure(outcome.witness().is_none(), "a lift was found")?;
    let lambda = outcome.certificate().and_then(|c| c.functional.clone()).ok_or("no certificate functional")?;
    let norm = norm_matrix(p.matrix(), 3).map_err(err)?;
    for j in 0..norm.ncols() {
        ensure(lambda.dot(&norm.column(j)).map_err(err)? == 0, "functional does not kill the norm image")?;
    }
    ensure(lambda.dot(&m0).map_err(err)? != 0, "functional vanishes on m0")?;
    // a13 coefficient of N(α) + m0 is 3x + 1 ≡ 1.
    let row = norm.row(12);
    ensure(row.iter().all(|&x| x == 0) && m0.coords()[12] == 1, "a13 coordinate argument fails")?;
    Ok("no order-3 lift; certificate and a13 coordinate argument agree".into())
}

fn dichotomy() -> Outcome {
    let mut parts = Vec::new();
    for k in [2u64, 4, 5, 3, 6, 9] {
        let start = Instant::now();
        let act = s3_action(5, k).map_err(err)?;
        let g = act.genus;
        let mut gens: Vec<String> = (1..=g).map(|i| format!("a{i}")).collect();
        gens.extend((1..g).map(|i| format!("b{i}")));
        let n = act.subgroup(&gens.iter().map(String::as_str).collect::<Vec<_>>()).map_err(err)?;
        let ext = build_ext_group(&act.spec().map_err(err)?, &n).map_err(err)?;
        let split = split_test(&ext, 10_000_000).map_err(err)?.is_some();
        let elapsed = start.elapsed();
        ensure(split == (k % 3 != 0), format!("k={k}: split={split}"))?;
        ensure(elapsed < Duration::from_secs(5), format!("k={k} took {elapsed:?}"))?;
        parts.push(format!("k={k}:{}", if split { "Some" } else { "None" }));
    }
    Ok(parts.join(" "))
}

fn order3_sphere() -> Outcome {
    let mut parts = Vec::new();
    for k in 2..=5u64 {
        let act = order3_action(0, 4, 1, k).map_err(err)?;
        let r = pipeline(&act, &["a1", "a3", "b1", "b2", "b3"])?;
        let expected = act.subgroup(&["a3", "b1", "b2", "b3"]).map_err(err)?;
        ensure(r.n2 == expected, format!("k={k}: N2 differs"))?;
        ensure(r.k_group == vec![k, k], format!("k={k}: K = {}", abelian_name(&r.k_group)))?;
        ensure(r.u_group == vec![k], format!("k={k}: U = {}", abelian_name(&r.u_group)))?;
        ensure(r.group.len() == 3 * (k * k) as usize && r.verdict.is_split(), format!("k={k}: G not Z_k^2 : Z3"))?;
        if k == 2 {
            ensure(name(&r) == "A4", format!("k=2: G = {}", name(&r)))?;
        }
        parts.push(format!("k={k}:{}", name(&r)));
    }
    Ok(parts.join(" "))
}

fn s4_closure() -> Outcome {
    let act = s3_action(5, 2).map_err(err)?;
    let r = pipeline(&act, &["a1", "a2*a3", "a4", "b1", "b2", "b3", "b4"])?;
    let g = &r.group;
    let idx = |s: &str| -> Result<usize, String> {
        Ok(g.index(&g.module_element(&act.element(s).map_err(err)?).map_err(err)?))
    };
    let h = SubgroupView::generated_by(g, &[idx("a1")?, idx("a2")?, g.index(&g.generator_lift(1))]);
    let h_name = recognize(&fingerprint(&h, BUDGET).map_err(err)?).unwrap_or_default();
    ensure(abelian_name(&r.k_group) == "Z2^2", "K is not Z2^2")?;
    ensure(g.len() == 24 && name(&r) == "S4", format!("G = {} of order {}", name(&r), g.len()))?;
    ensure(h_name == "D4", format!("<A1, A2, Psi_h> = {h_name}"))?;
    ensure(abelian_name(&r.a_hat) == "Z2", "A_hat is not Z2")?;
    Ok(format!("K={} G={} H={h_name} A_hat={}", abelian_name(&r.k_group), name(&r), abelian_name(&r.a_hat)))
}

fn s3_cases() -> Outcome {
    struct Case {
        n1: &'static [&'static str],
        n2: &'static [&'static str],
        order: usize,
        split: bool,
        name: Option<&'static str>,
        b4_outside: bool,
    }
    let cases = [
        Case {
            n1: &["a1*a2*a3", "a4", "b1", "b2", "b3", "b4"],
            n2: &["a1*a2*a3", "a4", "b1", "b2", "b3", "b4"],
            order: 54,
            split: true,
            name: Some("Z3^2 : S3"),
            b4_outside: false,
        },
        Case {
            n1: &["a1", "a2", "a3", "b1", "b2", "b3"],
            n2: &["a1", "a2", "a3", "b1", "b2", "b3"],
            order: 54,
            split: false,
            name: None,
            b4_outside: true,
        },
        Case {
            n1: &["a1", "a2", "a4", "b1", "b2", "b3"],
            n2: &["a4", "b1", "b2", "b3"],
            order: 486,
            split: false,
            name: None,
            b4_outside: true,
        },
        Case {
            n1: &["a1", "a2", "a4", "b1", "b2", "b4"],
            n2: &["a4", "b4"],
            order: 4374,
            split: true,
            name: Some("Z3^6 : S3"),
            b4_outside: false,
        },
    ];
    let act = s3_action(5, 3).map_err(err)?;
    let b4 = act.element("b4").map_err(err)?;
    let mut parts = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let r = pipeline(&act, c.n1)?;
        let tag = format!("case {}", i + 1);
        ensure(r.n2 == act.subgroup(c.n2).map_err(err)?, format!("{tag}: N2 differs"))?;
        let k_order: u64 = r.k_group.iter().product();
        ensure(r.group.len() == c.order && k_order as usize * 6 == c.order, format!("{tag}: |G| = {}", r.group.len()))?;
        ensure(r.verdict.is_split() == c.split, format!("{tag}: split = {}", r.verdict.is_split()))?;
        if let Some(n) = c.name {
            ensure(name(&r) == n, format!("{tag}: G = {}", name(&r)))?;
        }
        if c.b4_outside {
            ensure(!r.n1.contains(&b4).map_err(err)?, format!("{tag}: b4 in N1"))?;
        }
        parts.push(format!("|G|={} {}", r.group.len(), if r.verdict.is_split() { "split" } else { "non-split" }));
    }
    Ok(parts.join(", "))
}

fn free_involution_closure() -> Outcome {
    let act = free_cyclic_action(2, 1, 4).map_err(err)?;
    let r = pipeline(&act, &["a1", "a2", "a3", "b2", "b1*b3^2"])?;
    let g = &r.group;
    ensure(g.len() == 16, format!("|G| = {}", g.len()))?;
    ensure(abelian_name(&r.k_group) == "Z2 x Z4", "K is not Z2 x Z4")?;
    ensure(abelian_name(&r.a_hat) == "Z4", "A_hat is not Z4")?;
    ensure(abelian_name(&r.u_group) == "Z2", "U is not Z2")?;
    ensure(!r.verdict.is_split(), "split")?;
    let involutions: Vec<usize> = (0..g.len()).filter(|&x| element_order(g, x) == 2).collect();
    ensure(involutions.iter().all(|&x| g.is_in_module(x)), "an involution lies outside K")?;
    Ok(format!("|G|=16 non-split, {} involutions in K; derived type {}", involutions.len(), name(&r)))
}

fn riemann_hurwitz() -> Outcome {
    let report = run_scenario("riemann-hurwitz").map_err(err)?;
    let failed: Vec<String> = report.checks.iter().filter(|c| !c.pass).map(|c| c.text.clone()).collect();
    ensure(failed.is_empty(), failed.join("; "))?;
    let cases = report.facts.iter().find(|(k, _)| k == "grid.cases").map(|(_, v)| v.clone()).unwrap_or_default();
    Ok(format!("{cases} grid cases and spot values 13, 4, 7, 5"))
}

fn property_suites() -> Outcome {
    let suites: [Suite; 13] = [
        ("howell span invariance", oracles::zkmod::canonical_form_is_span_invariant),
        ("howell vs brute span", oracles::zkmod::form_matches_brute_span),
        ("solve vs exhaustion", oracles::zkmod::solve_matches_exhaustion),
        ("lattice laws", oracles::zkmod::lattice_laws_exhaustive),
        ("core/closure extremality", oracles::action::core_and_closure_are_extremal),
        ("enumeration vs lattice", oracles::action::enumeration_matches_subgroup_lattice),
        ("norm solver vs sweep", oracles::lift::solver_matches_exhaustive_sweep),
        ("norm linearity", oracles::lift::norm_is_linear_and_telescopes),
        ("lift power", oracles::lift::lift_power_is_norm_plus_defect),
        ("ext group axioms", oracles::extension::group_axioms_exhaustive),
        ("split vs norm", oracles::extension::complement_search_agrees_with_norm_equation),
        ("fingerprint invariance", oracles::extension::fingerprints_do_not_depend_on_the_presentation),
        ("ext group generators", oracles::extension::ext_group_generators_generate),
    ];
    for (label, suite) in suites {
        suite().map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(format!("{} suites", suites.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("index-3 invariant subgroups of the S3 genus-4 action over Z3", 10, index_three_count),
        ("A5 r-action over Z3: norm equation obstruction", 1, a5_obstruction),
        ("S3 split dichotomy in k", 30, dichotomy),
        ("order-3 genus-3 closure Z_k^2 : Z3", 5, order3_sphere),
        ("S3 closure over Z2: S4 with a D4 inside", 5, s4_closure),
        ("S3 closures over Z3: orders 54, 54, 486, 4374", 30, s3_cases),
        ("free involution over Z4: order-16 non-split closure", 5, free_involution_closure),
        ("Riemann-Hurwitz grid and spot values", 1, riemann_hurwitz),
        ("property suites against brute-force oracles", 300, property_suites),
    ];
    // Panics inside oracles are reported by `catch`, not the default hook.
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(*limit);
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d} (over the time limit)")),
            Err(e) => (false, e),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {} {}: {title} [{:.2}s / {}s] {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
