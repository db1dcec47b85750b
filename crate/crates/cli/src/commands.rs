//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use homolift_core::action::{EnumerationConstraints, EnumerationPlan};
use homolift_core::extension::{
    abelian_name, build_ext_group, element_order, galois_closure_pipeline, identify_ext, split_test, ExtElement,
    ExtGroup, GroupOps, SplitVerdict,
};
use homolift_core::lift::{cyclic_lift_solve_modulo, cyclic_split_verdict, verify_lift, CyclicLiftProblem, LiftOutcome};
use homolift_core::surfaces::{format_subgroup, run_scenario, scenario_catalog};
use homolift_core::word::Word;
use homolift_core::zkmod::SubgroupBasis;

use crate::{Cli, CliError, Command, FileArgs, ProblemFile, Report};

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let budget = cli.budget;
    match &cli.command {
        Command::Scenario { name, list } => scenario(name.as_deref(), *list),
        Command::SolveLift(a) => load(a, "solve-lift").and_then(|(p, args)| solve_lift(&p, &args)),
        Command::Core(a) => load(a, "core").and_then(|(p, args)| core(&p, &args)),
        Command::Closure(a) => load(a, "closure").and_then(|(p, args)| closure(&p, &args, budget)),
        Command::Enumerate(a) => load(a, "enumerate").and_then(|(p, args)| enumerate(&p, &args, budget, cli.workers)),
        Command::Identify(a) => load(a, "identify").and_then(|(p, args)| identify(&p, &args, budget)),
        Command::Check(a) => load(a, "check").and_then(|(p, _)| check(&p, budget)),
    }
}

pub fn read_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    crate::parse_problem(&text)
}

/// Command-line arguments win; otherwise the file's `task` line is used when
/// it names the same command.
fn load(a: &FileArgs, kind: &str) -> Result<(ProblemFile, Vec<String>), CliError> {
    let p = read_problem(&a.file)?;
    let args = if !a.args.is_empty() {
        a.args.clone()
    } else {
        p.task.as_ref().filter(|t| t.kind == kind).map(|t| t.args.clone()).unwrap_or_default()
    };
    Ok((p, args))
}

fn one_arg<'a>(args: &'a [String], what: &str) -> Result<&'a str, CliError> {
    match args {
        [a] => Ok(a),
        _ => Err(CliError::Validation(format!("expected one argument: {what}"))),
    }
}

fn vector(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn basis(s: &SubgroupBasis) -> String {
    let rows: Vec<String> = s.rows().iter().map(|r| vector(r)).collect();
    format!("<{}>", rows.join(";"))
}

/// Symbolic `a_i, b_i` form when the rank is even, else the rows.
fn pretty(p: &ProblemFile, s: &SubgroupBasis) -> String {
    if p.rank % 2 == 0 {
        format_subgroup(s, p.rank / 2)
    } else {
        basis(s)
    }
}

fn group_budget(budget: u128, order: u128) -> Result<usize, CliError> {
    if order > budget {
        return Err(homolift_core::Error::BudgetExceeded { candidates: order }.into());
    }
    Ok(budget.min(usize::MAX as u128) as usize)
}

fn quotient_order(p: &ProblemFile, n: &SubgroupBasis) -> Result<u128, CliError> {
    let inv = n.quotient_invariants()?;
    let q = inv.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128));
    q.and_then(|q| q.checked_mul(p.spec.group().len() as u128))
        .ok_or(CliError::Core(homolift_core::Error::Overflow))
}

fn element(g: &ExtGroup, p: &ProblemFile, e: &ExtElement) -> String {
    let names: Vec<&str> = p.gens.iter().map(|(n, _)| n.as_str()).collect();
    format!("({}|{})", vector(&e.v), g.base().word(e.l).display(&names))
}

fn scenario(name: Option<&str>, list: bool) -> Result<Report, CliError> {
    let mut r = Report::default();
    match (name, list) {
        (None, true) => {
            for info in scenario_catalog() {
                r.line(format!("{:<22} {}", info.name, info.description));
                r.fact("scenario", info.name);
            }
        }
        (Some(name), false) => {
            let s = run_scenario(name)?;
            r.line(format!("{}: {}", s.name, s.description));
            r.lines.extend(s.lines);
            r.fact("scenario", s.name);
            r.facts.extend(s.facts);
            r.checks = s.checks;
        }
        _ => return Err(CliError::Validation("give a scenario name or --list".into())),
    }
    Ok(r)
}

/// The relator `g^l` for the generator's order `l` supplies `m0`.
fn lift_problem(p: &ProblemFile, gen: &str) -> Result<CyclicLiftProblem, CliError> {
    let j = p.generator(gen)?;
    let group = p.spec.group();
    let l = element_order(group, group.generator_element(j));
    let target = Word::generator(j).pow(l as i64);
    let relator = p
        .relators
        .iter()
        .find(|r| r.word.freely_reduced() == target)
        .ok_or_else(|| CliError::Validation(format!("no relator `{gen}^{l}` gives the defect of `{gen}`")))?;
    Ok(CyclicLiftProblem::new(p.action().matrix(j).clone(), l, relator.defect.clone())?)
}

fn solve_lift(p: &ProblemFile, args: &[String]) -> Result<Report, CliError> {
    let (gen, modulo) = match args {
        [g] => (g.as_str(), None),
        [g, m, n] if m == "modulo" => (g.as_str(), Some(p.subgroup(n)?)),
        _ => return Err(CliError::Validation("expected `GEN [modulo SUBGROUP]`".into())),
    };
    let lp = lift_problem(p, gen)?;
    let mut r = Report::default();
    r.line(format!("generator {gen} has order {} in L; m0 = {}", lp.order(), vector(lp.defect().coords())));
    r.fact("generator", gen);
    r.fact("order", lp.order());
    r.fact("defect", vector(lp.defect().coords()));
    let trivial = SubgroupBasis::trivial(p.modulus, p.rank);
    let (outcome, n) = match modulo {
        Some(n) => {
            r.line(format!("working modulo {}", pretty(p, n)));
            r.fact("modulo", basis(n));
            (cyclic_lift_solve_modulo(&lp, n)?, n)
        }
        None => {
            let report = cyclic_split_verdict(&lp, false)?;
            if let Some(c) = report.coprime_path {
                r.line(format!("gcd(order, k) = 1, so a lift must exist: {c}"));
            }
            (report.outcome, &trivial)
        }
    };
    match &outcome {
        LiftOutcome::Lift(alpha) => {
            r.line(format!("lift found: alpha = {} solves the norm equation", vector(alpha.coords())));
            r.fact("verdict", "split");
            r.fact("witness", vector(alpha.coords()));
            r.check("witness lift has the generator's order", verify_lift(&lp, alpha, n)?);
        }
        LiftOutcome::Obstructed(c) => {
            r.line("no lift: -m0 is not in the image of the norm map");
            r.fact("verdict", "obstructed");
            r.fact("residual", vector(c.residual.coords()));
            if let Some(f) = &c.functional {
                r.fact("functional", vector(f.coords()));
                let on_defect = f.dot(lp.defect())?;
                r.check("certificate functional is nonzero on m0", on_defect != 0);
            }
        }
    }
    Ok(r)
}

fn core(p: &ProblemFile, args: &[String]) -> Result<Report, CliError> {
    let name = one_arg(args, "SUBGROUP")?;
    let n1 = p.subgroup(name)?;
    let act = p.action();
    let n2 = act.core(n1)?;
    let mut r = Report::default();
    r.line(format!("{name} = {}", pretty(p, n1)));
    r.line(format!("core = {}", pretty(p, &n2)));
    r.fact("subgroup", basis(n1));
    r.fact("invariant", act.is_invariant(n1)?);
    r.fact("core", basis(&n2));
    r.fact("invariants", abelian_name(&n2.quotient_invariants()?));
    r.check("core is invariant and lies in the subgroup", act.is_invariant(&n2)? && n2.is_subgroup_of(n1)?);
    Ok(r)
}

fn closure(p: &ProblemFile, args: &[String], budget: u128) -> Result<Report, CliError> {
    let name = one_arg(args, "SUBGROUP")?;
    let n1 = p.subgroup(name)?;
    let n2 = p.action().core(n1)?;
    let b = group_budget(budget, quotient_order(p, &n2)?)?;
    let c = galois_closure_pipeline(&p.spec, n1, b)?;
    let mut r = Report::default();
    r.line(format!("N1 = {}", pretty(p, &c.n1)));
    r.line(format!("N2 = {}", pretty(p, &c.n2)));
    r.line(format!(
        "M/N1 = {}, N1/N2 = {}, K = M/N2 = {}",
        abelian_name(&c.a_hat),
        abelian_name(&c.u_group),
        abelian_name(&c.k_group)
    ));
    let name = c.identification.name.clone().unwrap_or_else(|| "unrecognized".into());
    r.line(format!("closure group: {name}, {}", c.identification.fingerprint));
    r.fact("n1", basis(&c.n1));
    r.fact("n2", basis(&c.n2));
    r.fact("a_hat", abelian_name(&c.a_hat));
    r.fact("u", abelian_name(&c.u_group));
    r.fact("invariants", abelian_name(&c.k_group));
    r.fact("order", c.group.len());
    r.fact("name", name);
    r.fact("fingerprint", &c.identification.fingerprint);
    match &c.verdict {
        SplitVerdict::Split(images) => {
            r.fact("verdict", "split");
            let shown: Vec<String> = images.iter().map(|e| element(&c.group, p, e)).collect();
            r.fact("complement", shown.join(" "));
        }
        SplitVerdict::NonSplit => r.fact("verdict", "non-split"),
    }
    r.fact("split_guaranteed", c.split_guaranteed);
    let k: u128 = c.k_group.iter().map(|&d| d as u128).product();
    r.check("|G| = |L| |K|", c.group.len() as u128 == k * p.spec.group().len() as u128);
    Ok(r)
}

fn enumerate(p: &ProblemFile, args: &[String], budget: u128, workers: usize) -> Result<Report, CliError> {
    let mut constraints = EnumerationConstraints::default();
    let mut marks = Vec::new();
    for a in args {
        let (key, value) = a.split_once('=').ok_or_else(|| CliError::Validation(format!("bad argument `{a}`")))?;
        match key {
            "quotient" => {
                let q = value
                    .split(',')
                    .map(|d| d.parse::<u64>().map_err(|_| CliError::Validation(format!("bad quotient `{value}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                constraints.quotient = Some(q);
            }
            "contains" => constraints.contains.extend(p.subgroup(value)?.generators()),
            "excludes" => constraints.excludes.extend(p.subgroup(value)?.generators()),
            "mark" => marks.push((value.to_string(), p.subgroup(value)?.clone())),
            _ => return Err(CliError::Validation(format!("unknown enumerate option `{key}`"))),
        }
    }
    let plan = EnumerationPlan::new(p.action(), constraints, budget)?;
    let total = plan.candidate_count();
    let workers = workers.max(1) as u128;
    let chunk = total.div_ceil(workers).max(1);
    let chunks = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let plan = &plan;
                s.spawn(move || plan.run_range(w * chunk, ((w + 1) * chunk).min(total)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration worker panicked")).collect::<Result<Vec<_>, _>>()
    })?;
    let found = EnumerationPlan::merge(chunks);
    let mut r = Report::default();
    r.line(format!("{} invariant subgroups from {total} candidates", found.len()));
    r.fact("candidates", total);
    r.fact("count", found.len());
    for (name, m) in &marks {
        let hits = found.iter().map(|s| m.is_subgroup_of(s)).collect::<Result<Vec<_>, _>>()?;
        r.fact(format!("containing_{name}"), hits.iter().filter(|&&h| h).count());
    }
    for (i, s) in found.iter().enumerate() {
        r.line(format!("  {}", pretty(p, s)));
        r.fact(format!("subgroup.{i}"), basis(s));
    }
    Ok(r)
}

fn identify(p: &ProblemFile, args: &[String], budget: u128) -> Result<Report, CliError> {
    let n = match args {
        [] => SubgroupBasis::trivial(p.modulus, p.rank),
        [name] => p.subgroup(name)?.clone(),
        _ => return Err(CliError::Validation("expected at most one subgroup".into())),
    };
    let b = group_budget(budget, quotient_order(p, &n)?)?;
    let g = build_ext_group(&p.spec, &n)?;
    let id = identify_ext(&g, b)?;
    let name = id.name.clone().unwrap_or_else(|| "unrecognized".into());
    let mut r = Report::default();
    r.line(format!("extension modulo {}: {name}", pretty(p, &n)));
    r.line(id.fingerprint.to_string());
    r.fact("order", g.len());
    r.fact("invariants", abelian_name(g.quotient().moduli()));
    r.fact("name", name);
    r.fact("fingerprint", &id.fingerprint);
    r.fact("verdict", if id.fingerprint.split == Some(true) { "split" } else { "non-split" });
    Ok(r)
}

/// Group axioms on every element for small groups, on a deterministic
/// sample of triples otherwise.
fn axioms_hold(g: &ExtGroup) -> bool {
    let n = g.order();
    let e = g.identity();
    if !(0..n).all(|a| g.mul(a, e) == a && g.mul(e, a) == a && g.mul(a, g.inv(a)) == e) {
        return false;
    }
    let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= 32 {
        Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
    } else {
        Box::new((0..4096usize).map(move |i| ((i * 7919) % n, (i * 104_729 + 1) % n, (i * 1_299_709 + 2) % n)))
    };
    triples.into_iter().all(|(a, b, c)| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))
}

fn check(p: &ProblemFile, budget: u128) -> Result<Report, CliError> {
    let mut r = Report::default();
    let act = p.action();
    let group = p.spec.group();
    r.line(format!("L has order {} acting on Z_{}^{}", group.len(), p.modulus.value(), p.rank));
    r.fact("order", group.len());
    r.check("relators present L and the action factors through it", true);

    for (j, (gen, _)) in p.gens.iter().enumerate() {
        let l = element_order(group, group.generator_element(j));
        let target = Word::generator(j).pow(l as i64);
        if !p.relators.iter().any(|rel| rel.word.freely_reduced() == target) {
            continue;
        }
        let lp = lift_problem(p, gen)?;
        match cyclic_split_verdict(&lp, false) {
            Ok(v) => {
                r.fact(format!("lift.{gen}"), if v.split { "split" } else { "obstructed" });
                r.check(format!("lift verdicts for {gen} agree"), true);
            }
            Err(homolift_core::Error::InconsistentVerdicts(why)) => {
                r.check(format!("lift verdicts for {gen} agree ({why})"), false)
            }
            Err(e) => return Err(e.into()),
        }
    }

    for (name, s) in &p.subgroups {
        let canonical = SubgroupBasis::from_generators(p.modulus, p.rank, &s.generators())? == *s;
        r.check(format!("{name}: canonical form is stable"), canonical);
        let core = act.core(s)?;
        let closure = act.minimal_invariant_subgroup(&s.generators())?;
        let invariant = act.is_invariant(s)?;
        r.fact(format!("{name}.invariant"), invariant);
        r.fact(format!("{name}.core"), basis(&core));
        r.fact(format!("{name}.closure"), basis(&closure));
        r.check(
            format!("{name}: core <= subgroup <= closure, both invariant"),
            core.is_subgroup_of(s)? && s.is_subgroup_of(&closure)? && act.is_invariant(&core)? && act.is_invariant(&closure)?,
        );
        r.check(format!("{name}: invariant iff core and closure equal it"), invariant == (core == *s && closure == *s));

        if !invariant || !p.modulus.is_finite() || quotient_order(p, s)? > budget.min(100_000) {
            continue;
        }
        let g = build_ext_group(&p.spec, s)?;
        r.check(format!("{name}: L~/{name} satisfies the group axioms"), axioms_hold(&g));
        if p.gens.len() == 1 {
            if let Ok(lp) = lift_problem(p, &p.gens[0].0) {
                let by_norm = cyclic_lift_solve_modulo(&lp, s)?.witness().is_some();
                let by_search = split_test(&g, budget)?.is_some();
                r.check(format!("{name}: complement search agrees with the norm equation"), by_norm == by_search);
            }
        }
    }
    Ok(r)
}
