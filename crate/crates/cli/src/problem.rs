//! The line-oriented problem file.
//!
//! ```text
//! # comment
//! modulus 3
//! rank 2
//! gen t (1,2) order 2
//! action t
//! 0 1
//! 1 0
//! relator t^2 defect 0 0
//! subgroup N
//! 1 1
//! task closure N
//! ```
//!
//! Matrix rows are rows: column `i` is the image of basis vector `i`.

use std::fmt::Write as _;

use homolift_core::action::Action;
use homolift_core::extension::{realize_group, ExtensionSpec, Permutation, DEFAULT_GROUP_BOUND};
use homolift_core::word::Word;
use homolift_core::zkmod::{MatrixZk, ModuleVector, Modulus, SubgroupBasis};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub kind: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub text: String,
    pub word: Word,
    pub defect: ModuleVector,
}

/// A validated problem: the group is realized, the action factors through
/// it, and the relators present it.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub modulus: Modulus,
    pub rank: usize,
    pub gens: Vec<(String, String)>,
    pub relators: Vec<Relator>,
    pub subgroups: Vec<(String, SubgroupBasis)>,
    pub task: Option<Task>,
    pub spec: ExtensionSpec,
}

impl ProblemFile {
    pub fn action(&self) -> &Action {
        self.spec.action()
    }

    pub fn subgroup(&self, name: &str) -> Result<&SubgroupBasis, CliError> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| CliError::Validation(format!("unknown subgroup `{name}`")))
    }

    pub fn generator(&self, name: &str) -> Result<usize, CliError> {
        self.action()
            .generator_index(name)
            .ok_or_else(|| CliError::Validation(format!("unknown generator `{name}`")))
    }
}

fn parse_err(line: usize, reason: impl Into<String>) -> CliError {
    CliError::Parse { line, reason: reason.into() }
}

fn ints(line: usize, tokens: &[&str]) -> Result<Vec<i64>, CliError> {
    tokens
        .iter()
        .map(|t| t.parse::<i64>().map_err(|_| parse_err(line, format!("`{t}` is not an integer"))))
        .collect()
}

fn is_row(text: &str) -> bool {
    text.starts_with(|c: char| c.is_ascii_digit() || c == '-')
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, CliError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let mut modulus = None;
    let mut rank = None;
    let mut gens: Vec<(String, String, Permutation)> = Vec::new();
    let mut matrices: Vec<(String, MatrixZk)> = Vec::new();
    let mut relators: Vec<(usize, String, Vec<i64>)> = Vec::new();
    let mut subgroups: Vec<(String, SubgroupBasis)> = Vec::new();
    let mut task = None;

    let need = |line: usize, what: &str, v: Option<usize>| v.ok_or_else(|| parse_err(line, format!("`{what}` must come first")));

    let mut i = 0;
    while i < lines.len() {
        let (ln, l) = lines[i];
        i += 1;
        let (directive, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match directive {
            "modulus" => {
                let k = rest.parse::<u64>().map_err(|_| parse_err(ln, "modulus takes one integer"))?;
                modulus = Some(Modulus::new(k).map_err(|e| parse_err(ln, e.to_string()))?);
            }
            "rank" => {
                let n = rest.parse::<usize>().map_err(|_| parse_err(ln, "rank takes one integer"))?;
                if n == 0 {
                    return Err(parse_err(ln, "rank must be positive"));
                }
                rank = Some(n);
            }
            "gen" => {
                let (name, perm) = rest.split_once(char::is_whitespace).ok_or_else(|| parse_err(ln, "gen NAME PERM"))?;
                let (perm, declared) = match perm.split_once(" order ") {
                    Some((p, o)) => {
                        (p.trim(), Some(o.trim().parse::<usize>().map_err(|_| parse_err(ln, "bad declared order"))?))
                    }
                    None => (perm.trim(), None),
                };
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
                    return Err(parse_err(ln, format!("bad generator name `{name}`")));
                }
                if gens.iter().any(|(n, _, _)| n == name) {
                    return Err(parse_err(ln, format!("generator `{name}` defined twice")));
                }
                let cycles = Permutation::parse_cycles(perm).map_err(|e| parse_err(ln, e.to_string()))?;
                let degree = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(1);
                let p = Permutation::from_cycles(degree, &cycles).map_err(|e| parse_err(ln, e.to_string()))?;
                if let Some(o) = declared {
                    let mut q = p.clone();
                    let mut actual = 1;
                    while !q.is_identity() {
                        q = q.then(&p);
                        actual += 1;
                    }
                    if actual != o {
                        return Err(CliError::Validation(format!("generator `{name}` has order {actual}, declared {o}")));
                    }
                }
                gens.push((name.to_string(), perm.to_string(), p));
            }
            "action" => {
                let k = modulus.ok_or_else(|| parse_err(ln, "`modulus` must come first"))?;
                let n = need(ln, "rank", rank)?;
                if !gens.iter().any(|(g, _, _)| g == rest) {
                    return Err(parse_err(ln, format!("action for undeclared generator `{rest}`")));
                }
                if matrices.iter().any(|(g, _)| g == rest) {
                    return Err(parse_err(ln, format!("action for `{rest}` given twice")));
                }
                let mut rows = Vec::new();
                for _ in 0..n {
                    let &(rl, row) = lines.get(i).ok_or_else(|| parse_err(ln, format!("expected {n} matrix rows")))?;
                    if !is_row(row) {
                        return Err(parse_err(rl, format!("expected {n} matrix rows")));
                    }
                    let row = ints(rl, &row.split_whitespace().collect::<Vec<_>>())?;
                    if row.len() != n {
                        return Err(parse_err(rl, format!("row has {} entries, rank is {n}", row.len())));
                    }
                    rows.push(row);
                    i += 1;
                }
                let m = MatrixZk::new(k, rows).map_err(|e| parse_err(ln, e.to_string()))?;
                matrices.push((rest.to_string(), m));
            }
            "relator" => {
                let n = need(ln, "rank", rank)?;
                let (word, defect) =
                    rest.split_once(" defect").ok_or_else(|| parse_err(ln, "relator WORD defect V1 ... VN"))?;
                let defect = ints(ln, &defect.split_whitespace().collect::<Vec<_>>())?;
                if defect.len() != n {
                    return Err(parse_err(ln, format!("defect has {} entries, rank is {n}", defect.len())));
                }
                relators.push((ln, word.trim().to_string(), defect));
            }
            "subgroup" => {
                let k = modulus.ok_or_else(|| parse_err(ln, "`modulus` must come first"))?;
                let n = need(ln, "rank", rank)?;
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(parse_err(ln, "subgroup NAME"));
                }
                if subgroups.iter().any(|(s, _)| s == rest) {
                    return Err(parse_err(ln, format!("subgroup `{rest}` defined twice")));
                }
                let mut vecs = Vec::new();
                while let Some(&(rl, row)) = lines.get(i).filter(|(_, r)| is_row(r)) {
                    let row = ints(rl, &row.split_whitespace().collect::<Vec<_>>())?;
                    if row.len() != n {
                        return Err(parse_err(rl, format!("row has {} entries, rank is {n}", row.len())));
                    }
                    vecs.push(ModuleVector::new(k, row.into_iter().map(|x| k.reduce(x)).collect()));
                    i += 1;
                }
                let s = SubgroupBasis::from_generators(k, n, &vecs).map_err(|e| parse_err(ln, e.to_string()))?;
                subgroups.push((rest.to_string(), s));
            }
            "task" => {
                if task.is_some() {
                    return Err(parse_err(ln, "only one task per file"));
                }
                let mut t = rest.split_whitespace().map(str::to_string);
                let kind = t.next().ok_or_else(|| parse_err(ln, "task KIND ARGS"))?;
                task = Some(Task { kind, args: t.collect() });
            }
            _ if is_row(l) => return Err(parse_err(ln, "row outside an `action` or `subgroup` block")),
            other => return Err(parse_err(ln, format!("unknown directive `{other}`"))),
        }
    }

    let modulus = modulus.ok_or_else(|| CliError::Validation("missing `modulus`".into()))?;
    let rank = rank.ok_or_else(|| CliError::Validation("missing `rank`".into()))?;
    if gens.is_empty() {
        return Err(CliError::Validation("at least one generator is required".into()));
    }
    let names: Vec<String> = gens.iter().map(|(n, _, _)| n.clone()).collect();
    let mut ordered = Vec::new();
    for name in &names {
        let m = matrices
            .iter()
            .find(|(g, _)| g == name)
            .ok_or_else(|| CliError::Validation(format!("no action given for `{name}`")))?;
        ordered.push(m.clone());
    }
    let action = Action::new(modulus, rank, ordered).map_err(|e| CliError::Validation(e.to_string()))?;

    let mut parsed = Vec::new();
    for (ln, text, defect) in relators {
        let word = Word::parse(&text, &names).map_err(|e| parse_err(ln, e.to_string()))?;
        let defect = ModuleVector::new(modulus, defect.into_iter().map(|x| modulus.reduce(x)).collect());
        parsed.push(Relator { text, word, defect });
    }
    let perms = gens.iter().map(|(_, _, p)| p.clone()).collect();
    let group = realize_group(names, perms, parsed.iter().map(|r| r.word.clone()).collect(), DEFAULT_GROUP_BOUND)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let spec = ExtensionSpec::new(group, action, parsed.iter().map(|r| r.defect.clone()).collect())
        .map_err(|e| CliError::Validation(e.to_string()))?;

    Ok(ProblemFile {
        modulus,
        rank,
        gens: gens.into_iter().map(|(n, p, _)| (n, p)).collect(),
        relators: parsed,
        subgroups,
        task,
        spec,
    })
}

fn row(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

/// Text that [`parse_problem`] reads back to the same problem.
pub fn render_problem(p: &ProblemFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "modulus {}", p.modulus.value());
    let _ = writeln!(out, "rank {}", p.rank);
    for (name, perm) in &p.gens {
        let _ = writeln!(out, "gen {name} {perm}");
    }
    for (j, (name, _)) in p.gens.iter().enumerate() {
        let _ = writeln!(out, "action {name}");
        for r in p.action().matrix(j).to_rows() {
            let _ = writeln!(out, "{}", row(&r));
        }
    }
    for r in &p.relators {
        let _ = writeln!(out, "relator {} defect {}", r.text, row(r.defect.coords()));
    }
    for (name, s) in &p.subgroups {
        let _ = writeln!(out, "subgroup {name}");
        for r in s.rows() {
            let _ = writeln!(out, "{}", row(r));
        }
    }
    if let Some(t) = &p.task {
        let _ = writeln!(out, "task {} {}", t.kind, t.args.join(" "));
    }
    out
}
