//! Extension groups: exhaustive group axioms, relator re-evaluation, the
//! complement search against the norm equation, and fingerprint invariance
//! under changes of presentation.

use std::collections::BTreeSet;

use homolift_core::action::Action;
use homolift_core::extension::{
    build_ext_group, fingerprint, realize_group, split_test, ExtGroup, ExtensionSpec, GroupOps, DEFAULT_GROUP_BOUND,
};
use homolift_core::lift::{cyclic_lift_solve_modulo, CyclicLiftProblem};
use homolift_core::surfaces::{free_cyclic_action, involution_action, order3_action, s3_action, StandardAction};
use homolift_core::word::Word;
use homolift_core::zkmod::{ModuleVector, SubgroupBasis};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::catch;

/// Invariant subgroups with `|M/N| ≤ max_index`, as closures of seeded
/// random vectors; at most `count` distinct ones.
fn quotients(act: &StandardAction, max_index: u128, count: usize, seed: u64) -> Vec<SubgroupBasis> {
    let mut rng = StdRng::seed_from_u64(seed);
    let k = act.modulus().value() as i64;
    let rank = 2 * act.genus;
    let mut out = BTreeSet::new();
    for _ in 0..400 {
        let gens: Vec<ModuleVector> = (0..rng.gen_range(1..=3))
            .map(|_| ModuleVector::new(act.modulus(), (0..rank).map(|_| rng.gen_range(0..k)).collect()))
            .collect();
        let n = act.action.minimal_invariant_subgroup(&gens).unwrap();
        let index: u128 = n.quotient_invariants().unwrap().iter().map(|&d| d as u128).product();
        if index > 1 && index <= max_index {
            out.insert(n);
        }
        if out.len() >= count {
            break;
        }
    }
    out.into_iter().collect()
}

fn small_extensions() -> Vec<(String, ExtGroup)> {
    let families: Vec<(&str, StandardAction)> = vec![
        ("s3 k=2", s3_action(5, 2).unwrap()),
        ("s3 k=3", s3_action(5, 3).unwrap()),
        ("free m=2 k=2", free_cyclic_action(2, 1, 2).unwrap()),
        ("free m=2 k=4", free_cyclic_action(2, 1, 4).unwrap()),
        ("involution k=3", involution_action(1, 2, 3).unwrap()),
        ("order3 k=2", order3_action(0, 4, 1, 2).unwrap()),
    ];
    let mut out = Vec::new();
    for (seed, (name, act)) in families.into_iter().enumerate() {
        let spec = act.spec().unwrap();
        let l = act.group.len() as u128;
        for n in quotients(&act, 64 / l, 6, seed as u64) {
            let g = build_ext_group(&spec, &n).unwrap();
            if g.len() <= 64 {
                out.push((format!("{name} |G|={}", g.len()), g));
            }
        }
    }
    out
}

/// Group axioms, projection, module embedding and relator defects, exhaustively for |G| ≤ 64.
pub fn group_axioms_exhaustive() -> Result<(), String> {
    catch(|| {
        let exts = small_extensions();
        assert!(exts.len() >= 15, "only {} small extensions", exts.len());
        for (name, g) in &exts {
            let n = g.len();
            let els: Vec<_> = (0..n).map(|i| g.element(i)).collect();
            let id = g.identity_element();
            for (i, x) in els.iter().enumerate() {
                assert_eq!(g.index(x), i, "{name}: index round trip");
                assert_eq!(g.multiply(&id, x), *x, "{name}: left identity");
                assert_eq!(g.multiply(x, &id), *x, "{name}: right identity");
                assert_eq!(g.multiply(x, &g.inverse(x)), id, "{name}: inverse");
                for y in &els {
                    let xy = g.multiply(x, y);
                    // Projection to L is a homomorphism.
                    assert_eq!(xy.l, g.base().mul(x.l, y.l), "{name}: projection");
                    for z in &els {
                        assert_eq!(g.multiply(&xy, z), g.multiply(x, &g.multiply(y, z)), "{name}: associativity");
                    }
                }
            }
            // The module embeds as a normal subgroup with the induced action.
            let spec = g.spec();
            let rank = spec.rank();
            let q = g.quotient();
            for j in 0..g.base().generator_count() {
                let psi = g.generator_lift(j);
                for i in g.module_indices() {
                    let m = q.lift(&g.element(i).v).unwrap();
                    let conj = g.multiply(&g.multiply(&psi, &g.module_element(&m).unwrap()), &g.inverse(&psi));
                    let image = spec.action().matrix(j).apply(&m).unwrap();
                    assert_eq!(conj, g.module_element(&image).unwrap(), "{name}: conjugation is A_j");
                }
            }
            for i in g.module_indices() {
                for i2 in g.module_indices() {
                    let a = q.lift(&g.element(i).v).unwrap();
                    let b = q.lift(&g.element(i2).v).unwrap();
                    assert_eq!(
                        g.module_element(&a.add(&b).unwrap()).unwrap(),
                        g.multiply(&g.module_element(&a).unwrap(), &g.module_element(&b).unwrap()),
                        "{name}: module embedding"
                    );
                }
            }
            // Relators evaluated on the generator lifts give back the defects.
            let lifts: Vec<_> = (0..g.base().generator_count()).map(|j| g.generator_lift(j)).collect();
            for (r, d) in g.base().relators().iter().zip(spec.defects()) {
                assert_eq!(g.eval_word(r, &lifts), g.module_element(d).unwrap(), "{name}: relator defect");
            }
            assert_eq!(g.order(), n);
            assert_eq!(rank, spec.action().rank());
        }
    })
}

fn cyclic_families() -> Vec<(String, StandardAction, u64)> {
    let mut out = Vec::new();
    for (m, k) in [(2usize, 2u64), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (2, 6)] {
        out.push((format!("free m={m} k={k}"), free_cyclic_action(m, 1, k).unwrap(), m as u64));
    }
    for (gamma, n, k) in [(1usize, 2usize, 2u64), (0, 3, 3), (0, 3, 4), (2, 1, 2)] {
        out.push((format!("involution ({gamma},{n}) k={k}"), involution_action(gamma, n, k).unwrap(), 2));
    }
    for (gamma, n, l, k) in [(0usize, 4usize, 1usize, 2u64), (0, 4, 1, 3), (0, 4, 0, 3), (1, 5, 1, 2), (1, 5, 2, 3)] {
        out.push((format!("order3 ({gamma},{n},{l}) k={k}"), order3_action(gamma, n, l, k).unwrap(), 3));
    }
    out
}

/// `split_test` against the norm equation on every cyclic family, modulo sampled invariant subgroups.
pub fn complement_search_agrees_with_norm_equation() -> Result<(), String> {
    catch(|| {
        let mut compared = 0;
        for (name, act, order) in cyclic_families() {
            let spec = act.spec().unwrap();
            let k = act.modulus().value();
            let rank = 2 * act.genus;
            let mut subgroups = vec![];
            if (k as u128).pow(rank as u32) <= 5_000 {
                subgroups.push(SubgroupBasis::trivial(act.modulus(), rank));
            }
            subgroups.extend(quotients(&act, 2_000, 8, k * 101 + order));
            let p = CyclicLiftProblem::new(act.action.matrix(0).clone(), order, act.defects[0].clone()).unwrap();
            for n in subgroups {
                let g = build_ext_group(&spec, &n).unwrap();
                let searched = split_test(&g, 10_000_000).unwrap().is_some();
                let solved = cyclic_lift_solve_modulo(&p, &n).unwrap().witness().is_some();
                assert_eq!(searched, solved, "{name}, N = {:?}", n.rows());
                compared += 1;
            }
        }
        assert!(compared >= 60, "only {compared} comparisons");
    })
}

/// The S3 action presented as `⟨h, r | h^2, r^3, (h*r)^2⟩`: generators
/// swapped and a conjugate relator, so a different spanning tree and a
/// different edge-defect solution.
fn swapped_s3(act: &StandardAction) -> ExtensionSpec {
    let perms = act.group.generator_perms();
    let names = vec!["h".to_string(), "r".to_string()];
    let rels = ["h^2", "r^3", "(h*r)^2"].iter().map(|s| Word::parse(s, &names).unwrap()).collect();
    let group = realize_group(names, vec![perms[1].clone(), perms[0].clone()], rels, DEFAULT_GROUP_BOUND).unwrap();
    let mats = vec![("h".to_string(), act.action.matrix(1).clone()), ("r".to_string(), act.action.matrix(0).clone())];
    let action = Action::new(act.modulus(), 2 * act.genus, mats).unwrap();
    let d = &act.defects;
    ExtensionSpec::new(group, action, vec![d[1].clone(), d[0].clone(), d[2].clone()]).unwrap()
}

/// Swapping generators and conjugating a relator changes the spanning tree and the edge-defect solution but not the fingerprint.
pub fn fingerprints_do_not_depend_on_the_presentation() -> Result<(), String> {
    catch(|| {
        let cases: [(u64, &[&str]); 5] = [
            (3, &["a1*a2*a3", "a4", "b1", "b2", "b3", "b4"]),
            (3, &["a1", "a2", "a3", "b1", "b2", "b3"]),
            (3, &["a4", "b1", "b2", "b3"]),
            (2, &["a1*a2*a3", "a4", "b1", "b2", "b3", "b4"]),
            (2, &["a1", "a2", "a3", "a4", "b1", "b2", "b3"]),
        ];
        for (k, gens) in cases {
            let act = s3_action(5, k).unwrap();
            let n = act.subgroup(gens).unwrap();
            let original = build_ext_group(&act.spec().unwrap(), &n).unwrap();
            let swapped = build_ext_group(&swapped_s3(&act), &n).unwrap();
            let f1 = fingerprint(&original, 100_000).unwrap();
            let f2 = fingerprint(&swapped, 100_000).unwrap();
            assert_eq!(f1, f2, "k={k} N={gens:?}");
            assert_eq!(
                split_test(&original, 10_000_000).unwrap().is_some(),
                split_test(&swapped, 10_000_000).unwrap().is_some(),
                "k={k} N={gens:?}"
            );
        }
    })
}

/// The generator lifts and module units generate the whole group.
pub fn ext_group_generators_generate() -> Result<(), String> {
    catch(|| {
        for (name, g) in small_extensions() {
            let gens = GroupOps::generators(&g);
            assert_eq!(homolift_core::extension::closure(&g, &gens).len(), g.len(), "{name}");
        }
    })
}
