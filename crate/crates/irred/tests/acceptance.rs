//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Every comparison is exact; the reference values come from
//! the brute-force oracles in `common` or from directed regressions.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;
use irred::cnf::{Formula, Var};
use irred::conditional::{
    is_clause_cond_redundant, is_formula_cond_redundant, max_consistent_subsets, max_consistent_subsets_by_subsets,
    revise,
};
use irred::gadgets::{
    cond_clause_gadget, cond_set_gadget, exponential_family, random_cnf, sat_gadget, size_gadget, usefulness_gadget,
    var_gadget,
};
use irred::redundancy::{
    classify_clauses, enumerate_ies, has_ies_of_size, has_unique_ies, is_clause_redundant, is_clause_useful,
    is_formula_redundant, two_ies_witness, ClauseStatus, DEFAULT_IES_CAP,
};
use irred::rng::SplitMix64;
use irred::solver::{eval_exists_forall, solve, QbfInstance};
use irred::var_redundancy::{forget, is_clause_var_redundant, var_equivalent};

fn pass(number: u32, name: &str, started: Instant) {
    println!("acceptance {number:02} [{name}]: PASS ({:.2?})", started.elapsed());
}

fn example1() -> Formula {
    Formula::from_ints(&[&[1, -2], &[-1, 2], &[1, 3], &[2, 3]])
}

fn vars(list: &[u32]) -> BTreeSet<Var> {
    list.iter().map(|&i| Var::new(i)).collect()
}

/// Criterion 1: clause and formula redundancy agree exactly with the
/// model-enumeration oracle on 500 seeded random formulas.
#[test]
fn acceptance_01_redundancy_matches_the_enumeration_oracle() {
    let started = Instant::now();
    let formulas = corpus(0x5EED_0001, 500, 4, 6, 3);
    assert_eq!(formulas.len(), 500);
    for pi in &formulas {
        for id in pi.ids() {
            assert_eq!(
                is_clause_redundant(pi, id).unwrap(),
                clause_redundant_bf(pi, id),
                "formula: {pi:?}, id: {id}"
            );
        }
        assert_eq!(is_formula_redundant(pi), formula_redundant_bf(pi), "formula: {pi:?}");
    }
    pass(1, "redundancy vs model-enumeration oracle", started);
}

/// Criterion 2: necessary ⇔ in every enumerated IES and useless ⇔ in none,
/// on the same corpus, against the exhaustive subset oracle.
#[test]
fn acceptance_02_classification_matches_ies_membership() {
    let started = Instant::now();
    for pi in corpus(0x5EED_0001, 500, 4, 6, 3) {
        let oracle = ies_list_bf(&pi);
        let report = classify_clauses(&pi);
        for id in pi.ids() {
            let in_all = oracle.iter().all(|s| s.contains(&id));
            let in_none = oracle.iter().all(|s| !s.contains(&id));
            assert_eq!(report.statuses[id.0] == ClauseStatus::Necessary, in_all, "formula: {pi:?}, id: {id}");
            assert_eq!(report.statuses[id.0] == ClauseStatus::Useless, in_none, "formula: {pi:?}, id: {id}");
        }
    }
    pass(2, "necessity and uselessness vs enumerated IESs", started);
}

/// Criterion 3: the uniqueness test agrees with an IES count of one.
#[test]
fn acceptance_03_uniqueness_matches_ies_count() {
    let started = Instant::now();
    for pi in corpus(0x5EED_0001, 500, 4, 6, 3) {
        let report = enumerate_ies(&pi, DEFAULT_IES_CAP);
        assert!(!report.truncated);
        assert_eq!(has_unique_ies(&pi), report.ies.len() == 1, "formula: {pi:?}");
    }
    pass(3, "uniqueness vs enumerated IES count", started);
}

/// Criterion 4: a pairwise removability witness implies at least two IESs,
/// and the 5-formula set (7 clauses) has three IESs but no witness.
#[test]
fn acceptance_04_pairwise_witness_is_sound_but_incomplete() {
    let started = Instant::now();
    for pi in corpus(0x5EED_0004, 500, 4, 6, 3) {
        if two_ies_witness(&pi).is_some() {
            assert!(enumerate_ies(&pi, DEFAULT_IES_CAP).ies.len() >= 2, "formula: {pi:?}");
        }
    }
    // a ≡ b, a ≡ c, a ∨ d, b ∨ d, c ∨ d
    let pi = Formula::from_ints(&[&[-1, 2], &[1, -2], &[-1, 3], &[1, -3], &[1, 4], &[2, 4], &[3, 4]]);
    assert_eq!(two_ies_witness(&pi), None);
    assert_eq!(enumerate_ies(&pi, DEFAULT_IES_CAP).ies.len(), 3);
    pass(4, "pairwise witness soundness and one-sidedness", started);
}

/// Criterion 5: directed regressions — the 4-clause example has exactly its
/// two IESs, the unique-IES set keeps its first two clauses, and the family
/// of n disjoint copies has 2^n IESs.
#[test]
fn acceptance_05_directed_ies_regressions() {
    let started = Instant::now();
    let report = enumerate_ies(&example1(), DEFAULT_IES_CAP);
    let expected: Vec<BTreeSet<irred::ClauseId>> = vec![
        [irred::ClauseId(0), irred::ClauseId(1), irred::ClauseId(2)].into(),
        [irred::ClauseId(0), irred::ClauseId(1), irred::ClauseId(3)].into(),
    ];
    assert_eq!(report.ies, expected);

    let triple = Formula::from_ints(&[&[1, 2], &[1, -2], &[1, 3]]);
    assert!(has_unique_ies(&triple));
    let report = enumerate_ies(&triple, DEFAULT_IES_CAP);
    assert_eq!(report.ies, vec![[irred::ClauseId(0), irred::ClauseId(1)].into()] as Vec<BTreeSet<_>>);

    for n in 1..=3usize {
        let family = exponential_family(n);
        let report = enumerate_ies(&family, DEFAULT_IES_CAP);
        assert!(!report.truncated);
        assert_eq!(report.ies.len(), 1 << n, "copies: {n}");
    }
    pass(5, "directed IES regressions", started);
}

/// Criterion 6: over 200 random bases, the guarded construction's appended
/// clause is redundant exactly when the base is unsatisfiable, and every
/// guarded clause stays irredundant.
#[test]
fn acceptance_06_sat_gadget_iff() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x5EED_0006);
    for _ in 0..200 {
        let n_vars = 1 + rng.below(4) as u32;
        let n_clauses = 1 + rng.below(5) as usize;
        let base = random_cnf(&mut rng, n_vars, n_clauses, 3);
        let out = sat_gadget(&base);
        let &wide = out.distinguished.iter().next().unwrap();
        assert_eq!(
            is_clause_redundant(&out.formula, wide).unwrap(),
            !satisfiable_bf(&base),
            "base: {base:?}"
        );
        for id in out.formula.ids().filter(|id| *id != wide) {
            assert!(!is_clause_redundant(&out.formula, id).unwrap(), "base: {base:?}, id: {id}");
        }
    }
    pass(6, "guarded-satisfiability construction iff", started);
}

/// Criterion 7: the size-bound construction has an IES of size at most k
/// exactly when the exists-forall question on the base matrix is true, for
/// every block shape (n, m) in {(1,1), (2,1), (1,2)} over at most three
/// matrix variables.
#[test]
fn acceptance_07_size_gadget_iff() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x5EED_0007);
    let mut instances = 0;
    for &(n, m) in &[(1u32, 1usize), (2, 1), (1, 2)] {
        for _ in 0..18 {
            let total_vars = n + rng.below(u64::from(3 - n + 1)) as u32;
            let matrix = loop {
                let candidate = random_cnf(&mut rng, total_vars, m, 3);
                if candidate.len() == m {
                    break candidate;
                }
            };
            let x: BTreeSet<Var> = (1..=n).map(Var::new).collect();
            let y: BTreeSet<Var> = (n + 1..=total_vars).map(Var::new).collect();
            let q = QbfInstance::new(x.clone(), y.clone(), matrix.clone()).unwrap();
            let expected = eval_exists_forall(&q).unwrap();
            assert_eq!(expected, exists_forall_bf(&x, &y, &matrix));

            let out = size_gadget(&matrix, &x, &y, false).unwrap();
            let k = out.params["k"] as usize;
            assert_eq!(has_ies_of_size(&out.formula, k), expected, "matrix: {matrix:?}, n: {n}, m: {m}");
            instances += 1;
        }
    }
    assert!(instances >= 50);
    pass(7, "size-bound construction iff", started);
}

/// Criterion 8: the usefulness construction keeps its distinguished unit in
/// some IES exactly when the exists-forall question is true.
#[test]
fn acceptance_08_usefulness_gadget_iff() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x5EED_0008);
    for _ in 0..36 {
        let n = 1 + rng.below(3) as u32;
        let m = 1 + rng.below(3) as usize;
        let total_vars = n + rng.below(2) as u32;
        let matrix = random_cnf(&mut rng, total_vars, m, 3);
        let x: BTreeSet<Var> = (1..=n).map(Var::new).collect();
        let y: BTreeSet<Var> = (n + 1..=total_vars).map(Var::new).collect();
        let q = QbfInstance::new(x.clone(), y.clone(), matrix.clone()).unwrap();
        let expected = eval_exists_forall(&q).unwrap();

        let out = usefulness_gadget(&matrix, &x, &y).unwrap();
        let &flag = out.distinguished.iter().next().unwrap();
        assert_eq!(is_clause_useful(&out.formula, flag).unwrap(), expected, "matrix: {matrix:?}, n: {n}");
    }
    // empty existential block with an unsatisfiable matrix: vacuously true
    let matrix = Formula::from_ints(&[&[1], &[-1]]);
    let out = usefulness_gadget(&matrix, &BTreeSet::new(), &vars(&[1])).unwrap();
    let &flag = out.distinguished.iter().next().unwrap();
    assert!(is_clause_useful(&out.formula, flag).unwrap());
    pass(8, "usefulness construction iff", started);
}

/// Criterion 9: var-redundancy — the micro examples, agreement with logical
/// equivalence at full scope, the guarded-unit construction iff, and
/// forgetting staying var-equivalent.
#[test]
fn acceptance_09_var_redundancy() {
    let started = Instant::now();

    // {x, y} with V = {x}: y is var-redundant
    let pi = Formula::from_ints(&[&[1], &[2]]);
    assert!(is_clause_var_redundant(&pi, irred::ClauseId(1), &vars(&[1])).unwrap());
    // {x ∨ y, ¬y} with V = {x}: ¬y is not
    let pi = Formula::from_ints(&[&[1, 2], &[-2]]);
    assert!(!is_clause_var_redundant(&pi, irred::ClauseId(1), &vars(&[1])).unwrap());

    let mut rng = SplitMix64::new(0x5EED_0009);
    for _ in 0..100 {
        let p1 = random_cnf(&mut rng, 4, 4, 3);
        let p2 = random_cnf(&mut rng, 4, 4, 3);
        assert_eq!(
            var_equivalent(&p1, &p2, &vars(&[1, 2, 3, 4])).unwrap(),
            irred::equivalent(&p1, &p2),
            "p1: {p1:?}, p2: {p2:?}"
        );
    }

    // guarded-unit construction: (a) var-redundant w.r.t. X iff every X
    // point extends to a model of the base
    for _ in 0..30 {
        let total_vars = 2 + rng.below(5) as u32; // |X|, |Y| ≤ 3
        let split = 1 + rng.below(u64::from(total_vars.min(3))) as u32;
        let n_clauses = 1 + rng.below(4) as usize;
        let base = random_cnf(&mut rng, total_vars, n_clauses, 3);
        let x: BTreeSet<Var> = base.vars().into_iter().filter(|v| v.index() <= split).collect();
        let y: BTreeSet<Var> = base.vars().into_iter().filter(|v| v.index() > split).collect();
        if x.len() > 3 || y.len() > 3 {
            continue;
        }
        let out = var_gadget(&base, &x).unwrap();
        let &unit = out.distinguished.iter().next().unwrap();
        let q = QbfInstance::new(x.clone(), y, base.clone()).unwrap();
        let forall_exists = !eval_exists_forall(&q).unwrap();
        assert_eq!(
            is_clause_var_redundant(&out.formula, unit, &x).unwrap(),
            forall_exists,
            "base: {base:?}, scope: {x:?}"
        );
    }

    for _ in 0..40 {
        let pi = random_cnf(&mut rng, 6, 5, 3);
        let v: BTreeSet<Var> = (1..=6).filter(|_| rng.coin()).map(Var::new).collect();
        let projected = forget(&pi, &v).unwrap();
        assert!(var_equivalent(&pi, &projected, &v).unwrap(), "pi: {pi:?}, v: {v:?}");
    }
    pass(9, "var-redundancy examples, full-scope agreement, constructions", started);
}

/// Criterion 10: conditional redundancy — the symmetric-pairs regression,
/// agreement of the two-copy encoding with the exhaustive ordering oracle,
/// and both conditional constructions.
#[test]
fn acceptance_10_conditional_redundancy() {
    let started = Instant::now();

    // the symmetric 4-clause set
    let pi = Formula::from_ints(&[&[1, 2], &[1, -2], &[1, 3], &[1, -3]]);
    let not_a = Formula::with_universe(Formula::from_ints(&[&[-1]]).clauses().to_vec(), 3);
    let outcome = revise(&pi, &not_a).unwrap();
    assert!(outcome.equivalent_to_formula(&not_a));
    let smaller = pi.without(irred::ClauseId(0));
    let outcome = revise(&smaller, &not_a).unwrap();
    let not_a_not_b = Formula::with_universe(Formula::from_ints(&[&[-1], &[-2]]).clauses().to_vec(), 3);
    assert!(outcome.equivalent_to_formula(&not_a_not_b));
    for id in pi.ids() {
        assert!(!is_clause_cond_redundant(&pi, id).unwrap());
    }
    assert!(!is_formula_cond_redundant(&pi));

    // conditional equivalence of the set and its first two clauses, over
    // every revisor semantics (every nonempty model set over the universe)
    let subset = pi.restricted_to([irred::ClauseId(0), irred::ClauseId(1)]);
    for chosen_mask in 1u64..(1 << 8) {
        let chosen: BTreeSet<u64> = (0..8).filter(|i| (chosen_mask >> i) & 1 == 1).collect();
        assert_eq!(
            revise_models_bf(&pi, 3, &chosen),
            revise_models_bf(&subset, 3, &chosen),
            "revisor models: {chosen:?}"
        );
    }

    // two-copy encoding vs the ordering oracle
    let mut rng = SplitMix64::new(0x5EED_0010);
    let mut checked = 0;
    while checked < 300 {
        let n_vars = 2 + rng.below(7) as u32; // up to 8 variables
        let n_clauses = 1 + rng.below(6) as usize;
        let pi = random_cnf(&mut rng, n_vars, n_clauses, 3);
        for id in pi.ids() {
            assert_eq!(
                is_clause_cond_redundant(&pi, id).unwrap(),
                !cond_irredundant_bf(&pi, id),
                "formula: {pi:?}, id: {id}"
            );
        }
        checked += 1;
    }

    // the two conditional constructions
    for _ in 0..40 {
        let n_vars = 1 + rng.below(4) as u32;
        let n_clauses = 1 + rng.below(4) as usize;
        let base = random_cnf(&mut rng, n_vars, n_clauses, 3);
        let satisfiable = satisfiable_bf(&base);

        let out = cond_clause_gadget(&base);
        let &unit = out.distinguished.iter().next().unwrap();
        assert_eq!(is_clause_cond_redundant(&out.formula, unit).unwrap(), !satisfiable, "base: {base:?}");

        let out = cond_set_gadget(&base).unwrap();
        let &unit = out.distinguished.iter().next().unwrap();
        assert_eq!(is_formula_cond_redundant(&out.formula), !satisfiable, "base: {base:?}");
        for id in out.formula.ids().filter(|id| *id != unit) {
            assert!(!is_clause_cond_redundant(&out.formula, id).unwrap(), "base: {base:?}, id: {id}");
        }
    }
    pass(10, "conditional redundancy regressions, oracle agreement, constructions", started);
}

/// Criterion 11: the model-based and subset-based constructions of the
/// maximal consistent family agree on 200 random pairs.
#[test]
fn acceptance_11_maximal_family_dual_construction() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0x5EED_0011);
    let mut checked = 0;
    while checked < 200 {
        let universe = 2 + rng.below(9) as u32; // up to 10 variables
        let pi_clauses = 1 + rng.below(6) as usize;
        let pi = random_cnf(&mut rng, universe, pi_clauses, 3);
        let gamma_clauses = 1 + rng.below(3) as usize;
        let gamma = random_cnf(&mut rng, universe, gamma_clauses, 3);
        if !solve(&gamma).is_sat() {
            continue;
        }
        assert_eq!(
            max_consistent_subsets(&pi, &gamma).unwrap(),
            max_consistent_subsets_by_subsets(&pi, &gamma).unwrap(),
            "pi: {pi:?}, gamma: {gamma:?}"
        );
        checked += 1;
    }
    pass(11, "maximal-family dual construction", started);
}
