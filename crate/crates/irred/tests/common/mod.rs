//! Brute-force reference implementations used to check the library.
//!
//! Everything here works by direct truth-table evaluation and exhaustive
//! subset walks, never through the solver or the entailment path under
//! test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use irred::cnf::{Assignment, Clause, ClauseId, Formula, Var};
use irred::gadgets::random_cnf;
use irred::rng::SplitMix64;

pub fn all_assignments(universe: u32) -> Vec<Assignment> {
    (0..(1u64 << universe)).map(|i| Assignment::from_index(universe, i)).collect()
}

pub fn models_over(f: &Formula, universe: u32) -> Vec<Assignment> {
    all_assignments(universe).into_iter().filter(|a| f.is_satisfied_by(a)).collect()
}

pub fn models(f: &Formula) -> Vec<Assignment> {
    models_over(f, f.universe())
}

pub fn satisfiable_bf(f: &Formula) -> bool {
    !models(f).is_empty()
}

pub fn entails_bf(pi: &Formula, clause: &Clause, universe: u32) -> bool {
    models_over(pi, universe).iter().all(|m| clause.is_satisfied_by(m))
}

pub fn equivalent_bf(p1: &Formula, p2: &Formula) -> bool {
    let universe = p1.universe().max(p2.universe());
    models_over(p1, universe) == models_over(p2, universe)
}

pub fn clause_redundant_bf(pi: &Formula, id: ClauseId) -> bool {
    entails_bf(&pi.without(id), pi.clause(id).unwrap(), pi.universe())
}

pub fn formula_redundant_bf(pi: &Formula) -> bool {
    pi.ids().any(|id| clause_redundant_bf(pi, id))
}

fn irredundant_bf(pi: &Formula) -> bool {
    !formula_redundant_bf(pi)
}

/// All IESs by walking every subset: equivalent to the whole formula (by
/// model sets) and irredundant (by per-clause model checks).
pub fn ies_list_bf(pi: &Formula) -> Vec<BTreeSet<ClauseId>> {
    let full_models = models(pi);
    let ids: Vec<ClauseId> = pi.ids().collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << ids.len()) {
        let subset: BTreeSet<ClauseId> = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &id)| id)
            .collect();
        let sub = pi.restricted_to(subset.iter().copied());
        if models_over(&sub, pi.universe()) == full_models && irredundant_bf(&sub) {
            out.push(subset);
        }
    }
    out.sort();
    out
}

/// Minimum size over all equivalent subsets, by walking every subset.
pub fn min_equiv_size_bf(pi: &Formula) -> usize {
    let full_models = models(pi);
    let ids: Vec<ClauseId> = pi.ids().collect();
    let mut best = ids.len();
    for mask in 0..(1u64 << ids.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let subset = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &id)| id);
        let sub = pi.restricted_to(subset);
        if models_over(&sub, pi.universe()) == full_models {
            best = size;
        }
    }
    best
}

/// Truth-table evaluation of `∃X ∀Y. ¬matrix`.
pub fn exists_forall_bf(x: &BTreeSet<Var>, y: &BTreeSet<Var>, matrix: &Formula) -> bool {
    let universe = matrix
        .universe()
        .max(x.iter().chain(y.iter()).map(|v| v.index()).max().unwrap_or(0));
    let xs: Vec<Var> = x.iter().copied().collect();
    let points = all_assignments(universe);
    for xmask in 0..(1u64 << xs.len()) {
        let agree = |a: &Assignment| {
            xs.iter()
                .enumerate()
                .all(|(i, &v)| a.value(v) == ((xmask >> (xs.len() - 1 - i)) & 1 == 1))
        };
        if points.iter().filter(|a| agree(a)).all(|a| !matrix.is_satisfied_by(a)) {
            return true;
        }
    }
    false
}

/// The var-models of `pi` over `v`, as projections of its full model set.
pub fn var_models_bf(pi: &Formula, v: &BTreeSet<Var>) -> BTreeSet<Vec<bool>> {
    let universe = pi.universe().max(v.iter().map(|x| x.index()).max().unwrap_or(0));
    models_over(pi, universe)
        .iter()
        .map(|m| v.iter().map(|&var| m.value(var)).collect())
        .collect()
}

pub fn var_equivalent_bf(p1: &Formula, p2: &Formula, v: &BTreeSet<Var>) -> bool {
    var_models_bf(p1, v) == var_models_bf(p2, v)
}

fn satisfied_masks(pi: &Formula, universe: u32) -> Vec<u64> {
    all_assignments(universe)
        .iter()
        .map(|a| {
            pi.clauses()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_satisfied_by(a))
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect()
}

/// Conditional irredundancy by the exhaustive ordering comparison: some
/// model pair's containment relation between satisfied subsets changes when
/// the clause is dropped.
pub fn cond_irredundant_bf(pi: &Formula, id: ClauseId) -> bool {
    let masks = satisfied_masks(pi, pi.universe());
    let bit = 1u64 << id.0;
    let rel = |a: u64, b: u64| (a & !b == 0, b & !a == 0);
    for &a in &masks {
        for &b in &masks {
            if rel(a, b) != rel(a & !bit, b & !bit) {
                return true;
            }
        }
    }
    false
}

/// Revision by an arbitrary revisor given as a model set: keeps the chosen
/// models whose satisfied subset of `pi` is containment-maximal.
pub fn revise_models_bf(pi: &Formula, universe: u32, chosen: &BTreeSet<u64>) -> BTreeSet<u64> {
    let masks = satisfied_masks(pi, universe);
    chosen
        .iter()
        .copied()
        .filter(|&a| {
            !chosen
                .iter()
                .any(|&b| masks[a as usize] != masks[b as usize] && masks[a as usize] & !masks[b as usize] == 0)
        })
        .collect()
}

/// Seeded corpus of small random formulas.
pub fn corpus(seed: u64, count: usize, max_vars: u32, max_clauses: usize, max_width: usize) -> Vec<Formula> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let vars = 1 + rng.below(max_vars as u64) as u32;
            let clauses = 1 + rng.below(max_clauses as u64) as usize;
            random_cnf(&mut rng, vars, clauses, max_width)
        })
        .collect()
}
