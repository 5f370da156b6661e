//! Conditional (strong) redundancy: redundancy under equivalence that must
//! survive belief revision.
//!
//! Revision follows the maximal-consistent-subsets operator: `Π * Γ` is the
//! disjunction of the maximal subsets of Π consistent with Γ, and its models
//! are exactly the models of Γ whose satisfied subset of Π is maximal under
//! containment. A clause is conditionally redundant when removing it changes
//! no revision outcome, which happens exactly when no model pair satisfies
//! one clause more — and that one clause is the candidate.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cnf::{Assignment, Clause, ClauseId, Formula, Literal, UnknownClauseId, Var};
use crate::solver::{enumerate_models_capped, solve, CapExceeded, SatResult, DEFAULT_ENUM_CAP};

/// The clause ids of Π a given model satisfies.
pub type SatisfiedSubset = BTreeSet<ClauseId>;

/// Cap on the subset-based construction, which walks 2^|Π| candidates.
pub const DEFAULT_SUBSET_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RevisionError {
    #[error("the revising formula is unsatisfiable")]
    InconsistentRevisor,
    #[error(transparent)]
    CapExceeded(#[from] CapExceeded),
}

pub fn satisfied_subset(pi: &Formula, omega: &Assignment) -> SatisfiedSubset {
    pi.ids()
        .filter(|&id| pi.clause(id).expect("id from the formula").is_satisfied_by(omega))
        .collect()
}

fn joint_universe(pi: &Formula, gamma: &Formula) -> u32 {
    pi.universe().max(gamma.universe())
}

fn maximal_family(sets: BTreeSet<SatisfiedSubset>) -> Vec<SatisfiedSubset> {
    sets.iter()
        .filter(|s| !sets.iter().any(|t| *s != t && s.is_subset(t)))
        .cloned()
        .collect()
}

/// Max(Π, Γ) computed from the models of Γ: the containment-maximal
/// satisfied subsets over all models of the revisor.
pub fn max_consistent_subsets(pi: &Formula, gamma: &Formula) -> Result<Vec<SatisfiedSubset>, RevisionError> {
    max_consistent_subsets_capped(pi, gamma, DEFAULT_ENUM_CAP)
}

pub fn max_consistent_subsets_capped(
    pi: &Formula,
    gamma: &Formula,
    cap: u32,
) -> Result<Vec<SatisfiedSubset>, RevisionError> {
    let universe = joint_universe(pi, gamma);
    let models = enumerate_models_capped(gamma, universe, cap)?;
    if models.is_empty() {
        return Err(RevisionError::InconsistentRevisor);
    }
    let sets: BTreeSet<SatisfiedSubset> = models.iter().map(|m| satisfied_subset(pi, m)).collect();
    Ok(maximal_family(sets))
}

/// Max(Π, Γ) computed from its definition: the containment-maximal subsets
/// of Π whose conjunction with Γ is satisfiable. Kept alongside the
/// model-based construction so the two can be cross-checked.
pub fn max_consistent_subsets_by_subsets(pi: &Formula, gamma: &Formula) -> Result<Vec<SatisfiedSubset>, RevisionError> {
    if !solve(gamma).is_sat() {
        return Err(RevisionError::InconsistentRevisor);
    }
    let n = pi.len();
    if n > DEFAULT_SUBSET_CAP {
        return Err(CapExceeded { requested: n as u32, cap: DEFAULT_SUBSET_CAP as u32 }.into());
    }
    let ids: Vec<ClauseId> = pi.ids().collect();
    let mut consistent: BTreeSet<SatisfiedSubset> = BTreeSet::new();
    for mask in 0..(1u64 << n) {
        let subset: SatisfiedSubset = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &id)| id)
            .collect();
        if solve(&pi.restricted_to(subset.iter().copied()).conjoin(gamma)).is_sat() {
            consistent.insert(subset);
        }
    }
    Ok(maximal_family(consistent))
}

/// The outcome of `Π * Γ`: the maximal family plus the models of the
/// revision over the joint universe. The disjunction is kept structured
/// rather than flattened to CNF; equivalence tests consume the model set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionOutcome {
    pub maximal_subsets: Vec<SatisfiedSubset>,
    pub models: Vec<Assignment>,
    pub universe: u32,
}

impl RevisionOutcome {
    /// Whether the revision result has exactly the models of `f` over the
    /// outcome's universe.
    pub fn equivalent_to_formula(&self, f: &Formula) -> bool {
        match enumerate_models_capped(f, self.universe, self.universe.max(DEFAULT_ENUM_CAP)) {
            Ok(models) => models == self.models,
            Err(_) => false,
        }
    }
}

/// Revision by maximal consistent subsets. Both constructions of the
/// maximal family are computed (when the subset walk fits its cap) and must
/// agree; the models are the Γ-models with containment-maximal satisfied
/// subset.
pub fn revise(pi: &Formula, gamma: &Formula) -> Result<RevisionOutcome, RevisionError> {
    revise_capped(pi, gamma, DEFAULT_ENUM_CAP)
}

pub fn revise_capped(pi: &Formula, gamma: &Formula, cap: u32) -> Result<RevisionOutcome, RevisionError> {
    let maximal = max_consistent_subsets_capped(pi, gamma, cap)?;
    if pi.len() <= DEFAULT_SUBSET_CAP {
        let dual = max_consistent_subsets_by_subsets(pi, gamma)?;
        assert_eq!(maximal, dual, "model-based and subset-based maximal families disagree");
    }
    let universe = joint_universe(pi, gamma);
    let models = enumerate_models_capped(gamma, universe, cap)?
        .into_iter()
        .filter(|m| maximal.contains(&satisfied_subset(pi, m)))
        .collect();
    Ok(RevisionOutcome { maximal_subsets: maximal, models, universe })
}

/// Two models whose satisfied subsets differ by exactly the queried clause;
/// the certificate of conditional irredundancy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub omega: Assignment,
    pub omega_prime: Assignment,
}

/// Searches for a model pair (ω, ω′) with S_Π(ω) ∖ S_Π(ω′) = {γ}, by one
/// satisfiability call over two disjoint variable copies: γ holds in the
/// first copy, fails in the second, and every other clause transfers from
/// the first copy to the second.
pub fn cond_irredundancy_witness(pi: &Formula, id: ClauseId) -> Result<Option<WitnessPair>, UnknownClauseId> {
    let gamma = pi.clause(id)?;
    let offset = pi.universe();
    let prime = |l: Literal| Literal::new(Var::new(l.var().index() + offset), l.is_positive());

    let mut clauses: Vec<Clause> = vec![gamma.clone()];
    for &lit in gamma.literals() {
        clauses.push(Clause::unit(prime(lit).negated()));
    }
    for other in pi.ids().filter(|&o| o != id) {
        let delta = pi.clause(other).expect("id from the formula");
        if delta.is_empty() {
            continue;
        }
        let shifted: Vec<Literal> = delta.literals().iter().map(|&l| prime(l)).collect();
        for &lit in delta.literals() {
            let mut lits = shifted.clone();
            lits.push(lit.negated());
            clauses.push(Clause::new(lits).expect("the copies use disjoint variables"));
        }
    }
    let encoding = Formula::with_universe(clauses, offset * 2);
    match solve(&encoding) {
        SatResult::Unsat => Ok(None),
        SatResult::Sat(model) => {
            let omega = Assignment::new((1..=offset).map(|i| model.value(Var::new(i))).collect());
            let omega_prime = Assignment::new((1..=offset).map(|i| model.value(Var::new(i + offset))).collect());
            Ok(Some(WitnessPair { omega, omega_prime }))
        }
    }
}

/// A clause is conditionally redundant iff no witness pair exists.
pub fn is_clause_cond_redundant(pi: &Formula, id: ClauseId) -> Result<bool, UnknownClauseId> {
    Ok(cond_irredundancy_witness(pi, id)?.is_none())
}

/// A set is conditionally redundant when it contains a conditionally
/// redundant clause. This is strictly weaker than conditional equivalence
/// to a proper subset.
pub fn is_formula_cond_redundant(pi: &Formula) -> bool {
    pi.ids().any(|id| is_clause_cond_redundant(pi, id).expect("id from the formula"))
}
