//! Redundancy relative to a variable subset V: var-models, var-equivalence,
//! var-redundancy of clauses and sets, and forgetting.
//!
//! Two formulas are var-equivalent w.r.t. V when they entail exactly the
//! same formulas over V. Semantically: every assignment over V extends to a
//! model of one formula exactly when it extends to a model of the other.
//! Var-redundancy is plain redundancy with var-equivalence in place of
//! logical equivalence, and it is not determined by the variables a clause
//! mentions.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cnf::{Clause, ClauseId, Formula, PartialAssignment, UnknownClauseId, Var};
use crate::redundancy::greedy_ies;
use crate::solver::{entails, solve, CapExceeded};

/// The variable subset V the queries are restricted to.
pub type VarScope = BTreeSet<Var>;

/// Default cap on 2^|V| scope enumeration.
pub const DEFAULT_SCOPE_CAP: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("assignment mentions variable {var} outside the universe of {universe} variables")]
pub struct ScopeError {
    pub var: Var,
    pub universe: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarRedundancyError {
    #[error(transparent)]
    UnknownClauseId(#[from] UnknownClauseId),
    #[error(transparent)]
    CapExceeded(#[from] CapExceeded),
}

fn consistent_with(pi: &Formula, omega: &PartialAssignment) -> bool {
    let mut clauses: Vec<Clause> = pi.clauses().to_vec();
    clauses.extend(omega.unit_literals().into_iter().map(Clause::unit));
    let universe = pi.universe().max(omega.max_var().map_or(0, Var::index));
    solve(&Formula::with_universe(clauses, universe)).is_sat()
}

/// A partial assignment is a var-model of `pi` when its literals are jointly
/// consistent with `pi`, i.e. it extends to a full model.
pub fn is_var_model(omega: &PartialAssignment, pi: &Formula) -> Result<bool, ScopeError> {
    for var in omega.scope() {
        if var.index() > pi.universe() {
            return Err(ScopeError { var, universe: pi.universe() });
        }
    }
    Ok(consistent_with(pi, omega))
}

/// Var-equivalence by enumeration of all assignments over V, two
/// satisfiability calls per point. With V covering the whole universe this
/// coincides with logical equivalence.
pub fn var_equivalent(p1: &Formula, p2: &Formula, v: &VarScope) -> Result<bool, CapExceeded> {
    var_equivalent_capped(p1, p2, v, DEFAULT_SCOPE_CAP)
}

pub fn var_equivalent_capped(p1: &Formula, p2: &Formula, v: &VarScope, cap: u32) -> Result<bool, CapExceeded> {
    let n = v.len() as u32;
    if n > cap {
        return Err(CapExceeded { requested: n, cap });
    }
    for index in 0..(1u64 << n) {
        let point = PartialAssignment::from_index(v, index);
        if consistent_with(p1, &point) != consistent_with(p2, &point) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A clause is var-redundant when removing it preserves var-equivalence
/// w.r.t. V.
pub fn is_clause_var_redundant(pi: &Formula, id: ClauseId, v: &VarScope) -> Result<bool, VarRedundancyError> {
    is_clause_var_redundant_capped(pi, id, v, DEFAULT_SCOPE_CAP)
}

pub fn is_clause_var_redundant_capped(
    pi: &Formula,
    id: ClauseId,
    v: &VarScope,
    cap: u32,
) -> Result<bool, VarRedundancyError> {
    pi.clause(id)?;
    Ok(var_equivalent_capped(&pi.without(id), pi, v, cap)?)
}

/// A set is var-redundant when it contains a var-redundant clause.
pub fn is_formula_var_redundant(pi: &Formula, v: &VarScope) -> Result<bool, CapExceeded> {
    is_formula_var_redundant_capped(pi, v, DEFAULT_SCOPE_CAP)
}

pub fn is_formula_var_redundant_capped(pi: &Formula, v: &VarScope, cap: u32) -> Result<bool, CapExceeded> {
    for id in pi.ids() {
        if var_equivalent_capped(&pi.without(id), pi, v, cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Projects `pi` onto V: the conjunction of every clause mentioning all of V
/// that `pi` entails, reduced greedily to an irredundant set. The result
/// mentions only variables of V and is var-equivalent to `pi` w.r.t. V.
pub fn forget(pi: &Formula, v: &VarScope) -> Result<Formula, CapExceeded> {
    forget_capped(pi, v, DEFAULT_SCOPE_CAP)
}

pub fn forget_capped(pi: &Formula, v: &VarScope, cap: u32) -> Result<Formula, CapExceeded> {
    let n = v.len() as u32;
    if n > cap {
        return Err(CapExceeded { requested: n, cap });
    }
    let scope: Vec<Var> = v.iter().copied().collect();
    let mut kept: Vec<Clause> = Vec::new();
    for index in 0..(1u64 << n) {
        let lits = scope
            .iter()
            .enumerate()
            .map(|(i, &var)| crate::cnf::Literal::new(var, (index >> (scope.len() - 1 - i)) & 1 == 1));
        let candidate = Clause::new(lits).expect("distinct variables cannot clash");
        if entails(pi, &candidate) {
            kept.push(candidate);
        }
    }
    let universe = scope.last().map_or(0, |var| var.index());
    let full = Formula::with_universe(kept, universe);
    let keep = greedy_ies(&full, None);
    Ok(full.restricted_to(keep))
}
