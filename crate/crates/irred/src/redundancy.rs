//! Redundancy analysis under classical equivalence: per-clause and
//! formula-level redundancy, necessity/usefulness/uselessness, irredundant
//! equivalent subsets (IESs), their enumeration, minimum size and
//! uniqueness.
//!
//! An IES of a formula is a subset that is equivalent to it and contains no
//! redundant clause. A clause is *necessary* when it belongs to every IES,
//! *useful* when it belongs to at least one, and *useless* otherwise.

use std::collections::{BTreeMap, BTreeSet};

use crate::cnf::{ClauseId, Formula, UnknownClauseId, Var};
use crate::solver::{entails, equivalent, solve};

/// Default cap on IES enumeration; the count can grow as 2^n.
pub const DEFAULT_IES_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseStatus {
    /// In every IES: not entailed by the rest of the formula.
    Necessary,
    /// In at least one IES, but not all of them.
    UsefulNotNecessary,
    /// In no IES: removal is always harmless.
    Useless,
}

impl ClauseStatus {
    pub fn label(self) -> &'static str {
        match self {
            ClauseStatus::Necessary => "necessary",
            ClauseStatus::UsefulNotNecessary => "useful",
            ClauseStatus::Useless => "useless",
        }
    }
}

/// Count of IESs, exact when enumeration finished under its cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IesCountHint {
    Exact(usize),
    AtLeast(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    /// Status per clause, indexed by `ClauseId`.
    pub statuses: Vec<ClauseStatus>,
    /// The necessary set Π_N.
    pub necessary: BTreeSet<ClauseId>,
    pub ies_count: IesCountHint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IesReport {
    /// Each IES as a set of clause ids, sorted lexicographically.
    pub ies: Vec<BTreeSet<ClauseId>>,
    pub unique: bool,
    pub truncated: bool,
}

/// A clause is redundant when the rest of the formula entails it.
pub fn is_clause_redundant(pi: &Formula, id: ClauseId) -> Result<bool, UnknownClauseId> {
    let clause = pi.clause(id)?;
    Ok(entails(&pi.without(id), clause))
}

pub fn is_clause_necessary(pi: &Formula, id: ClauseId) -> Result<bool, UnknownClauseId> {
    Ok(!is_clause_redundant(pi, id)?)
}

/// A formula is redundant iff it contains a redundant clause (equivalently,
/// iff it is equivalent to one of its proper subsets).
pub fn is_formula_redundant(pi: &Formula) -> bool {
    pi.ids().any(|id| is_clause_redundant(pi, id).expect("id from the formula"))
}

pub fn necessary_ids(pi: &Formula) -> BTreeSet<ClauseId> {
    pi.ids()
        .filter(|&id| is_clause_necessary(pi, id).expect("id from the formula"))
        .collect()
}

fn redundant_within(pi: &Formula, live: &BTreeSet<ClauseId>, id: ClauseId) -> bool {
    let rest = live.iter().copied().filter(|&x| x != id);
    entails(&pi.restricted_to(rest), pi.clause(id).expect("id from the formula"))
}

/// Greedy IES extraction: scan in the given order (ascending ids by
/// default), remove the current clause when it is redundant in the current
/// remainder, repeat until a full pass removes nothing.
///
/// Different orders can yield different IESs; the permutation parameter
/// exposes that order-dependence.
pub fn greedy_ies(pi: &Formula, order: Option<&[ClauseId]>) -> BTreeSet<ClauseId> {
    let order: Vec<ClauseId> = match order {
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort_unstable();
            assert!(
                sorted.iter().copied().eq(pi.ids()),
                "order must be a permutation of the formula's clause ids"
            );
            o.to_vec()
        }
        None => pi.ids().collect(),
    };
    let mut live: BTreeSet<ClauseId> = pi.ids().collect();
    loop {
        let mut removed = false;
        for &id in &order {
            if live.contains(&id) && redundant_within(pi, &live, id) {
                live.remove(&id);
                removed = true;
            }
        }
        if !removed {
            return live;
        }
    }
}

/// IES verification: subset of `pi` (as clause sets), equivalent to it, and
/// itself irredundant.
pub fn is_ies(candidate: &Formula, pi: &Formula) -> bool {
    candidate.is_subset_of(pi) && equivalent(candidate, pi) && !is_formula_redundant(candidate)
}

/// Depth-first walk over keep/remove choices on redundant clauses. Every
/// IES of `pi` that contains all of `kept` is visited exactly once (up to
/// the dedup done by callers). `visit` returns false to stop the walk.
fn walk_ies(
    pi: &Formula,
    live: &mut BTreeSet<ClauseId>,
    kept: &mut BTreeSet<ClauseId>,
    visit: &mut dyn FnMut(&BTreeSet<ClauseId>) -> bool,
) -> bool {
    let mut candidate = None;
    let mut any_redundant = false;
    for &id in live.iter() {
        if redundant_within(pi, live, id) {
            any_redundant = true;
            if !kept.contains(&id) {
                candidate = Some(id);
                break;
            }
        }
    }
    if !any_redundant {
        return visit(live);
    }
    // Dead end when every redundant clause is pinned.
    let Some(id) = candidate else {
        return true;
    };
    live.remove(&id);
    let go_on = walk_ies(pi, live, kept, visit);
    live.insert(id);
    if !go_on {
        return false;
    }
    kept.insert(id);
    let go_on = walk_ies(pi, live, kept, visit);
    kept.remove(&id);
    go_on
}

/// All IESs of `pi` up to `cap`, as canonical id sets sorted
/// lexicographically. `truncated` is set when the cap was hit.
pub fn enumerate_ies(pi: &Formula, cap: usize) -> IesReport {
    let mut found: BTreeSet<BTreeSet<ClauseId>> = BTreeSet::new();
    let mut truncated = false;
    let mut live: BTreeSet<ClauseId> = pi.ids().collect();
    let mut kept = BTreeSet::new();
    walk_ies(pi, &mut live, &mut kept, &mut |ies| {
        if found.contains(ies) {
            return true;
        }
        if found.len() == cap {
            truncated = true;
            return false;
        }
        found.insert(ies.clone());
        true
    });
    IesReport {
        unique: !truncated && found.len() == 1,
        ies: found.into_iter().collect(),
        truncated,
    }
}

/// Membership in at least one IES. Necessary clauses qualify immediately;
/// otherwise the keep/remove walk searches for an IES pinned to contain the
/// clause: a witness subset that is equivalent to `pi` and keeps the clause
/// non-entailed.
pub fn is_clause_useful(pi: &Formula, id: ClauseId) -> Result<bool, UnknownClauseId> {
    if is_clause_necessary(pi, id)? {
        return Ok(true);
    }
    let mut live: BTreeSet<ClauseId> = pi.ids().collect();
    let mut kept: BTreeSet<ClauseId> = [id].into();
    let mut hit = false;
    walk_ies(pi, &mut live, &mut kept, &mut |_| {
        hit = true;
        false
    });
    Ok(hit)
}

/// Full three-way classification plus the necessary set and an IES count
/// hint (enumerated under [`DEFAULT_IES_CAP`]).
pub fn classify_clauses(pi: &Formula) -> ClassificationReport {
    let necessary = necessary_ids(pi);
    let statuses = pi
        .ids()
        .map(|id| {
            if necessary.contains(&id) {
                ClauseStatus::Necessary
            } else if is_clause_useful(pi, id).expect("id from the formula") {
                ClauseStatus::UsefulNotNecessary
            } else {
                ClauseStatus::Useless
            }
        })
        .collect();
    let report = enumerate_ies(pi, DEFAULT_IES_CAP);
    let ies_count = if report.truncated {
        IesCountHint::AtLeast(report.ies.len())
    } else {
        IesCountHint::Exact(report.ies.len())
    };
    ClassificationReport { statuses, necessary, ies_count }
}

/// Uniqueness of the IES: holds iff the necessary set is equivalent to the
/// whole formula.
pub fn has_unique_ies(pi: &Formula) -> bool {
    let necessary = necessary_ids(pi);
    equivalent(&pi.restricted_to(necessary), pi)
}

/// Searches for a pair of clauses that are each individually removable while
/// the pair is not jointly removable. Such a pair proves at least two IESs
/// exist; its absence proves nothing (the choice may only appear after other
/// removals).
pub fn two_ies_witness(pi: &Formula) -> Option<(ClauseId, ClauseId)> {
    let removable: Vec<ClauseId> = pi
        .ids()
        .filter(|&id| is_clause_redundant(pi, id).expect("id from the formula"))
        .collect();
    for (i, &a) in removable.iter().enumerate() {
        for &b in &removable[i + 1..] {
            let both_removed = pi.restricted_to(pi.ids().filter(|&x| x != a && x != b));
            let still_equivalent = entails(&both_removed, pi.clause(a).expect("valid id"))
                && entails(&both_removed, pi.clause(b).expect("valid id"));
            if !still_equivalent {
                return Some((a, b));
            }
        }
    }
    None
}

/// Variable-disjoint components of a formula, each a set of clause ids.
/// Clauses without variables (the empty clause) form singleton components.
fn components(pi: &Formula) -> Vec<Vec<ClauseId>> {
    let n = pi.len();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut owner: BTreeMap<Var, usize> = BTreeMap::new();
    for (i, clause) in pi.clauses().iter().enumerate() {
        for v in clause.vars() {
            match owner.get(&v) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(v, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<ClauseId>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(ClauseId(i));
    }
    let mut out: Vec<Vec<ClauseId>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Calls `f` on each `k`-combination of `items` in lexicographic order until
/// `f` returns false.
fn for_each_combination(items: &[ClauseId], k: usize, f: &mut dyn FnMut(&[ClauseId]) -> bool) -> bool {
    fn rec(items: &[ClauseId], k: usize, start: usize, chosen: &mut Vec<ClauseId>, f: &mut dyn FnMut(&[ClauseId]) -> bool) -> bool {
        if chosen.len() == k {
            return f(chosen);
        }
        let needed = k - chosen.len();
        for i in start..=items.len().saturating_sub(needed) {
            chosen.push(items[i]);
            let go_on = rec(items, k, i + 1, chosen, f);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(items, k, 0, &mut Vec::new(), f)
}

/// Smallest unsatisfiable subset of one component, up to `max_size`
/// inclusive. Iterative deepening over cardinality.
fn smallest_unsat_subset(pi: &Formula, comp: &[ClauseId], max_size: usize) -> Option<Vec<ClauseId>> {
    for k in 1..=max_size.min(comp.len()) {
        let mut hit: Option<Vec<ClauseId>> = None;
        for_each_combination(comp, k, &mut |ids| {
            if !solve(&pi.restricted_to(ids.iter().copied())).is_sat() {
                hit = Some(ids.to_vec());
                return false;
            }
            true
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Smallest subset of a satisfiable component that entails all of it.
/// Every equivalent subset contains the component's necessary clauses, so
/// the search iterates cardinality over the non-necessary ones only.
fn smallest_equivalent_subset(pi: &Formula, comp: &[ClauseId]) -> Vec<ClauseId> {
    let comp_set: BTreeSet<ClauseId> = comp.iter().copied().collect();
    let necessary: Vec<ClauseId> = comp
        .iter()
        .copied()
        .filter(|&id| {
            let rest = comp_set.iter().copied().filter(|&x| x != id);
            !entails(&pi.restricted_to(rest), pi.clause(id).expect("valid id"))
        })
        .collect();
    let free: Vec<ClauseId> = comp.iter().copied().filter(|id| !necessary.contains(id)).collect();
    for extra in 0..=free.len() {
        let mut hit: Option<Vec<ClauseId>> = None;
        for_each_combination(&free, extra, &mut |combo| {
            let chosen: BTreeSet<ClauseId> = necessary.iter().chain(combo.iter()).copied().collect();
            let sub = pi.restricted_to(chosen.iter().copied());
            let covers = comp
                .iter()
                .filter(|id| !chosen.contains(id))
                .all(|&id| entails(&sub, pi.clause(id).expect("valid id")));
            if covers {
                hit = Some(chosen.into_iter().collect());
                return false;
            }
            true
        });
        if let Some(h) = hit {
            return h;
        }
    }
    unreachable!("the full component always entails itself")
}

/// Minimum cardinality over all subsets equivalent to `pi`, with a witness
/// subset of that size. A minimum-size equivalent subset is automatically
/// irredundant, so the witness is an IES.
///
/// The search decomposes over variable-disjoint components: for satisfiable
/// input the minima add up; for unsatisfiable input the best single
/// unsatisfiable component subset wins.
pub fn min_ies_witness(pi: &Formula) -> (usize, BTreeSet<ClauseId>) {
    if pi.is_empty() {
        return (0, BTreeSet::new());
    }
    let comps = components(pi);
    if solve(pi).is_sat() {
        let mut chosen: BTreeSet<ClauseId> = BTreeSet::new();
        for comp in &comps {
            chosen.extend(smallest_equivalent_subset(pi, comp));
        }
        (chosen.len(), chosen)
    } else {
        let mut best: Option<Vec<ClauseId>> = None;
        for comp in &comps {
            let bound = best.as_ref().map_or(comp.len(), |b| b.len().saturating_sub(1));
            if let Some(found) = smallest_unsat_subset(pi, comp, bound) {
                if best.as_ref().is_none_or(|b| found.len() < b.len()) {
                    best = Some(found);
                }
            }
        }
        let best = best.expect("an unsatisfiable formula has an unsatisfiable component");
        (best.len(), best.into_iter().collect())
    }
}

pub fn min_ies_size(pi: &Formula) -> usize {
    min_ies_witness(pi).0
}

/// Whether an IES of size at most `k` exists, with early exit instead of
/// computing the exact minimum in the unsatisfiable case.
pub fn has_ies_of_size(pi: &Formula, k: usize) -> bool {
    if k >= pi.len() {
        return true;
    }
    if solve(pi).is_sat() {
        min_ies_size(pi) <= k
    } else {
        components(pi)
            .iter()
            .any(|comp| smallest_unsat_subset(pi, comp, k).is_some())
    }
}
