//! The reasoning backend: complete satisfiability search plus the
//! entailment, equivalence, model-enumeration and exists-forall queries
//! every analysis is built on.
//!
//! The search is depth-first with unit propagation over two watched
//! literals and chronological backtracking. Branching is deterministic
//! (ascending variable index, `false` first), so witness models in reports
//! are reproducible.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cnf::{Assignment, Clause, Formula, Literal, PartialAssignment, Var};

/// Default cap on dense model enumeration (number of variables).
pub const DEFAULT_ENUM_CAP: u32 = 20;
/// Default cap on the existential block of [`eval_exists_forall`].
pub const DEFAULT_EXISTS_CAP: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("enumeration over {requested} items exceeds the cap of {cap}")]
pub struct CapExceeded {
    pub requested: u32,
    pub cap: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Assignment),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SatResult::Sat(m) => Some(m),
            SatResult::Unsat => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Decision,
    Implied,
    Flipped,
}

struct Search {
    clauses: Vec<Vec<Literal>>,
    watchers: Vec<Vec<usize>>,
    values: Vec<i8>,
    trail: Vec<(usize, Step)>,
    head: usize,
}

fn code(l: Literal) -> usize {
    ((l.var().index() as usize) - 1) * 2 + usize::from(l.is_positive())
}

fn value_in(values: &[i8], l: Literal) -> Option<bool> {
    match values[(l.var().index() - 1) as usize] {
        0 => None,
        v => Some((v > 0) == l.is_positive()),
    }
}

impl Search {
    fn literal_value(&self, l: Literal) -> Option<bool> {
        value_in(&self.values, l)
    }

    fn push(&mut self, l: Literal, step: Step) {
        let v = (l.var().index() - 1) as usize;
        debug_assert_eq!(self.values[v], 0);
        self.values[v] = if l.is_positive() { 1 } else { -1 };
        self.trail.push((v, step));
    }

    /// Propagates every pending assignment; returns true on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let (v, _) = self.trail[self.head];
            self.head += 1;
            let falsified = Literal::new(Var::new(v as u32 + 1), self.values[v] < 0);
            let fcode = code(falsified);
            let watching = std::mem::take(&mut self.watchers[fcode]);
            let mut kept = Vec::with_capacity(watching.len());
            let mut conflict = false;
            for (pos, &ci) in watching.iter().enumerate() {
                if conflict {
                    kept.extend_from_slice(&watching[pos..]);
                    break;
                }
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                if value_in(&self.values, other) == Some(true) {
                    kept.push(ci);
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    if value_in(&self.values, clause[k]) != Some(false) {
                        clause.swap(1, k);
                        let new_code = code(clause[1]);
                        self.watchers[new_code].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                kept.push(ci);
                match self.literal_value(other) {
                    None => self.push(other, Step::Implied),
                    Some(false) => conflict = true,
                    Some(true) => unreachable!(),
                }
            }
            self.watchers[fcode] = kept;
            if conflict {
                return true;
            }
        }
        false
    }

    /// Undoes the trail up to the deepest decision still tried one way and
    /// flips it; returns false when the search space is exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some((v, step)) = self.trail.pop() {
            self.values[v] = 0;
            if step == Step::Decision {
                self.push(Literal::new(Var::new(v as u32 + 1), true), Step::Flipped);
                self.head = self.trail.len() - 1;
                return true;
            }
        }
        false
    }
}

/// Complete satisfiability check; on success the witness model is total over
/// the formula's universe and deterministic for a given input.
pub fn solve(f: &Formula) -> SatResult {
    if f.clauses().iter().any(Clause::is_empty) {
        return SatResult::Unsat;
    }
    let n = f.universe() as usize;
    let mut search = Search {
        clauses: Vec::new(),
        watchers: vec![Vec::new(); 2 * n],
        values: vec![0; n],
        trail: Vec::new(),
        head: 0,
    };
    let mut units = Vec::new();
    for clause in f.clauses() {
        let lits = clause.literals().to_vec();
        if lits.len() == 1 {
            units.push(lits[0]);
        } else {
            let ci = search.clauses.len();
            search.watchers[code(lits[0])].push(ci);
            search.watchers[code(lits[1])].push(ci);
            search.clauses.push(lits);
        }
    }
    for unit in units {
        match search.literal_value(unit) {
            Some(true) => {}
            Some(false) => return SatResult::Unsat,
            None => search.push(unit, Step::Implied),
        }
    }
    loop {
        if search.propagate() {
            if !search.backtrack() {
                return SatResult::Unsat;
            }
        } else {
            match search.values.iter().position(|&v| v == 0) {
                None => {
                    let model = Assignment::new(search.values.iter().map(|&v| v > 0).collect());
                    debug_assert!(f.is_satisfied_by(&model));
                    return SatResult::Sat(model);
                }
                Some(v) => search.push(Literal::new(Var::new(v as u32 + 1), false), Step::Decision),
            }
        }
    }
}

/// Entailment by refutation: `pi` entails `gamma` iff `pi` plus the negation
/// of every literal of `gamma` is unsatisfiable.
pub fn entails(pi: &Formula, gamma: &Clause) -> bool {
    let mut clauses: Vec<Clause> = pi.clauses().to_vec();
    clauses.extend(gamma.literals().iter().map(|l| Clause::unit(l.negated())));
    let universe = pi.universe().max(gamma.max_var().map_or(0, Var::index));
    !solve(&Formula::with_universe(clauses, universe)).is_sat()
}

/// Logical equivalence: mutual clause-wise entailment.
pub fn equivalent(p1: &Formula, p2: &Formula) -> bool {
    p2.clauses().iter().all(|c| entails(p1, c)) && p1.clauses().iter().all(|c| entails(p2, c))
}

/// All satisfying total assignments over `1..=universe`, in lexicographic
/// order. This is a direct truth-table sweep, independent of [`solve`], and
/// serves as the reference the search is checked against.
pub fn enumerate_models(f: &Formula, universe: u32) -> Result<Vec<Assignment>, CapExceeded> {
    enumerate_models_capped(f, universe, DEFAULT_ENUM_CAP)
}

pub fn enumerate_models_capped(f: &Formula, universe: u32, cap: u32) -> Result<Vec<Assignment>, CapExceeded> {
    assert!(f.max_mentioned_var() <= universe, "universe must cover the formula");
    if universe > cap {
        return Err(CapExceeded { requested: universe, cap });
    }
    assert!(universe < 63);
    let mut out = Vec::new();
    for index in 0..(1u64 << universe) {
        let a = Assignment::from_index(universe, index);
        if f.is_satisfied_by(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

/// A two-block quantified instance `∃X ∀Y. ¬matrix` with a CNF matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbfInstance {
    existentials: BTreeSet<Var>,
    universals: BTreeSet<Var>,
    matrix: Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum QbfError {
    #[error("variable {0} appears in both quantifier blocks")]
    OverlappingBlocks(Var),
    #[error("matrix variable {0} is not bound by either block")]
    Unbound(Var),
}

impl QbfInstance {
    pub fn new(existentials: BTreeSet<Var>, universals: BTreeSet<Var>, matrix: Formula) -> Result<QbfInstance, QbfError> {
        if let Some(&v) = existentials.intersection(&universals).next() {
            return Err(QbfError::OverlappingBlocks(v));
        }
        for v in matrix.vars() {
            if !existentials.contains(&v) && !universals.contains(&v) {
                return Err(QbfError::Unbound(v));
            }
        }
        Ok(QbfInstance { existentials, universals, matrix })
    }

    pub fn existentials(&self) -> &BTreeSet<Var> {
        &self.existentials
    }

    pub fn universals(&self) -> &BTreeSet<Var> {
        &self.universals
    }

    pub fn matrix(&self) -> &Formula {
        &self.matrix
    }
}

/// Evaluates `∃X ∀Y. ¬matrix`: true iff some assignment over the
/// existential block makes the matrix unsatisfiable. Outer enumeration over
/// X with one satisfiability call per point.
pub fn eval_exists_forall(q: &QbfInstance) -> Result<bool, CapExceeded> {
    eval_exists_forall_capped(q, DEFAULT_EXISTS_CAP)
}

pub fn eval_exists_forall_capped(q: &QbfInstance, cap: u32) -> Result<bool, CapExceeded> {
    let n = q.existentials.len() as u32;
    if n > cap {
        return Err(CapExceeded { requested: n, cap });
    }
    for index in 0..(1u64 << n) {
        let point = PartialAssignment::from_index(&q.existentials, index);
        let reduced = q.matrix.restrict(&point);
        if !solve(&reduced).is_sat() {
            return Ok(true);
        }
    }
    Ok(false)
}
