//! The CNF data model: variables, literals, clauses, formulas and
//! assignments.
//!
//! Formulas are ordered sets of distinct, canonical, non-tautological
//! clauses. Every value is immutable after construction, and every analysis
//! in the crate keys its results by [`ClauseId`], the insertion rank of a
//! clause within its formula.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// A propositional variable. Indices are 1-based, matching DIMACS.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

impl Var {
    /// Creates a variable from a 1-based index.
    pub fn new(index: u32) -> Var {
        assert!(index >= 1, "variable indices are 1-based");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Literal {
        Literal { var: self, positive: true }
    }

    pub fn negative(self) -> Literal {
        Literal { var: self, positive: false }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A signed occurrence of a variable.
///
/// The derived order sorts by variable index with the negative literal
/// first, which is the canonical order of literals inside a clause.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal {
    var: Var,
    positive: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        Literal { var, positive }
    }

    /// Builds a literal from a signed DIMACS code. Zero is not a literal.
    pub fn from_dimacs(code: i64) -> Literal {
        assert!(code != 0, "zero is the DIMACS clause terminator, not a literal");
        let var = Var::new(u32::try_from(code.unsigned_abs()).expect("variable index fits in 32 bits"));
        Literal { var, positive: code > 0 }
    }

    pub fn to_dimacs(self) -> i64 {
        let idx = i64::from(self.var.index());
        if self.positive { idx } else { -idx }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Literal {
        Literal { var: self.var, positive: !self.positive }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Error raised when a clause would contain a variable in both polarities.
///
/// Tautological clauses are rejected everywhere: no formula in the crate
/// ever contains one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("tautological clause: variable {var} occurs in both polarities")]
pub struct TautologyError {
    pub var: Var,
}

/// A canonical clause: literals sorted, duplicates removed, never
/// tautological. The empty clause is the contradiction and is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Canonicalizes a literal sequence into a clause. Duplicate literals
    /// collapse silently; a complementary pair is an error.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Clause, TautologyError> {
        let mut lits: Vec<Literal> = literals.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        for pair in lits.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(TautologyError { var: pair[0].var() });
            }
        }
        Ok(Clause { literals: lits })
    }

    pub fn empty() -> Clause {
        Clause { literals: Vec::new() }
    }

    pub fn unit(literal: Literal) -> Clause {
        Clause { literals: vec![literal] }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.literals.iter().map(|l| l.var())
    }

    pub fn max_var(&self) -> Option<Var> {
        self.literals.last().map(|l| l.var())
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.literals.iter().any(|l| assignment.literal_true(*l))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "<empty>");
        }
        let mut first = true;
        for l in &self.literals {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Stable identifier of a clause within one formula: its insertion rank
/// after deduplication. Ids are contiguous from 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClauseId(pub usize);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("clause id {id} out of range for a formula with {len} clauses")]
pub struct UnknownClauseId {
    pub id: ClauseId,
    pub len: usize,
}

/// An ordered set of distinct clauses over a declared variable universe
/// `1..=universe`.
///
/// Duplicate clauses collapse silently at construction (set semantics);
/// parsing layers on top record a warning instead. Formulas are
/// value-semantic and immutable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Formula {
    clauses: Vec<Clause>,
    universe: u32,
}

impl Formula {
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Formula {
        Formula::with_universe(clauses, 0)
    }

    /// Like [`Formula::new`] but with an explicitly declared universe, which
    /// is grown to cover every mentioned variable.
    pub fn with_universe(clauses: impl IntoIterator<Item = Clause>, universe: u32) -> Formula {
        let mut seen: BTreeSet<Clause> = BTreeSet::new();
        let mut list = Vec::new();
        let mut max = universe;
        for clause in clauses {
            if let Some(v) = clause.max_var() {
                max = max.max(v.index());
            }
            if seen.insert(clause.clone()) {
                list.push(clause);
            }
        }
        Formula { clauses: list, universe: max }
    }

    pub fn empty() -> Formula {
        Formula { clauses: Vec::new(), universe: 0 }
    }

    /// Convenience constructor from signed DIMACS codes, for tests and
    /// examples. Panics on a tautological clause.
    pub fn from_ints(clauses: &[&[i64]]) -> Formula {
        Formula::new(clauses.iter().map(|lits| {
            Clause::new(lits.iter().map(|&c| Literal::from_dimacs(c))).expect("non-tautological input")
        }))
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, id: ClauseId) -> Result<&Clause, UnknownClauseId> {
        self.clauses.get(id.0).ok_or(UnknownClauseId { id, len: self.clauses.len() })
    }

    pub fn ids(&self) -> impl Iterator<Item = ClauseId> {
        (0..self.clauses.len()).map(ClauseId)
    }

    pub fn contains_clause(&self, clause: &Clause) -> bool {
        self.clauses.iter().any(|c| c == clause)
    }

    /// Subset as clause sets, ignoring order and ids.
    pub fn is_subset_of(&self, other: &Formula) -> bool {
        self.clauses.iter().all(|c| other.contains_clause(c))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(Clause::vars).collect()
    }

    pub fn max_mentioned_var(&self) -> u32 {
        self.clauses.iter().filter_map(|c| c.max_var()).map(Var::index).max().unwrap_or(0)
    }

    /// The formula with one clause removed. The universe is preserved.
    pub fn without(&self, id: ClauseId) -> Formula {
        assert!(id.0 < self.clauses.len(), "clause id out of range");
        let clauses = self
            .clauses
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != id.0)
            .map(|(_, c)| c.clone())
            .collect::<Vec<_>>();
        Formula { clauses, universe: self.universe }
    }

    /// The sub-formula keeping exactly the given clause ids, in ascending id
    /// order. The universe is preserved.
    pub fn restricted_to(&self, ids: impl IntoIterator<Item = ClauseId>) -> Formula {
        let keep: BTreeSet<ClauseId> = ids.into_iter().collect();
        let clauses = keep
            .iter()
            .map(|id| self.clause(*id).expect("clause id out of range").clone())
            .collect::<Vec<_>>();
        Formula { clauses, universe: self.universe }
    }

    /// Conjunction of two formulas (clause union over the joint universe).
    pub fn conjoin(&self, other: &Formula) -> Formula {
        Formula::with_universe(
            self.clauses.iter().chain(other.clauses.iter()).cloned(),
            self.universe.max(other.universe),
        )
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(assignment))
    }

    /// Simplifies under a partial assignment: satisfied clauses are dropped,
    /// falsified literals are removed. May produce the empty clause.
    pub fn restrict(&self, omega: &PartialAssignment) -> Formula {
        let mut out = Vec::new();
        'clauses: for clause in &self.clauses {
            let mut rest = Vec::new();
            for &lit in clause.literals() {
                match omega.value(lit.var()) {
                    Some(v) if v == lit.is_positive() => continue 'clauses,
                    Some(_) => {}
                    None => rest.push(lit),
                }
            }
            out.push(Clause::new(rest).expect("restriction of a non-tautological clause"));
        }
        Formula::with_universe(out, self.universe)
    }
}

/// A total truth assignment over a dense universe `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    pub fn all_false(universe: u32) -> Assignment {
        Assignment { values: vec![false; universe as usize] }
    }

    /// The `index`-th assignment in lexicographic order (variable 1 varies
    /// slowest, `false` before `true`).
    pub fn from_index(universe: u32, index: u64) -> Assignment {
        let n = universe as usize;
        assert!(n < 64);
        Assignment { values: (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect() }
    }

    pub fn universe(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, var: Var) -> bool {
        self.values[(var.index() - 1) as usize]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values[(var.index() - 1) as usize] = value;
    }

    pub fn literal_true(&self, literal: Literal) -> bool {
        self.value(literal.var()) == literal.is_positive()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &v) in self.values.iter().enumerate() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}{}", if v { "" } else { "-" }, i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// A truth assignment over an explicit subset of the universe.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PartialAssignment {
    values: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new(values: BTreeMap<Var, bool>) -> PartialAssignment {
        PartialAssignment { values }
    }

    pub fn empty() -> PartialAssignment {
        PartialAssignment { values: BTreeMap::new() }
    }

    /// The `index`-th assignment over `scope` in lexicographic order (lowest
    /// variable varies slowest, `false` before `true`).
    pub fn from_index(scope: &BTreeSet<Var>, index: u64) -> PartialAssignment {
        let n = scope.len();
        assert!(n < 64);
        let values = scope
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, (index >> (n - 1 - i)) & 1 == 1))
            .collect();
        PartialAssignment { values }
    }

    pub fn insert(&mut self, var: Var, value: bool) {
        self.values.insert(var, value);
    }

    pub fn scope(&self) -> impl Iterator<Item = Var> + '_ {
        self.values.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.values.keys().next_back().copied()
    }

    pub fn value(&self, var: Var) -> Option<bool> {
        self.values.get(&var).copied()
    }

    /// The literals this assignment implies, one per variable of the scope.
    pub fn unit_literals(&self) -> Vec<Literal> {
        self.values.iter().map(|(&v, &b)| Literal::new(v, b)).collect()
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&v, &b) in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}{}", if b { "" } else { "-" }, v.index())?;
            first = false;
        }
        Ok(())
    }
}
