//! Redundancy analysis for CNF formulas.
//!
//! A clause is redundant in a formula when the remaining clauses entail it;
//! removing redundant clauses until none are left yields an *irredundant
//! equivalent subset* (IES). This crate decides redundancy, classifies
//! clauses as necessary / useful / useless, enumerates and verifies IESs,
//! bounds their minimum size, and extends the analysis to two further
//! notions of equivalence: var-equivalence (queries restricted to a
//! variable subset) and conditional equivalence (equivalence that survives
//! belief revision by maximal consistent subsets). A gadget module
//! generates labeled benchmark instances whose redundancy properties encode
//! satisfiability and exists-forall questions about a base formula.
//!
//! Everything is exact and deterministic: the solver branches in a fixed
//! order, enumerations are capped rather than approximated, and all
//! analyses key results by stable clause ids.

pub mod cnf;
pub mod conditional;
pub mod dimacs;
pub mod gadgets;
pub mod redundancy;
pub mod report;
pub mod rng;
pub mod solver;
pub mod var_redundancy;

pub use cnf::{Assignment, Clause, ClauseId, Formula, Literal, PartialAssignment, TautologyError, UnknownClauseId, Var};
pub use solver::{entails, equivalent, solve, SatResult};
