//! DIMACS CNF parsing and serialization, SAT-competition style.
//!
//! Comment lines start with `c`, the header is `p cnf <vars> <clauses>`,
//! clauses are whitespace-separated signed integers terminated by `0` and
//! may span lines. Trailing whitespace is tolerated.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cnf::{Clause, Formula, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: expected 'p cnf <vars> <clauses>' header")]
    Header { line: usize },
    #[error("no 'p cnf' header found")]
    MissingHeader,
    #[error("line {line}: '{token}' is not a literal")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {literal} outside declared range 1..={declared}")]
    LiteralOutOfRange { line: usize, literal: i64, declared: u32 },
    #[error("line {line}: clause starting here is missing its '0' terminator")]
    MissingTerminator { line: usize },
    #[error("line {line}: tautological clause")]
    Tautology { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A clause textually equal (after canonicalization) to an earlier one;
    /// the duplicate is collapsed, set semantics apply.
    DuplicateClause { line: usize, first_line: usize },
    /// The header promised a different number of clauses than the body holds.
    ClauseCountMismatch { declared: usize, found: usize },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::DuplicateClause { line, first_line } => {
                write!(f, "line {line}: duplicate of the clause on line {first_line}, collapsed")
            }
            ParseWarning::ClauseCountMismatch { declared, found } => {
                write!(f, "header declares {declared} clauses but {found} were found")
            }
        }
    }
}

/// Result of a successful parse: the formula plus source metadata.
#[derive(Debug, Clone)]
pub struct ParsedCnf {
    pub formula: Formula,
    /// Source line of each clause, indexed by `ClauseId`.
    pub clause_lines: Vec<usize>,
    pub warnings: Vec<ParseWarning>,
}

pub fn parse_dimacs(text: &str) -> Result<ParsedCnf, DimacsError> {
    let mut declared: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut clause_lines: Vec<usize> = Vec::new();
    let mut first_lines: BTreeMap<Clause, usize> = BTreeMap::new();
    let mut warnings: Vec<ParseWarning> = Vec::new();
    let mut raw_count = 0usize;
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let Some((max_var, _)) = declared else {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "cnf", vars, count] => {
                    let vars: u32 = vars.parse().map_err(|_| DimacsError::Header { line: line_no })?;
                    let count: usize = count.parse().map_err(|_| DimacsError::Header { line: line_no })?;
                    declared = Some((vars, count));
                }
                _ => return Err(DimacsError::Header { line: line_no }),
            }
            continue;
        };
        for token in line.split_whitespace() {
            let code: i64 = token
                .parse()
                .map_err(|_| DimacsError::BadToken { line: line_no, token: token.to_string() })?;
            if code == 0 {
                raw_count += 1;
                let clause = Clause::new(current.drain(..)).map_err(|_| DimacsError::Tautology { line: line_no })?;
                match first_lines.get(&clause) {
                    Some(&first_line) => {
                        warnings.push(ParseWarning::DuplicateClause { line: line_no, first_line });
                    }
                    None => {
                        first_lines.insert(clause.clone(), line_no);
                        clause_lines.push(line_no);
                        clauses.push(clause);
                    }
                }
            } else {
                if code.unsigned_abs() > u64::from(max_var) {
                    return Err(DimacsError::LiteralOutOfRange { line: line_no, literal: code, declared: max_var });
                }
                if current.is_empty() {
                    current_start = line_no;
                }
                current.push(Literal::from_dimacs(code));
            }
        }
    }

    let Some((max_var, declared_count)) = declared else {
        return Err(DimacsError::MissingHeader);
    };
    if !current.is_empty() {
        return Err(DimacsError::MissingTerminator { line: current_start });
    }
    if raw_count != declared_count {
        warnings.push(ParseWarning::ClauseCountMismatch { declared: declared_count, found: raw_count });
    }
    Ok(ParsedCnf { formula: Formula::with_universe(clauses, max_var), clause_lines, warnings })
}

/// Serializes a formula. Round-trip stable: parsing the output reproduces
/// the formula, including clause id order.
pub fn write_dimacs(f: &Formula) -> String {
    let mut out = format!("p cnf {} {}\n", f.universe(), f.len());
    for clause in f.clauses() {
        for lit in clause.literals() {
            out.push_str(&lit.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
