//! JSON payload builders shared by the command-line frontend and the
//! browser demo. `serde_json` maps are BTree-backed here, so emitted
//! objects are key-sorted and byte-stable for identical inputs.

use serde_json::{json, Value};

use crate::cnf::{Assignment, Clause, ClauseId, Formula};
use crate::conditional::RevisionOutcome;
use crate::dimacs::ParseWarning;
use crate::gadgets::GadgetOutput;
use crate::redundancy::{ClassificationReport, IesCountHint, IesReport};

pub fn clause_text(c: &Clause) -> String {
    c.to_string()
}

pub fn assignment_text(a: &Assignment) -> String {
    a.to_string()
}

pub fn id_list(ids: impl IntoIterator<Item = ClauseId>) -> Value {
    Value::Array(ids.into_iter().map(|id| json!(id.0)).collect())
}

fn clause_entry(pi: &Formula, id: ClauseId, lines: Option<&[usize]>) -> Value {
    json!({
        "id": id.0,
        "line": lines.and_then(|l| l.get(id.0)).copied(),
        "clause": clause_text(pi.clause(id).expect("id from the formula")),
    })
}

pub fn warnings_value(warnings: &[ParseWarning]) -> Value {
    Value::Array(warnings.iter().map(|w| json!(w.to_string())).collect())
}

pub fn redundancy_value(pi: &Formula, verdicts: &[(ClauseId, bool)], lines: Option<&[usize]>) -> Value {
    let clauses: Vec<Value> = verdicts
        .iter()
        .map(|&(id, redundant)| {
            let mut entry = clause_entry(pi, id, lines);
            entry["redundant"] = json!(redundant);
            entry
        })
        .collect();
    json!({
        "clauses": clauses,
        "formula_redundant": verdicts.iter().any(|&(_, r)| r),
        "redundant_ids": id_list(verdicts.iter().filter(|&&(_, r)| r).map(|&(id, _)| id)),
    })
}

pub fn classification_value(pi: &Formula, report: &ClassificationReport, lines: Option<&[usize]>) -> Value {
    let clauses: Vec<Value> = pi
        .ids()
        .map(|id| {
            let mut entry = clause_entry(pi, id, lines);
            entry["status"] = json!(report.statuses[id.0].label());
            entry
        })
        .collect();
    json!({
        "clauses": clauses,
        "necessary_ids": id_list(report.necessary.iter().copied()),
        "ies_count": ies_count_value(&report.ies_count),
    })
}

pub fn ies_count_value(hint: &IesCountHint) -> Value {
    match hint {
        IesCountHint::Exact(n) => json!({ "exact": n }),
        IesCountHint::AtLeast(n) => json!({ "at_least": n }),
    }
}

pub fn ies_report_value(report: &IesReport) -> Value {
    json!({
        "count": report.ies.len(),
        "ies": report.ies.iter().map(|s| id_list(s.iter().copied())).collect::<Vec<_>>(),
        "truncated": report.truncated,
        "unique": report.unique,
    })
}

pub fn revision_value(outcome: &RevisionOutcome) -> Value {
    json!({
        "maximal_subsets": outcome
            .maximal_subsets
            .iter()
            .map(|s| id_list(s.iter().copied()))
            .collect::<Vec<_>>(),
        "model_count": outcome.models.len(),
        "models": outcome.models.iter().map(|m| json!(assignment_text(m))).collect::<Vec<_>>(),
        "universe": outcome.universe,
    })
}

/// The sidecar manifest for a generated instance: role map, distinguished
/// clauses, construction parameters and the expected label together with
/// the oracle that computed it.
pub fn gadget_manifest(generator: &str, out: &GadgetOutput, expected: Value, source: Value) -> Value {
    json!({
        "schema_version": 1,
        "generator": generator,
        "formula": { "vars": out.formula.universe(), "clauses": out.formula.len() },
        "fresh_vars": out
            .fresh_vars
            .iter()
            .map(|(name, var)| (name.clone(), json!(var.index())))
            .collect::<serde_json::Map<_, _>>(),
        "distinguished": id_list(out.distinguished.iter().copied()),
        "params": out
            .params
            .iter()
            .map(|(name, value)| (name.clone(), json!(value)))
            .collect::<serde_json::Map<_, _>>(),
        "scope": out.scope.as_ref().map(|s| s.iter().map(|v| v.index()).collect::<Vec<_>>()),
        "expected": expected,
        "source": source,
    })
}
