//! Browser bindings for the redundancy toolkit: a small JSON-string API
//! consumed by the static demo page in `www/`.
//!
//! Three interactive operations are exposed: full analysis of a pasted
//! DIMACS formula, labeled instance generation, and revision of one formula
//! by another. Errors come back as `{"error": "..."}` so the page can
//! render them inline.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use irred::cnf::{ClauseId, Formula, Var};
use irred::conditional::revise_capped;
use irred::dimacs::{parse_dimacs, write_dimacs};
use irred::gadgets::{cond_clause_gadget, exponential_family, random_cnf, sat_gadget, var_gadget};
use irred::redundancy::{classify_clauses, enumerate_ies, greedy_ies, has_unique_ies, min_ies_witness};
use irred::report;
use irred::rng::SplitMix64;
use irred::solver::{eval_exists_forall, solve, QbfInstance};

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn parse(dimacs: &str) -> Result<(Formula, Value), String> {
    match parse_dimacs(dimacs) {
        Ok(parsed) => {
            let warnings = report::warnings_value(&parsed.warnings);
            Ok((parsed.formula, warnings))
        }
        Err(e) => Err(error(e)),
    }
}

/// Full analysis of one formula: per-clause classification, the IES family
/// (up to `cap`), uniqueness, a greedy IES and the minimum size with a
/// witness.
#[wasm_bindgen]
pub fn analyze(dimacs: &str, cap: usize) -> String {
    let (pi, warnings) = match parse(dimacs) {
        Ok(p) => p,
        Err(e) => return e,
    };
    if pi.len() > 24 {
        return error("the demo is tuned for formulas of at most 24 clauses");
    }
    let classification = classify_clauses(&pi);
    let ies = enumerate_ies(&pi, cap.clamp(1, 1024));
    let greedy = greedy_ies(&pi, None);
    let (min_size, min_witness) = min_ies_witness(&pi);
    json!({
        "vars": pi.universe(),
        "clauses": pi.len(),
        "warnings": warnings,
        "satisfiable": solve(&pi).is_sat(),
        "classification": report::classification_value(&pi, &classification, None),
        "ies": report::ies_report_value(&ies),
        "unique": has_unique_ies(&pi),
        "greedy_ies": report::id_list(greedy.iter().copied()),
        "min_size": min_size,
        "min_witness": report::id_list(min_witness.iter().copied()),
    })
    .to_string()
}

/// Generates a labeled instance. Kinds: `family` (argument = number of
/// copies), `random` (argument = variable count, seeded), `sat` (argument =
/// DIMACS base), `var` (argument = DIMACS base, scope = first half of its
/// variables).
#[wasm_bindgen]
pub fn generate(kind: &str, argument: &str, seed: u64) -> String {
    let built = match kind {
        "family" => {
            let copies: usize = match argument.trim().parse() {
                Ok(n) if (1..=6).contains(&n) => n,
                _ => return error("copies must be between 1 and 6"),
            };
            let formula = exponential_family(copies);
            let ies = enumerate_ies(&formula, 1 << copies);
            (formula, json!({ "ies_count": ies.ies.len() }))
        }
        "random" => {
            let vars: u32 = match argument.trim().parse() {
                Ok(n) if (1..=6).contains(&n) => n,
                _ => return error("variable count must be between 1 and 6"),
            };
            let mut rng = SplitMix64::new(seed);
            let formula = random_cnf(&mut rng, vars, (vars as usize) + 2, 3);
            let label = json!({ "satisfiable": solve(&formula).is_sat() });
            (formula, label)
        }
        "sat" => {
            let (base, _) = match parse(argument) {
                Ok(p) => p,
                Err(e) => return e,
            };
            if base.is_empty() || base.len() > 12 {
                return error("the base formula needs between 1 and 12 clauses");
            }
            let out = sat_gadget(&base);
            let satisfiable = solve(&base).is_sat();
            let label = json!({
                "base_satisfiable": satisfiable,
                "distinguished_redundant": !satisfiable,
                "distinguished": out.distinguished.iter().map(|id| id.0).collect::<Vec<_>>(),
            });
            (out.formula, label)
        }
        "var" => {
            let (base, _) = match parse(argument) {
                Ok(p) => p,
                Err(e) => return e,
            };
            let all_vars: Vec<Var> = base.vars().into_iter().collect();
            if all_vars.is_empty() || all_vars.len() > 8 {
                return error("the base formula needs between 1 and 8 variables");
            }
            let scope: BTreeSet<Var> = all_vars.iter().take(all_vars.len().div_ceil(2)).copied().collect();
            let rest: BTreeSet<Var> = all_vars.iter().skip(all_vars.len().div_ceil(2)).copied().collect();
            let out = match var_gadget(&base, &scope) {
                Ok(o) => o,
                Err(e) => return error(e),
            };
            let q = match QbfInstance::new(scope.clone(), rest, base.clone()) {
                Ok(q) => q,
                Err(e) => return error(e),
            };
            let redundant = match eval_exists_forall(&q) {
                Ok(v) => !v,
                Err(e) => return error(e),
            };
            let label = json!({
                "scope": scope.iter().map(|v| v.index()).collect::<Vec<_>>(),
                "distinguished_var_redundant": redundant,
                "distinguished": out.distinguished.iter().map(|id| id.0).collect::<Vec<_>>(),
            });
            (out.formula, label)
        }
        "cond" => {
            let (base, _) = match parse(argument) {
                Ok(p) => p,
                Err(e) => return e,
            };
            if base.len() > 12 {
                return error("the base formula needs at most 12 clauses");
            }
            let out = cond_clause_gadget(&base);
            let satisfiable = solve(&base).is_sat();
            let label = json!({
                "base_satisfiable": satisfiable,
                "distinguished_cond_redundant": !satisfiable,
                "distinguished": out.distinguished.iter().map(|id| id.0).collect::<Vec<_>>(),
            });
            (out.formula, label)
        }
        _ => return error("unknown generator kind"),
    };
    let (formula, label) = built;
    json!({
        "dimacs": write_dimacs(&formula),
        "vars": formula.universe(),
        "clauses": formula.len(),
        "label": label,
    })
    .to_string()
}

/// Revision of the first formula by the second, both DIMACS.
#[wasm_bindgen]
pub fn revise_formulas(base: &str, revisor: &str) -> String {
    let (pi, _) = match parse(base) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let (gamma, _) = match parse(revisor) {
        Ok(p) => p,
        Err(e) => return e,
    };
    match revise_capped(&pi, &gamma, 16) {
        Ok(outcome) => {
            let clause_texts: Vec<String> = pi.ids().map(|id| pi.clause(id).expect("valid").to_string()).collect();
            let mut value = report::revision_value(&outcome);
            value["base_clauses"] = json!(clause_texts);
            value.to_string()
        }
        Err(e) => error(e),
    }
}

fn _assert_ids_are_plain(id: ClauseId) -> usize {
    id.0
}
