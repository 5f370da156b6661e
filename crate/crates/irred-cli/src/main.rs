//! Batch command-line surface over the redundancy analyses, with
//! deterministic text and JSON reports.
//!
//! Verdicts live in the report, never in the exit code: 0 means the run
//! succeeded, 2 is a parse/usage error, 3 a cap overrun.

use std::collections::BTreeSet;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use irred::cnf::{ClauseId, Formula, Var};
use irred::conditional::{cond_irredundancy_witness, revise_capped, RevisionError};
use irred::dimacs::{parse_dimacs, write_dimacs, DimacsError, ParsedCnf};
use irred::gadgets::{
    cond_clause_gadget, cond_set_gadget, dp_pair, exponential_family, irredundant_version, random_cnf, sat_gadget,
    size_gadget, usefulness_gadget, var_gadget, witness_model, GadgetError, GadgetOutput,
};
use irred::redundancy::{
    classify_clauses, enumerate_ies, greedy_ies, has_unique_ies, is_clause_redundant, min_ies_witness,
    DEFAULT_IES_CAP,
};
use irred::report;
use irred::rng::SplitMix64;
use irred::solver::{eval_exists_forall_capped, solve, CapExceeded, QbfInstance, DEFAULT_ENUM_CAP, DEFAULT_EXISTS_CAP};
use irred::var_redundancy::{is_clause_var_redundant_capped, VarRedundancyError, DEFAULT_SCOPE_CAP};

/// Redundancy analysis for CNF formulas in DIMACS format.
#[derive(Parser)]
#[command(name = "irred", version, about)]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override enumeration caps: IES count for `ies --all`, scope size for
    /// `varred`, universe size for `revise`.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report which clauses are redundant and whether the formula is.
    Check {
        /// DIMACS file, or `-` for standard input.
        input: String,
        /// Restrict the report to one clause id.
        #[arg(long, value_name = "ID")]
        clause: Option<usize>,
    },
    /// Classify every clause as necessary, useful or useless.
    Classify { input: String },
    /// Extract one IES greedily, or enumerate all of them.
    Ies {
        input: String,
        /// Enumerate every IES (up to the cap) instead of one greedy pass.
        #[arg(long)]
        all: bool,
        /// Greedy removal order as a comma-separated clause id permutation.
        #[arg(long, value_name = "IDS")]
        order: Option<String>,
    },
    /// Decide whether the formula has a unique IES.
    Unique { input: String },
    /// Minimum size of an equivalent subset, with a witness.
    Minsize { input: String },
    /// Var-redundancy relative to a variable scope.
    Varred {
        input: String,
        /// Scope V as a comma-separated list of DIMACS variable indices.
        #[arg(long, value_name = "VARS")]
        vars: String,
        #[arg(long, value_name = "ID")]
        clause: Option<usize>,
    },
    /// Conditional redundancy under maximal-consistent-subsets revision.
    Condred {
        input: String,
        #[arg(long, value_name = "ID")]
        clause: Option<usize>,
        /// Include the witness model pair for irredundant clauses.
        #[arg(long)]
        witness: bool,
    },
    /// Revise the formula with a second DIMACS file.
    Revise {
        input: String,
        /// The revising formula Γ.
        #[arg(long = "with", value_name = "FILE")]
        revisor: String,
    },
    /// Generate a labeled benchmark instance plus a JSON manifest.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Guard every clause of the base with a fresh selector; every output
    /// clause is necessary.
    Irredundant {
        input: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// Guarded base plus a wide blocker clause that is redundant iff the
    /// base is unsatisfiable.
    Sat {
        input: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// A formula/subset pair; the subset is an IES of the formula iff the
    /// first base is satisfiable and the second is not.
    Dp {
        first: String,
        second: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// Size-bound instance: an IES of size at most k exists iff some
    /// assignment of the existential block makes the base unsatisfiable.
    Size {
        input: String,
        /// Existential block as comma-separated variable indices.
        #[arg(long, value_name = "VARS")]
        exists: String,
        /// Add a fresh variable to every clause, making the instance
        /// satisfiable while preserving the bound.
        #[arg(long)]
        satisfiable: bool,
        #[command(flatten)]
        out: GenOut,
    },
    /// Usefulness instance: the distinguished unit sits in some IES iff the
    /// same exists-forall question is true.
    Useful {
        input: String,
        #[arg(long, value_name = "VARS")]
        exists: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// Guarded-unit instance: the distinguished unit is var-redundant
    /// w.r.t. the scope iff every scope assignment extends to a model.
    Var {
        input: String,
        #[arg(long, value_name = "VARS")]
        vars: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// Conditional-redundancy instance for one clause.
    CondClause {
        input: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// Conditional-redundancy instance for a whole set.
    CondSet {
        input: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// n variable-disjoint copies of the two-IES example (2^n IESs).
    Family {
        #[arg(long, default_value_t = 2, value_name = "N")]
        copies: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Seeded random CNF with a satisfiability label.
    Random {
        #[arg(long, default_value_t = 4, value_name = "N")]
        rvars: u32,
        #[arg(long, default_value_t = 6, value_name = "N")]
        rclauses: usize,
        #[arg(long, default_value_t = 3, value_name = "N")]
        width: usize,
        #[arg(long, default_value_t = 0, value_name = "N")]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Args)]
struct GenOut {
    /// Output stem: writes `<stem>.cnf` (and `<stem>.sub.cnf` for `dp`)
    /// plus `<stem>.manifest.json`.
    #[arg(short, long, value_name = "STEM")]
    output: String,
}

enum CliError {
    Usage(String),
    Cap(String),
}

impl From<DimacsError> for CliError {
    fn from(e: DimacsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CapExceeded> for CliError {
    fn from(e: CapExceeded) -> Self {
        CliError::Cap(e.to_string())
    }
}

impl From<GadgetError> for CliError {
    fn from(e: GadgetError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<VarRedundancyError> for CliError {
    fn from(e: VarRedundancyError) -> Self {
        match e {
            VarRedundancyError::CapExceeded(c) => c.into(),
            VarRedundancyError::UnknownClauseId(u) => CliError::Usage(u.to_string()),
        }
    }
}

impl From<RevisionError> for CliError {
    fn from(e: RevisionError) -> Self {
        match e {
            RevisionError::CapExceeded(c) => c.into(),
            RevisionError::InconsistentRevisor => CliError::Usage(e.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
    }
}

struct Loaded {
    path: String,
    digest: String,
    parsed: ParsedCnf,
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn load(path: &str) -> Result<Loaded, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?
    };
    let parsed = parse_dimacs(&text)?;
    Ok(Loaded {
        path: path.to_string(),
        digest: format!("fnv1a64:{:016x}", fnv1a64(text.as_bytes())),
        parsed,
    })
}

fn input_value(loaded: &Loaded) -> Value {
    json!({
        "path": loaded.path,
        "digest": loaded.digest,
        "vars": loaded.parsed.formula.universe(),
        "clauses": loaded.parsed.formula.len(),
        "warnings": report::warnings_value(&loaded.parsed.warnings),
    })
}

fn parse_id(pi: &Formula, id: usize) -> Result<ClauseId, CliError> {
    let id = ClauseId(id);
    pi.clause(id).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(id)
}

fn parse_var_list(text: &str) -> Result<BTreeSet<Var>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .ok()
                .filter(|&n| n >= 1)
                .map(Var::new)
                .ok_or_else(|| CliError::Usage(format!("'{s}' is not a variable index")))
        })
        .collect()
}

fn parse_order(pi: &Formula, text: &str) -> Result<Vec<ClauseId>, CliError> {
    let order: Vec<ClauseId> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map(ClauseId)
                .map_err(|_| CliError::Usage(format!("'{s}' is not a clause id")))
        })
        .collect::<Result<_, _>>()?;
    let mut sorted = order.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != pi.len() || !sorted.iter().copied().eq(pi.ids()) {
        return Err(CliError::Usage("--order must be a permutation of the formula's clause ids".into()));
    }
    Ok(order)
}

fn id_set_text(ids: &BTreeSet<ClauseId>) -> String {
    let inner: Vec<String> = ids.iter().map(|id| id.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn emit(cli_json: bool, command: &str, inputs: Value, result: Value, text: Vec<String>, started: Instant) {
    if cli_json {
        let envelope = json!({
            "schema_version": 1,
            "command": command,
            "input": inputs,
            "result": result,
            "timing_ms": started.elapsed().as_millis() as u64,
        });
        println!("{}", serde_json::to_string_pretty(&envelope).expect("valid json"));
    } else {
        for line in text {
            println!("{line}");
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let json_mode = cli.json;
    match cli.command {
        Command::Check { input, clause } => {
            let loaded = load(&input)?;
            let pi = &loaded.parsed.formula;
            let ids: Vec<ClauseId> = match clause {
                Some(id) => vec![parse_id(pi, id)?],
                None => pi.ids().collect(),
            };
            let verdicts: Vec<(ClauseId, bool)> = ids
                .iter()
                .map(|&id| Ok((id, is_clause_redundant(pi, id).map_err(|e| CliError::Usage(e.to_string()))?)))
                .collect::<Result<_, CliError>>()?;
            let mut result = report::redundancy_value(pi, &verdicts, Some(&loaded.parsed.clause_lines));
            let mut text = Vec::new();
            if clause.is_some() {
                result["formula_redundant"] = Value::Null;
            } else {
                text.push(format!("formula redundant: {}", result["formula_redundant"]));
            }
            for &(id, redundant) in &verdicts {
                text.push(format!(
                    "  [{id}] {}  {}",
                    pi.clause(id).expect("checked"),
                    if redundant { "redundant" } else { "irredundant" }
                ));
            }
            emit(json_mode, "check", input_value(&loaded), result, text, started);
        }
        Command::Classify { input } => {
            let loaded = load(&input)?;
            let pi = &loaded.parsed.formula;
            let rep = classify_clauses(pi);
            let result = report::classification_value(pi, &rep, Some(&loaded.parsed.clause_lines));
            let mut text = Vec::new();
            for id in pi.ids() {
                text.push(format!("  [{id}] {}  {}", pi.clause(id).expect("valid"), rep.statuses[id.0].label()));
            }
            text.push(format!("necessary set: {}", id_set_text(&rep.necessary)));
            let count = match rep.ies_count {
                irred::redundancy::IesCountHint::Exact(n) => n.to_string(),
                irred::redundancy::IesCountHint::AtLeast(n) => format!("at least {n}"),
            };
            text.push(format!("ies count: {count}"));
            emit(json_mode, "classify", input_value(&loaded), result, text, started);
        }
        Command::Ies { input, all, order } => {
            let loaded = load(&input)?;
            let pi = &loaded.parsed.formula;
            if all {
                let cap = cli.cap.map_or(DEFAULT_IES_CAP, |c| c as usize);
                let rep = enumerate_ies(pi, cap);
                let result = report::ies_report_value(&rep);
                let mut text = vec![format!("ies count: {}{}", rep.ies.len(), if rep.truncated { " (cap hit)" } else { "" })];
                for ies in &rep.ies {
                    text.push(format!("  {}", id_set_text(ies)));
                }
                emit(json_mode, "ies", input_value(&loaded), result, text, started);
            } else {
                let order = match &order {
                    Some(o) => Some(parse_order(pi, o)?),
                    None => None,
                };
                let ies = greedy_ies(pi, order.as_deref());
                let result = json!({
                    "ies": report::id_list(ies.iter().copied()),
                    "order": order.as_ref().map(|o| o.iter().map(|id| id.0).collect::<Vec<_>>()),
                    "size": ies.len(),
                });
                let text = vec![format!("ies: {}", id_set_text(&ies))];
                emit(json_mode, "ies", input_value(&loaded), result, text, started);
            }
        }
        Command::Unique { input } => {
            let loaded = load(&input)?;
            let pi = &loaded.parsed.formula;
            let unique = has_unique_ies(pi);
            let necessary = irred::redundancy::necessary_ids(pi);
            let result = json!({
                "unique": unique,
                "necessary_ids": report::id_list(necessary.iter().copied()),
                "ies": if unique { report::id_list(necessary.iter().copied()) } else { Value::Null },
            });
            let mut text = vec![format!("unique ies: {unique}")];
            if unique {
                text.push(format!("ies: {}", id_set_text(&necessary)));
            }
            emit(json_mode, "unique", input_value(&loaded), result, text, started);
        }
        Command::Minsize { input } => {
            let loaded = load(&input)?;
            let pi = &loaded.parsed.formula;
            let (size, witness) = min_ies_witness(pi);
            let result = json!({
                "min_size": size,
                "witness": report::id_list(witness.iter().copied()),
            });
            let text = vec![format!("minimum size: {size}"), format!("witness: {}", id_set_text(&witness))];
            emit(json_mode, "minsize", input_value(&loaded), result, text, started);
        }
        Command::Varred { input, vars, clause } => {
            let loaded = load(&input)?;
            let pi = &loaded.parsed.formula;
            let scope = parse_var_list(&vars)?;
            let cap = cli.cap.unwrap_or(DEFAULT_SCOPE_CAP);
            let ids: Vec<ClauseId> = match clause {
                Some(id) => vec![parse_id(pi, id)?],
                None => pi.ids().collect(),
            };
            let mut verdicts = Vec::new();
            for &id in &ids {
                verdicts.push((id, is_clause_var_redundant_capped(pi, id, &scope, cap)?));
            }
            let clauses: Vec<Value> = verdicts
                .iter()
                .map(|&(id, red)| {
                    json!({
                        "id": id.0,
                        "line": loaded.parsed.clause_lines.get(id.0),
                        "clause": pi.clause(id).expect("valid").to_string(),
                        "var_redundant": red,
                    })
                })
                .collect();
            let formula_verdict = if clause.is_some() {
                Value::Null
            } else {
                Value::Bool(verdicts.iter().any(|&(_, r)| r))
            };
            let result = json!({
                "scope": scope.iter().map(|v| v.index()).collect::<Vec<_>>(),
                "clauses": clauses,
                "formula_var_redundant": formula_verdict,
            });
            let mut text = vec![format!(
                "scope: {{{}}}",
                scope.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
            )];
            for &(id, red) in &verdicts {
                text.push(format!(
                    "  [{id}] {}  {}",
                    pi.clause(id).expect("valid"),
                    if red { "var-redundant" } else { "not var-redundant" }
                ));
            }
            if clause.is_none() {
                text.push(format!("formula var-redundant: {}", verdicts.iter().any(|&(_, r)| r)));
            }
            emit(json_mode, "varred", input_value(&loaded), result, text, started);
        }
        Command::Condred { input, clause, witness } => {
            let loaded = load(&input)?;
            let pi = &loaded.parsed.formula;
            let ids: Vec<ClauseId> = match clause {
                Some(id) => vec![parse_id(pi, id)?],
                None => pi.ids().collect(),
            };
            let mut clauses = Vec::new();
            let mut text = Vec::new();
            let mut any = false;
            for &id in &ids {
                let pair = cond_irredundancy_witness(pi, id).map_err(|e| CliError::Usage(e.to_string()))?;
                let redundant = pair.is_none();
                any |= redundant;
                let witness_value = match (&pair, witness) {
                    (Some(p), true) => json!({
                        "omega": p.omega.to_string(),
                        "omega_prime": p.omega_prime.to_string(),
                    }),
                    _ => Value::Null,
                };
                clauses.push(json!({
                    "id": id.0,
                    "line": loaded.parsed.clause_lines.get(id.0),
                    "clause": pi.clause(id).expect("valid").to_string(),
                    "cond_redundant": redundant,
                    "witness": witness_value,
                }));
                let mut line = format!(
                    "  [{id}] {}  {}",
                    pi.clause(id).expect("valid"),
                    if redundant { "conditionally redundant" } else { "conditionally irredundant" }
                );
                if let (Some(p), true) = (&pair, witness) {
                    line.push_str(&format!("  (witness {} | {})", p.omega, p.omega_prime));
                }
                text.push(line);
            }
            let formula_verdict = if clause.is_some() { Value::Null } else { Value::Bool(any) };
            if clause.is_none() {
                text.insert(0, format!("formula conditionally redundant: {any}"));
            }
            let result = json!({ "clauses": clauses, "formula_cond_redundant": formula_verdict });
            emit(json_mode, "condred", input_value(&loaded), result, text, started);
        }
        Command::Revise { input, revisor } => {
            let loaded = load(&input)?;
            let gamma = load(&revisor)?;
            let cap = cli.cap.unwrap_or(DEFAULT_ENUM_CAP);
            let outcome = revise_capped(&loaded.parsed.formula, &gamma.parsed.formula, cap)?;
            let result = report::revision_value(&outcome);
            let mut text = vec![format!("maximal consistent subsets: {}", outcome.maximal_subsets.len())];
            for subset in &outcome.maximal_subsets {
                text.push(format!("  {}", id_set_text(subset)));
            }
            text.push(format!("models of the revision: {}", outcome.models.len()));
            for m in &outcome.models {
                text.push(format!("  {m}"));
            }
            let inputs = json!({
                "formula": input_value(&loaded),
                "revisor": input_value(&gamma),
            });
            emit(json_mode, "revise", inputs, result, text, started);
        }
        Command::Gen(gen) => run_gen(gen, json_mode, cli.cap, started)?,
    }
    Ok(())
}

fn write_outputs(stem: &str, files: &[(&str, String)]) -> Result<Vec<String>, CliError> {
    let mut written = Vec::new();
    for (suffix, content) in files {
        let path = format!("{stem}{suffix}");
        std::fs::write(&path, content).map_err(|e| CliError::Usage(format!("cannot write {path}: {e}")))?;
        written.push(path);
    }
    Ok(written)
}

#[allow(clippy::too_many_arguments)]
fn gen_emit(
    json_mode: bool,
    generator: &str,
    out: &GadgetOutput,
    expected: Value,
    source: Value,
    stem: &str,
    extra_files: &[(&str, String)],
    started: Instant,
) -> Result<(), CliError> {
    let manifest = report::gadget_manifest(generator, out, expected, source);
    let mut files: Vec<(&str, String)> = vec![(".cnf", write_dimacs(&out.formula))];
    files.extend(extra_files.iter().cloned());
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("valid json") + "\n";
    files.push((".manifest.json", manifest_text));
    let written = write_outputs(stem, &files)?;
    let result = json!({
        "files": written,
        "manifest": manifest,
    });
    let mut text = Vec::new();
    for path in written {
        text.push(format!("wrote {path}"));
    }
    emit(json_mode, "gen", json!({ "generator": generator }), result, text, started);
    Ok(())
}

fn source_value(loaded: &Loaded) -> Value {
    json!({ "path": loaded.path, "digest": loaded.digest })
}

fn run_gen(gen: GenCommand, json_mode: bool, cap: Option<u32>, started: Instant) -> Result<(), CliError> {
    match gen {
        GenCommand::Irredundant { input, out } => {
            let loaded = load(&input)?;
            let base = &loaded.parsed.formula;
            if base.is_empty() {
                return Err(CliError::Usage("the base formula must be non-empty".into()));
            }
            let gadget = irredundant_version(base);
            // verify the label: each guard witness falsifies exactly its clause
            for index in 0..base.len() {
                let w = witness_model(base, &gadget, index)?;
                for (i, clause) in gadget.formula.clauses().iter().enumerate() {
                    assert_eq!(clause.is_satisfied_by(&w), i != index);
                }
            }
            let expected = json!({
                "all_clauses_necessary": true,
                "oracle": "guard witness models, one falsified clause each",
            });
            gen_emit(json_mode, "irredundant", &gadget, expected, source_value(&loaded), &out.output, &[], started)
        }
        GenCommand::Sat { input, out } => {
            let loaded = load(&input)?;
            let base = &loaded.parsed.formula;
            if base.is_empty() {
                return Err(CliError::Usage("the base formula must be non-empty".into()));
            }
            let gadget = sat_gadget(base);
            let satisfiable = solve(base).is_sat();
            let expected = json!({
                "base_satisfiable": satisfiable,
                "distinguished_redundant": !satisfiable,
                "oracle": "complete search on the base formula",
            });
            gen_emit(json_mode, "sat", &gadget, expected, source_value(&loaded), &out.output, &[], started)
        }
        GenCommand::Dp { first, second, out } => {
            let a = load(&first)?;
            let b = load(&second)?;
            let (pi, candidate) = dp_pair(&a.parsed.formula, &b.parsed.formula)?;
            let first_sat = solve(&a.parsed.formula).is_sat();
            let second_sat = solve(&b.parsed.formula).is_sat();
            let expected = json!({
                "first_satisfiable": first_sat,
                "second_satisfiable": second_sat,
                "subset_is_ies": first_sat && !second_sat,
                "oracle": "complete search on both base formulas",
            });
            let source = json!({ "first": source_value(&a), "second": source_value(&b) });
            let extra = [(".sub.cnf", write_dimacs(&candidate.formula))];
            gen_emit(json_mode, "dp", &pi, expected, source, &out.output, &extra, started)
        }
        GenCommand::Size { input, exists, satisfiable, out } => {
            let loaded = load(&input)?;
            let base = &loaded.parsed.formula;
            let x = parse_var_list(&exists)?;
            let y: BTreeSet<Var> = base.vars().difference(&x).copied().collect();
            let gadget = size_gadget(base, &x, &y, satisfiable)?;
            let q = QbfInstance::new(x.clone(), y, base.clone())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let label = eval_exists_forall_capped(&q, cap.unwrap_or(DEFAULT_EXISTS_CAP))?;
            let expected = json!({
                "exists_forall_unsat": label,
                "has_ies_of_size_k": label,
                "oracle": "existential-block enumeration with one search per point",
            });
            gen_emit(json_mode, "size", &gadget, expected, source_value(&loaded), &out.output, &[], started)
        }
        GenCommand::Useful { input, exists, out } => {
            let loaded = load(&input)?;
            let base = &loaded.parsed.formula;
            let x = parse_var_list(&exists)?;
            let y: BTreeSet<Var> = base.vars().difference(&x).copied().collect();
            let gadget = usefulness_gadget(base, &x, &y)?;
            let q = QbfInstance::new(x.clone(), y, base.clone())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let label = eval_exists_forall_capped(&q, cap.unwrap_or(DEFAULT_EXISTS_CAP))?;
            let expected = json!({
                "exists_forall_unsat": label,
                "distinguished_useful": label,
                "oracle": "existential-block enumeration with one search per point",
            });
            gen_emit(json_mode, "useful", &gadget, expected, source_value(&loaded), &out.output, &[], started)
        }
        GenCommand::Var { input, vars, out } => {
            let loaded = load(&input)?;
            let base = &loaded.parsed.formula;
            let x = parse_var_list(&vars)?;
            let gadget = var_gadget(base, &x)?;
            let y: BTreeSet<Var> = base.vars().difference(&x).copied().collect();
            let q = QbfInstance::new(x.clone(), y, base.clone())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let forall_exists = !eval_exists_forall_capped(&q, cap.unwrap_or(DEFAULT_EXISTS_CAP))?;
            let expected = json!({
                "forall_exists_sat": forall_exists,
                "distinguished_var_redundant": forall_exists,
                "oracle": "existential-block enumeration with one search per point",
            });
            gen_emit(json_mode, "var", &gadget, expected, source_value(&loaded), &out.output, &[], started)
        }
        GenCommand::CondClause { input, out } => {
            let loaded = load(&input)?;
            let base = &loaded.parsed.formula;
            let gadget = cond_clause_gadget(base);
            let satisfiable = solve(base).is_sat();
            let expected = json!({
                "base_satisfiable": satisfiable,
                "distinguished_cond_redundant": !satisfiable,
                "oracle": "complete search on the base formula",
            });
            gen_emit(json_mode, "cond-clause", &gadget, expected, source_value(&loaded), &out.output, &[], started)
        }
        GenCommand::CondSet { input, out } => {
            let loaded = load(&input)?;
            let base = &loaded.parsed.formula;
            let gadget = cond_set_gadget(base)?;
            let satisfiable = solve(base).is_sat();
            let expected = json!({
                "base_satisfiable": satisfiable,
                "formula_cond_redundant": !satisfiable,
                "oracle": "complete search on the base formula",
            });
            gen_emit(json_mode, "cond-set", &gadget, expected, source_value(&loaded), &out.output, &[], started)
        }
        GenCommand::Family { copies, out } => {
            if copies == 0 {
                return Err(CliError::Usage("--copies must be at least 1".into()));
            }
            let formula = exponential_family(copies);
            let mut gadget = GadgetOutput {
                formula,
                fresh_vars: Default::default(),
                distinguished: Default::default(),
                params: Default::default(),
                scope: None,
            };
            gadget.params.insert("copies".into(), copies as u64);
            let expected = json!({
                "ies_count": 1u64 << copies,
                "oracle": "one independent binary choice per copy",
            });
            gen_emit(json_mode, "family", &gadget, expected, json!({ "copies": copies }), &out.output, &[], started)
        }
        GenCommand::Random { rvars, rclauses, width, seed, out } => {
            if rvars == 0 {
                return Err(CliError::Usage("--rvars must be at least 1".into()));
            }
            let mut rng = SplitMix64::new(seed);
            let formula = random_cnf(&mut rng, rvars, rclauses, width.max(1));
            let satisfiable = solve(&formula).is_sat();
            let gadget = GadgetOutput {
                formula,
                fresh_vars: Default::default(),
                distinguished: Default::default(),
                params: [("seed".to_string(), seed)].into(),
                scope: None,
            };
            let expected = json!({
                "satisfiable": satisfiable,
                "oracle": "complete search",
            });
            gen_emit(json_mode, "random", &gadget, expected, json!({ "seed": seed }), &out.output, &[], started)
        }
    }
}
