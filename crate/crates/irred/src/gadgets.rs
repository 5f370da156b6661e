//! Generators for labeled benchmark instances: constructions that tie a
//! redundancy property of the output to a satisfiability or exists-forall
//! property of the input, plus a family with exponentially many IESs and a
//! seeded random CNF source.
//!
//! Fresh variables are allocated contiguously above the input universe and
//! recorded in a role-name map, so emitted DIMACS files and their manifests
//! are reproducible.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cnf::{Assignment, Clause, ClauseId, Formula, Literal, Var};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("input formulas share variable {0}")]
    SharedVariables(Var),
    #[error("{0}")]
    Precondition(&'static str),
    #[error("clause index {index} out of range for a formula with {len} clauses")]
    IndexOutOfRange { index: usize, len: usize },
}

/// A generated instance: the formula, the fresh-variable role map, the
/// distinguished clause ids the label refers to, and integer parameters of
/// the construction. `scope` is set by generators whose label is relative
/// to a variable subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetOutput {
    pub formula: Formula,
    pub fresh_vars: BTreeMap<String, Var>,
    pub distinguished: BTreeSet<ClauseId>,
    pub params: BTreeMap<String, u64>,
    pub scope: Option<BTreeSet<Var>>,
}

impl GadgetOutput {
    fn new(formula: Formula) -> GadgetOutput {
        GadgetOutput {
            formula,
            fresh_vars: BTreeMap::new(),
            distinguished: BTreeSet::new(),
            params: BTreeMap::new(),
            scope: None,
        }
    }
}

fn base_universe(f: &Formula) -> u32 {
    f.universe()
}

/// Guards each clause γ_i with a fresh selector: {¬c_i ∨ γ_i}. Every clause
/// of the output is necessary in it: the assignment of [`witness_model`]
/// falsifies exactly clause i.
pub fn irredundant_version(g: &Formula) -> GadgetOutput {
    assert!(!g.is_empty(), "input formula must be non-empty");
    let base = base_universe(g);
    let mut out = GadgetOutput::new(Formula::empty());
    let mut clauses = Vec::with_capacity(g.len());
    for (i, clause) in g.clauses().iter().enumerate() {
        let selector = Var::new(base + i as u32 + 1);
        out.fresh_vars.insert(format!("c{}", i + 1), selector);
        let mut lits = clause.literals().to_vec();
        lits.push(selector.negative());
        clauses.push(Clause::new(lits).expect("selectors are fresh"));
    }
    out.formula = Formula::with_universe(clauses, base + g.len() as u32);
    out
}

/// The model that sets selector i true, every other selector false, every
/// literal of clause i of `g` false, and all remaining variables false. It
/// satisfies every clause of the guarded formula except clause i.
pub fn witness_model(g: &Formula, out: &GadgetOutput, index: usize) -> Result<Assignment, GadgetError> {
    if index >= g.len() {
        return Err(GadgetError::IndexOutOfRange { index, len: g.len() });
    }
    let mut model = Assignment::all_false(out.formula.universe());
    let selector = out.fresh_vars[&format!("c{}", index + 1)];
    model.set(selector, true);
    for &lit in g.clauses()[index].literals() {
        model.set(lit.var(), !lit.is_positive());
    }
    Ok(model)
}

/// The guarded formula extended with the wide clause
/// ¬c_1 ∨ ⋯ ∨ ¬c_m ∨ ¬a over a fresh blocker `a`. The guarded clauses stay
/// irredundant no matter what; the appended clause (the distinguished one)
/// is redundant iff the input is unsatisfiable.
pub fn sat_gadget(g: &Formula) -> GadgetOutput {
    let mut out = irredundant_version(g);
    let base = out.formula.universe();
    let blocker = Var::new(base + 1);
    out.fresh_vars.insert("a".into(), blocker);
    let mut wide: Vec<Literal> = (1..=g.len()).map(|i| out.fresh_vars[&format!("c{i}")].negative()).collect();
    wide.push(blocker.negative());
    let mut clauses = out.formula.clauses().to_vec();
    clauses.push(Clause::new(wide).expect("selectors and blocker are distinct"));
    out.formula = Formula::with_universe(clauses, base + 1);
    out.distinguished = [ClauseId(g.len())].into();
    out
}

/// The verification-hardness pair: Π guards both inputs and appends both
/// wide clauses, Π′ leaves out the second one. Π′ is an IES of Π exactly
/// when `g` is satisfiable and `s` is not.
pub fn dp_pair(g: &Formula, s: &Formula) -> Result<(GadgetOutput, GadgetOutput), GadgetError> {
    if g.is_empty() || s.is_empty() {
        return Err(GadgetError::Precondition("both formulas must be non-empty"));
    }
    if let Some(&v) = g.vars().intersection(&s.vars()).next() {
        return Err(GadgetError::SharedVariables(v));
    }
    let base = g.universe().max(s.universe());
    let mut fresh = BTreeMap::new();
    let mut next = base;
    let mut alloc = |name: String, next: &mut u32| {
        *next += 1;
        let v = Var::new(*next);
        fresh.insert(name, v);
        v
    };

    let mut clauses: Vec<Clause> = Vec::new();
    let g_selectors: Vec<Var> = (1..=g.len()).map(|i| alloc(format!("c{i}"), &mut next)).collect();
    for (clause, &sel) in g.clauses().iter().zip(&g_selectors) {
        let mut lits = clause.literals().to_vec();
        lits.push(sel.negative());
        clauses.push(Clause::new(lits).expect("selectors are fresh"));
    }
    let g_blocker = alloc("a".into(), &mut next);
    let mut wide: Vec<Literal> = g_selectors.iter().map(|&c| c.negative()).collect();
    wide.push(g_blocker.negative());
    clauses.push(Clause::new(wide).expect("fresh variables"));
    let g_wide_id = ClauseId(clauses.len() - 1);

    let s_selectors: Vec<Var> = (1..=s.len()).map(|i| alloc(format!("d{i}"), &mut next)).collect();
    for (clause, &sel) in s.clauses().iter().zip(&s_selectors) {
        let mut lits = clause.literals().to_vec();
        lits.push(sel.negative());
        clauses.push(Clause::new(lits).expect("selectors are fresh"));
    }
    let s_blocker = alloc("e".into(), &mut next);
    let mut wide: Vec<Literal> = s_selectors.iter().map(|&d| d.negative()).collect();
    wide.push(s_blocker.negative());
    clauses.push(Clause::new(wide).expect("fresh variables"));
    let s_wide_id = ClauseId(clauses.len() - 1);

    let universe = next;
    let mut pi = GadgetOutput::new(Formula::with_universe(clauses.clone(), universe));
    pi.fresh_vars = fresh.clone();
    pi.distinguished = [g_wide_id, s_wide_id].into();

    clauses.remove(s_wide_id.0);
    fresh.remove("e");
    let mut candidate = GadgetOutput::new(Formula::with_universe(clauses, universe));
    candidate.fresh_vars = fresh;
    candidate.distinguished = [g_wide_id].into();
    Ok((pi, candidate))
}

/// The minimum-size construction: an unsatisfiable formula whose subsets of
/// size at most k = (r+2)·n + m that stay equivalent (that is,
/// unsatisfiable) correspond to assignments over the existential block that
/// make the matrix unsatisfiable for every universal completion.
///
/// Positive occurrences of the i-th existential variable are rewritten to
/// the negation of its fresh shadow z_i, so choosing the x-side or the
/// z-side clause group acts as assigning that variable. With
/// `satisfiable_mode` a fresh variable u joins every clause, making the
/// formula satisfiable (equivalent to u) while preserving the bound.
pub fn size_gadget(
    g: &Formula,
    x: &BTreeSet<Var>,
    y: &BTreeSet<Var>,
    satisfiable_mode: bool,
) -> Result<GadgetOutput, GadgetError> {
    if g.is_empty() {
        return Err(GadgetError::Precondition("matrix must contain at least one clause"));
    }
    if x.is_empty() {
        return Err(GadgetError::Precondition("existential block must contain at least one variable"));
    }
    if x.intersection(y).next().is_some() {
        return Err(GadgetError::Precondition("quantifier blocks must be disjoint"));
    }
    if !g.vars().iter().all(|v| x.contains(v) || y.contains(v)) {
        return Err(GadgetError::Precondition("matrix variables must be covered by the blocks"));
    }

    let n = x.len();
    let m = g.len();
    let r = m + 1;
    let k = (r + 2) * n + m;
    let t = k + 1;

    let block_max = x.iter().chain(y.iter()).map(|v| v.index()).max().unwrap_or(0);
    let mut next = base_universe(g).max(block_max);
    let mut fresh = BTreeMap::new();
    let mut alloc = |name: String, next: &mut u32| {
        *next += 1;
        let v = Var::new(*next);
        fresh.insert(name, v);
        v
    };

    let xs: Vec<Var> = x.iter().copied().collect();
    let x_copies: Vec<Vec<Var>> = (0..n)
        .map(|i| (0..r).map(|j| alloc(format!("x{}^{}", i + 1, j + 1), &mut next)).collect())
        .collect();
    let z_copies: Vec<Vec<Var>> = (0..n)
        .map(|i| (0..r).map(|j| alloc(format!("z{}^{}", i + 1, j + 1), &mut next)).collect())
        .collect();
    let z_shadow: Vec<Var> = (0..n).map(|i| alloc(format!("z{}", i + 1), &mut next)).collect();
    let w_vars: Vec<Var> = (0..n).map(|i| alloc(format!("w{}", i + 1), &mut next)).collect();
    let v_vars: Vec<Var> = (0..t).map(|i| alloc(format!("v{}", i + 1), &mut next)).collect();
    let tag = if satisfiable_mode { Some(alloc("u".into(), &mut next)) } else { None };

    let mk = |mut lits: Vec<Literal>| {
        if let Some(u) = tag {
            lits.push(u.positive());
        }
        Clause::new(lits).expect("fresh variables cannot clash")
    };

    let mut clauses: Vec<Clause> = Vec::new();
    // unit supplies for both sides of every existential variable
    for i in 0..n {
        for j in 0..r {
            clauses.push(mk(vec![x_copies[i][j].positive()]));
            clauses.push(mk(vec![z_copies[i][j].positive()]));
        }
    }
    // the r copies jointly imply the variable (or its shadow)
    for i in 0..n {
        let mut lits: Vec<Literal> = x_copies[i].iter().map(|&v| v.negative()).collect();
        lits.push(xs[i].positive());
        clauses.push(mk(lits));
        let mut lits: Vec<Literal> = z_copies[i].iter().map(|&v| v.negative()).collect();
        lits.push(z_shadow[i].positive());
        clauses.push(mk(lits));
    }
    // either side raises the per-variable flag
    for i in 0..n {
        clauses.push(mk(vec![xs[i].negative(), w_vars[i].positive()]));
        clauses.push(mk(vec![z_shadow[i].negative(), w_vars[i].positive()]));
    }
    // all flags raised force each rewritten matrix clause
    for clause in g.clauses() {
        let mut lits: Vec<Literal> = w_vars.iter().map(|&w| w.negative()).collect();
        for &lit in clause.literals() {
            let rewritten = match xs.iter().position(|&v| v == lit.var()) {
                Some(i) if lit.is_positive() => z_shadow[i].negative(),
                _ => lit,
            };
            lits.push(rewritten);
        }
        clauses.push(mk(lits));
    }
    // an unsatisfiable block too large to fit under the size bound
    for &v in &v_vars {
        clauses.push(mk(vec![v.positive()]));
    }
    clauses.push(mk(v_vars.iter().map(|&v| v.negative()).collect()));

    let mut out = GadgetOutput::new(Formula::with_universe(clauses, next));
    out.fresh_vars = fresh;
    out.params = [
        ("n".to_string(), n as u64),
        ("m".to_string(), m as u64),
        ("r".to_string(), r as u64),
        ("k".to_string(), k as u64),
        ("t".to_string(), t as u64),
    ]
    .into();
    Ok(out)
}

/// The usefulness construction: contradictory unit pairs over the
/// existential block, a fresh unit clause w, and w → γ_j for every matrix
/// clause. The distinguished clause (w) belongs to at least one IES exactly
/// when some existential assignment makes the matrix unsatisfiable for
/// every universal completion.
pub fn usefulness_gadget(g: &Formula, x: &BTreeSet<Var>, y: &BTreeSet<Var>) -> Result<GadgetOutput, GadgetError> {
    if x.intersection(y).next().is_some() {
        return Err(GadgetError::Precondition("quantifier blocks must be disjoint"));
    }
    if !g.vars().iter().all(|v| x.contains(v) || y.contains(v)) {
        return Err(GadgetError::Precondition("matrix variables must be covered by the blocks"));
    }
    let block_max = x.iter().chain(y.iter()).map(|v| v.index()).max().unwrap_or(0);
    let base = base_universe(g).max(block_max);
    let flag = Var::new(base + 1);

    let mut clauses: Vec<Clause> = Vec::new();
    for &v in x {
        clauses.push(Clause::unit(v.positive()));
        clauses.push(Clause::unit(v.negative()));
    }
    let flag_id = ClauseId(clauses.len());
    clauses.push(Clause::unit(flag.positive()));
    for clause in g.clauses() {
        let mut lits = clause.literals().to_vec();
        lits.push(flag.negative());
        clauses.push(Clause::new(lits).expect("flag is fresh"));
    }

    let mut out = GadgetOutput::new(Formula::with_universe(clauses, base + 1));
    out.fresh_vars.insert("w".into(), flag);
    out.distinguished = [flag_id].into();
    out.params = [("n".to_string(), x.len() as u64), ("m".to_string(), g.len() as u64)].into();
    Ok(out)
}

/// The var-redundancy construction: {¬a ∨ γ : γ ∈ Σ} ∪ {a} over a fresh a.
/// The distinguished unit (a) is var-redundant w.r.t. the recorded scope
/// exactly when every scope assignment extends to a model of Σ.
pub fn var_gadget(s: &Formula, x: &BTreeSet<Var>) -> Result<GadgetOutput, GadgetError> {
    let vars = s.vars();
    if !x.iter().all(|v| vars.contains(v)) {
        return Err(GadgetError::Precondition("scope variables must occur in the formula"));
    }
    let base = base_universe(s);
    let guard = Var::new(base + 1);
    let mut clauses: Vec<Clause> = Vec::new();
    for clause in s.clauses() {
        let mut lits = clause.literals().to_vec();
        lits.push(guard.negative());
        clauses.push(Clause::new(lits).expect("guard is fresh"));
    }
    let unit_id = ClauseId(clauses.len());
    clauses.push(Clause::unit(guard.positive()));

    let mut out = GadgetOutput::new(Formula::with_universe(clauses, base + 1));
    out.fresh_vars.insert("a".into(), guard);
    out.distinguished = [unit_id].into();
    out.scope = Some(x.clone());
    Ok(out)
}

/// The conditional clause construction: {a ∨ γ : γ ∈ Π} ∪ {a}. The
/// distinguished unit (a) is conditionally redundant exactly when the input
/// is unsatisfiable.
pub fn cond_clause_gadget(p: &Formula) -> GadgetOutput {
    let base = base_universe(p);
    let guard = Var::new(base + 1);
    let mut clauses: Vec<Clause> = Vec::new();
    for clause in p.clauses() {
        let mut lits = clause.literals().to_vec();
        lits.push(guard.positive());
        clauses.push(Clause::new(lits).expect("guard is fresh"));
    }
    let unit_id = ClauseId(clauses.len());
    clauses.push(Clause::unit(guard.positive()));

    let mut out = GadgetOutput::new(Formula::with_universe(clauses, base + 1));
    out.fresh_vars.insert("a".into(), guard);
    out.distinguished = [unit_id].into();
    out
}

/// The conditional set construction: {¬c_i ∨ a ∨ γ_i} ∪ {c_i ∨ a} ∪ {a}
/// over fresh selectors and guard. Every clause except the distinguished
/// unit (a) is conditionally irredundant, and (a) — hence the whole set —
/// is conditionally redundant exactly when the input is unsatisfiable.
pub fn cond_set_gadget(p: &Formula) -> Result<GadgetOutput, GadgetError> {
    if p.is_empty() {
        return Err(GadgetError::Precondition("input formula must be non-empty"));
    }
    let base = base_universe(p);
    let mut fresh = BTreeMap::new();
    let selectors: Vec<Var> = (0..p.len())
        .map(|i| {
            let v = Var::new(base + i as u32 + 1);
            fresh.insert(format!("c{}", i + 1), v);
            v
        })
        .collect();
    let guard = Var::new(base + p.len() as u32 + 1);
    fresh.insert("a".into(), guard);

    let mut clauses: Vec<Clause> = Vec::new();
    for (clause, &sel) in p.clauses().iter().zip(&selectors) {
        let mut lits = clause.literals().to_vec();
        lits.push(sel.negative());
        lits.push(guard.positive());
        clauses.push(Clause::new(lits).expect("fresh variables"));
    }
    for &sel in &selectors {
        clauses.push(Clause::new([sel.positive(), guard.positive()]).expect("fresh variables"));
    }
    let unit_id = ClauseId(clauses.len());
    clauses.push(Clause::unit(guard.positive()));

    let mut out = GadgetOutput::new(Formula::with_universe(clauses, guard.index()));
    out.fresh_vars = fresh;
    out.distinguished = [unit_id].into();
    Ok(out)
}

/// n variable-disjoint copies of the 4-clause set
/// {a ∨ ¬b, ¬a ∨ b, a ∨ c, b ∨ c}; each copy contributes an independent
/// binary choice, so the family has exactly 2^n IESs.
pub fn exponential_family(n: usize) -> Formula {
    assert!(n >= 1, "the family needs at least one copy");
    let mut clauses = Vec::with_capacity(4 * n);
    for i in 0..n {
        let base = 3 * i as u32;
        let (a, b, c) = (Var::new(base + 1), Var::new(base + 2), Var::new(base + 3));
        clauses.push(Clause::new([a.positive(), b.negative()]).expect("distinct"));
        clauses.push(Clause::new([a.negative(), b.positive()]).expect("distinct"));
        clauses.push(Clause::new([a.positive(), c.positive()]).expect("distinct"));
        clauses.push(Clause::new([b.positive(), c.positive()]).expect("distinct"));
    }
    Formula::with_universe(clauses, 3 * n as u32)
}

/// Seeded random CNF over `1..=n_vars`: `n_clauses` clauses of width
/// `1..=max_width` with distinct variables, so no clause is tautological.
/// Duplicate draws collapse by set semantics.
pub fn random_cnf(rng: &mut SplitMix64, n_vars: u32, n_clauses: usize, max_width: usize) -> Formula {
    assert!(n_vars >= 1);
    let width_cap = max_width.min(n_vars as usize).max(1);
    let mut clauses = Vec::with_capacity(n_clauses);
    for _ in 0..n_clauses {
        let width = 1 + rng.below(width_cap as u64) as usize;
        let mut pool: Vec<u32> = (1..=n_vars).collect();
        let mut lits = Vec::with_capacity(width);
        for slot in 0..width {
            let pick = slot + rng.below((pool.len() - slot) as u64) as usize;
            pool.swap(slot, pick);
            lits.push(Literal::new(Var::new(pool[slot]), rng.coin()));
        }
        clauses.push(Clause::new(lits).expect("distinct variables"));
    }
    Formula::with_universe(clauses, n_vars)
}
