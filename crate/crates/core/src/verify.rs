//! Independent oracles: model checking, implication by a plugin-free
//! sub-solver, exhaustive truth tables and gliding-bound membership.

use thiserror::Error;

use crate::eclause::glide::glide_clause;
use crate::eclause::meta::ClauseMeta;
use crate::formula::{eval, Assignment, Clause, Evaluation, Formula};
use crate::lit::Var;
use crate::solver::{solve, Budget, Outcome, SolveError, SolverConfig};

/// Conflict budget of one implication check.
pub const DEFAULT_IMPLICATION_BUDGET: u64 = 1_000_000;

/// Largest formula [`brute_force_sat`] accepts.
pub const BRUTE_FORCE_MAX_VARS: u32 = 24;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("variable {0} is unassigned in the model")]
    PartialModel(Var),
    #[error("{num_vars} variables is too many for a truth table (max {BRUTE_FORCE_MAX_VARS})")]
    TooManyVars { num_vars: u32 },
    #[error("clause {clause:?} mentions a variable beyond {num_vars}")]
    ClauseOutOfRange { clause: Clause, num_vars: u32 },
    #[error("the formula carries no gliding metadata")]
    NoGlideMetadata,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Implication {
    Implied,
    NotImplied,
    /// The sub-solver ran out of budget.
    Unknown,
}

/// True iff every clause is satisfied. The model must be total.
pub fn check_model(f: &Formula, model: &Assignment) -> Result<bool, VerifyError> {
    if let Some(v) = (1..=f.num_vars()).map(Var::new).find(|&v| model.get(v).is_none()) {
        return Err(VerifyError::PartialModel(v));
    }
    Ok(eval(f, model) == Evaluation::Satisfied)
}

/// Decides `f ⊨ c` by refuting `f ∧ ¬c` with a fresh solver that has every
/// E-clause source disabled.
pub fn check_implied(f: &Formula, c: &Clause, max_conflicts: u64) -> Result<Implication, VerifyError> {
    if c.max_var().is_some_and(|v| v.get() > f.num_vars()) {
        return Err(VerifyError::ClauseOutOfRange { clause: c.clone(), num_vars: f.num_vars() });
    }
    let mut g = Formula::new(f.num_vars());
    for clause in f.clauses() {
        g.push_with_meta(clause.clone(), ClauseMeta::PLAIN).expect("same variable range");
    }
    for &l in c.lits() {
        g.push_with_meta(Clause::from_vec_unchecked(vec![!l]), ClauseMeta::PLAIN).expect("checked above");
    }
    let report = solve(&g, SolverConfig::default(), Budget::conflicts(max_conflicts))?;
    Ok(match report.outcome {
        Outcome::Unsat => Implication::Implied,
        Outcome::Sat => Implication::NotImplied,
        Outcome::Timeout => Implication::Unknown,
    })
}

/// Exhaustive search; returns the first model in binary-counting order
/// (variable 1 is the lowest bit).
pub fn brute_force_sat(f: &Formula) -> Result<Option<Assignment>, VerifyError> {
    let n = f.num_vars();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(VerifyError::TooManyVars { num_vars: n });
    }
    let masks: Vec<(u32, u32)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.lits().iter().fold((0, 0), |(pos, neg), l| {
                let bit = 1u32 << (l.var().get() - 1);
                if l.is_positive() { (pos | bit, neg) } else { (pos, neg | bit) }
            })
        })
        .collect();
    for x in 0..(1u64 << n) {
        let x = x as u32;
        if masks.iter().all(|&(pos, neg)| x & pos != 0 || !x & neg != 0) {
            let mut a = Assignment::new(n);
            for v in 1..=n {
                a.set(Var::new(v), x >> (v - 1) & 1 == 1);
            }
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `f ⊨ c` by truth table.
pub fn brute_force_implied(f: &Formula, c: &Clause) -> Result<bool, VerifyError> {
    let mut g = f.clone();
    for &l in c.lits() {
        g.push(Clause::from_vec_unchecked(vec![!l]))
            .map_err(|_| VerifyError::ClauseOutOfRange { clause: c.clone(), num_vars: f.num_vars() })?;
    }
    Ok(brute_force_sat(&g)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// A shift within the recorded bounds leaves the formula.
    ShiftMissing,
    /// The shift one past the recorded bound is still in the formula, so the
    /// bound is not maximal.
    BoundNotMaximal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlideViolation {
    /// Index of the clause in the formula.
    pub clause: usize,
    pub shift: i64,
    pub kind: ViolationKind,
}

/// Checks that every clause's gliding bounds are exactly maximal: each
/// shift within them is a clause of `f` and the shifts one beyond are not.
/// An empty formula has nothing to violate.
pub fn glide_membership_oracle(f: &Formula) -> Result<Vec<GlideViolation>, VerifyError> {
    if !f.is_empty() && f.metas().iter().all(|m| m.glide.is_none()) {
        return Err(VerifyError::NoGlideMetadata);
    }
    let keys = f.clause_keys();
    let member = |c: &Clause, shift: i64| {
        glide_clause(c, shift)
            .ok()
            .filter(|g| g.max_var().is_none_or(|v| v.get() <= f.num_vars()))
            .is_some_and(|g| keys.contains(&g.key()))
    };
    let mut out = Vec::new();
    for (i, (c, m)) in f.iter().enumerate() {
        let Some(b) = m.glide else { continue };
        for (bound, dir) in [(b.toward_zero as i64, -1i64), (b.away as i64, 1)] {
            for s in 1..=bound {
                if !member(c, dir * s) {
                    out.push(GlideViolation { clause: i, shift: dir * s, kind: ViolationKind::ShiftMissing });
                }
            }
            if member(c, dir * (bound + 1)) {
                out.push(GlideViolation { clause: i, shift: dir * (bound + 1), kind: ViolationKind::BoundNotMaximal });
            }
        }
    }
    Ok(out)
}
