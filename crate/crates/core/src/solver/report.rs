use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Sat,
    Unsat,
    Timeout,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Sat => "SAT",
            Outcome::Unsat => "UNSAT",
            Outcome::Timeout => "TIMEOUT",
        }
    }

    /// Conventional SAT-competition exit code.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Sat => 10,
            Outcome::Unsat => 20,
            Outcome::Timeout => 0,
        }
    }
}

/// Counters of one run. For TIMEOUT they describe the state at cutoff.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    /// DIMACS literals of a satisfying assignment, one per variable.
    pub model: Option<Vec<i32>>,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub reductions: u64,
    pub eclauses_generated: u64,
    pub eclauses_filtered: u64,
    pub eclauses_added: u64,
    /// Live clauses of the E-family: installed E-clauses plus learned
    /// clauses with at least one E-family premise.
    pub eclauses_live: u64,
    pub eclause_family_total: u64,
    /// Live learned clauses derived without any E-family premise.
    pub conflict_clauses_live: u64,
    pub conflict_clauses_total: u64,
    /// Wall-clock seconds spent generating, filtering and installing
    /// E-clauses.
    pub eclause_overhead_time: f64,
    pub total_time: f64,
}

/// A report with the wall-clock fields removed, for reproducibility checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counters {
    pub outcome: Outcome,
    pub model: Option<Vec<i32>>,
    pub values: [u64; 12],
}

impl SolveReport {
    pub fn active_e(&self) -> Option<f64> {
        ratio(self.eclauses_live, self.eclause_family_total)
    }

    pub fn active_c(&self) -> Option<f64> {
        ratio(self.conflict_clauses_live, self.conflict_clauses_total)
    }

    pub fn counters(&self) -> Counters {
        Counters {
            outcome: self.outcome,
            model: self.model.clone(),
            values: [
                self.conflicts,
                self.decisions,
                self.propagations,
                self.restarts,
                self.reductions,
                self.eclauses_generated,
                self.eclauses_filtered,
                self.eclauses_added,
                self.eclauses_live,
                self.eclause_family_total,
                self.conflict_clauses_live,
                self.conflict_clauses_total,
            ],
        }
    }

    /// `key=value` lines, without the model.
    pub fn key_values(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "result={}", self.outcome.as_str());
        for (k, v) in [
            ("conflicts", self.conflicts),
            ("decisions", self.decisions),
            ("propagations", self.propagations),
            ("restarts", self.restarts),
            ("reductions", self.reductions),
            ("eclauses_generated", self.eclauses_generated),
            ("eclauses_filtered", self.eclauses_filtered),
            ("eclauses_added", self.eclauses_added),
            ("eclauses_live", self.eclauses_live),
            ("eclause_family_total", self.eclause_family_total),
            ("conflict_clauses_live", self.conflict_clauses_live),
            ("conflict_clauses_total", self.conflict_clauses_total),
        ] {
            let _ = writeln!(s, "{k}={v}");
        }
        let fmt_ratio = |r: Option<f64>| r.map_or_else(|| "n/a".to_string(), |r| format!("{r:.4}"));
        let _ = writeln!(s, "active_e={}", fmt_ratio(self.active_e()));
        let _ = writeln!(s, "active_c={}", fmt_ratio(self.active_c()));
        let _ = writeln!(s, "eclause_overhead_time={:.6}", self.eclause_overhead_time);
        let _ = writeln!(s, "total_time={:.6}", self.total_time);
        s
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}
