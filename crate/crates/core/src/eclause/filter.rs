//! Acceptance tests applied to E-clause candidates before they are queued
//! and again when the queue is flushed.

use serde::{Deserialize, Serialize};

use crate::formula::{Assignment, Clause};
use crate::lit::{Lit, Var};

/// Read access to the solver's partial assignment.
pub trait PartialAssignment {
    fn lit_value(&self, lit: Lit) -> Option<bool>;
    /// Decision level of an assigned variable.
    fn level(&self, var: Var) -> Option<u32>;
}

impl PartialAssignment for Assignment {
    fn lit_value(&self, lit: Lit) -> Option<bool> {
        Assignment::lit_value(self, lit)
    }

    /// A plain assignment has no levels; everything assigned sits on one.
    fn level(&self, var: Var) -> Option<u32> {
        self.get(var).map(|_| 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterConfig {
    /// F1: at most this many literals may be non-false.
    pub max_unfalsified: Option<u32>,
    /// F2: partial LBD (levels of assigned literals) at most this.
    pub lbd_cap: Option<u32>,
    /// F3: clause length at most this.
    pub size_cap: Option<usize>,
    /// F4: total number of E-clauses added over the run.
    pub total_cap: Option<u64>,
    /// F5: total number of candidates examined by F1/F2 over the run.
    pub examine_cap: Option<u64>,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            max_unfalsified: Some(3),
            lbd_cap: None,
            size_cap: Some(20),
            total_cap: None,
            examine_cap: None,
        }
    }
}

impl FilterConfig {
    /// Accept every candidate that is not a duplicate.
    pub fn unfiltered() -> FilterConfig {
        FilterConfig { max_unfalsified: None, lbd_cap: None, size_cap: None, total_cap: None, examine_cap: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterVerdict {
    Accept,
    TooManyOpen,
    LbdTooHigh,
    TooLarge,
    /// F4 or F5 is exhausted; no further candidate can be accepted.
    BudgetExhausted,
}

/// Run-wide counters that F4/F5 are checked against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FilterCounters {
    /// Accepted so far (queued or installed).
    pub accepted: u64,
    pub examined: u64,
}

impl FilterCounters {
    pub fn exhausted(&self, cfg: &FilterConfig) -> bool {
        cfg.total_cap.is_some_and(|cap| self.accepted >= cap)
            || cfg.examine_cap.is_some_and(|cap| self.examined >= cap)
    }
}

/// F1–F5. The caller has already ruled out exact duplicates.
pub fn filter(
    e: &Clause,
    state: &impl PartialAssignment,
    cfg: &FilterConfig,
    counters: &mut FilterCounters,
) -> FilterVerdict {
    if counters.exhausted(cfg) {
        return FilterVerdict::BudgetExhausted;
    }
    if cfg.size_cap.is_some_and(|cap| e.len() > cap) {
        return FilterVerdict::TooLarge;
    }
    let verdict = check_assignment(e, state, cfg);
    if cfg.max_unfalsified.is_some() || cfg.lbd_cap.is_some() {
        counters.examined += 1;
    }
    if verdict == FilterVerdict::Accept {
        counters.accepted += 1;
    }
    verdict
}

/// The assignment-dependent part (F1, F2), reused when the queue is flushed.
pub fn check_assignment(e: &Clause, state: &impl PartialAssignment, cfg: &FilterConfig) -> FilterVerdict {
    if let Some(x) = cfg.max_unfalsified {
        let mut open = e.lits().iter().filter(|&&l| state.lit_value(l) != Some(false));
        if open.nth(x as usize).is_some() {
            return FilterVerdict::TooManyOpen;
        }
    }
    if let Some(cap) = cfg.lbd_cap {
        let mut levels: Vec<u32> = e.lits().iter().filter_map(|l| state.level(l.var())).collect();
        levels.sort_unstable();
        levels.dedup();
        if levels.len() > cap as usize {
            return FilterVerdict::LbdTooHigh;
        }
    }
    FilterVerdict::Accept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(v: &[i32]) -> Clause {
        Clause::from_dimacs(v).unwrap()
    }

    fn assign(true_lits: &[i32]) -> Assignment {
        Assignment::from_lits(30, true_lits.iter().map(|&v| Lit::from_dimacs(v).unwrap()))
    }

    #[test]
    fn fully_falsified_passes_x0() {
        let cfg = FilterConfig { max_unfalsified: Some(0), ..FilterConfig::default() };
        let mut n = FilterCounters::default();
        assert_eq!(filter(&cl(&[1, -2, 3]), &assign(&[-1, 2, -3]), &cfg, &mut n), FilterVerdict::Accept);
        assert_eq!(n, FilterCounters { accepted: 1, examined: 1 });
    }

    #[test]
    fn size_cap() {
        let big: Vec<i32> = (1..=21).collect();
        let mut n = FilterCounters::default();
        let cfg = FilterConfig { max_unfalsified: None, ..FilterConfig::default() };
        assert_eq!(filter(&cl(&big), &assign(&[]), &cfg, &mut n), FilterVerdict::TooLarge);
        assert_eq!(filter(&cl(&big[..20]), &assign(&[]), &cfg, &mut n), FilterVerdict::Accept);
    }

    #[test]
    fn too_many_open_literals() {
        let mut n = FilterCounters::default();
        let cfg = FilterConfig::default();
        assert_eq!(filter(&cl(&[1, 2, 3, 4]), &assign(&[]), &cfg, &mut n), FilterVerdict::TooManyOpen);
        assert_eq!(filter(&cl(&[1, 2, 3, 4]), &assign(&[-4]), &cfg, &mut n), FilterVerdict::Accept);
        // true literals are not false either
        assert_eq!(filter(&cl(&[1, 2, 3, 4]), &assign(&[4]), &cfg, &mut n), FilterVerdict::TooManyOpen);
    }

    #[test]
    fn budgets() {
        let cfg = FilterConfig { total_cap: Some(1), ..FilterConfig::unfiltered() };
        let mut n = FilterCounters::default();
        assert_eq!(filter(&cl(&[1]), &assign(&[]), &cfg, &mut n), FilterVerdict::Accept);
        assert_eq!(filter(&cl(&[2]), &assign(&[]), &cfg, &mut n), FilterVerdict::BudgetExhausted);

        let cfg = FilterConfig { examine_cap: Some(2), ..FilterConfig::default() };
        let mut n = FilterCounters::default();
        assert_eq!(filter(&cl(&[1, 2, 3, 4]), &assign(&[]), &cfg, &mut n), FilterVerdict::TooManyOpen);
        assert_eq!(filter(&cl(&[1]), &assign(&[]), &cfg, &mut n), FilterVerdict::Accept);
        assert_eq!(filter(&cl(&[2]), &assign(&[]), &cfg, &mut n), FilterVerdict::BudgetExhausted);
    }

    #[test]
    fn partial_lbd_counts_assigned_levels_only() {
        struct Levels;
        impl PartialAssignment for Levels {
            fn lit_value(&self, l: Lit) -> Option<bool> {
                (l.var().get() <= 3).then_some(false)
            }
            fn level(&self, v: Var) -> Option<u32> {
                (v.get() <= 3).then_some(v.get())
            }
        }
        let cfg = FilterConfig { max_unfalsified: None, lbd_cap: Some(2), ..FilterConfig::default() };
        assert_eq!(check_assignment(&cl(&[1, 2, 7, 8]), &Levels, &cfg), FilterVerdict::Accept);
        assert_eq!(check_assignment(&cl(&[1, 2, 3]), &Levels, &cfg), FilterVerdict::LbdTooHigh);
    }
}
