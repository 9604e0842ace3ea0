use std::collections::HashSet;

use crate::formula::Clause;
use crate::lit::Lit;

use super::meta::ClauseMeta;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendingEclause {
    pub clause: Clause,
    pub meta: ClauseMeta,
    /// Identifier of the learned clause whose derivation was replayed.
    pub parent: u64,
}

/// E-clauses accepted since the last restart.
#[derive(Clone, Debug, Default)]
pub struct EclauseQueue {
    pending: Vec<PendingEclause>,
    keys: HashSet<Vec<Lit>>,
}

impl EclauseQueue {
    pub fn new() -> EclauseQueue {
        EclauseQueue::default()
    }

    pub fn contains_key(&self, key: &[Lit]) -> bool {
        self.keys.contains(key)
    }

    /// Returns false (and drops the clause) if an identical one is pending.
    pub fn push(&mut self, e: PendingEclause) -> bool {
        if !self.keys.insert(e.clause.key()) {
            return false;
        }
        self.pending.push(e);
        true
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn pending(&self) -> &[PendingEclause] {
        &self.pending
    }

    /// Empties the queue in insertion order.
    pub fn take(&mut self) -> Vec<PendingEclause> {
        self.keys.clear();
        std::mem::take(&mut self.pending)
    }
}
