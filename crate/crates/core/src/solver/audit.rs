//! Optional derivation recording, used to check taint propagation, E-clause
//! soundness and schedule isolation after a run.

use std::collections::HashSet;

use crate::eclause::queue::PendingEclause;

/// A premise of a derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// A clause by identifier. Input clauses keep their index in the formula.
    Clause(u64),
    /// The level-0 assignment of a variable (1-based).
    Level0(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Input { symmetric: bool },
    Learned,
    /// Installed E-clause; `parent` is the learned clause it was emitted from.
    Eclause { parent: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub origin: Origin,
    pub premises: Vec<Node>,
}

#[derive(Clone, Debug, Default)]
pub struct AuditTrace {
    /// Indexed by clause identifier. Learned clauses dropped during analysis
    /// (never stored) still get a record.
    pub clauses: Vec<Option<Derivation>>,
    /// Premises of each level-0 assignment, indexed by variable.
    pub level0: Vec<Option<Vec<Node>>>,
    /// Every E-clause that passed the conflict-time filters.
    pub queued: Vec<PendingEclause>,
    /// Conflict counts at which restarts fired.
    pub restart_points: Vec<u64>,
    /// Conflict counts at which reductions fired.
    pub reduce_points: Vec<u64>,
}

impl AuditTrace {
    pub(crate) fn new(num_vars: u32) -> AuditTrace {
        AuditTrace { level0: vec![None; num_vars as usize + 1], ..AuditTrace::default() }
    }

    pub(crate) fn record(&mut self, id: u64, origin: Origin, premises: Vec<Node>) {
        let i = id as usize;
        if self.clauses.len() <= i {
            self.clauses.resize(i + 1, None);
        }
        self.clauses[i] = Some(Derivation { origin, premises });
    }

    pub fn derivation(&self, id: u64) -> Option<&Derivation> {
        self.clauses.get(id as usize).and_then(Option::as_ref)
    }

    /// Does the derivation DAG below `node` reach a clause whose origin
    /// satisfies `pred`?
    pub fn reaches(&self, node: Node, pred: impl Fn(&Origin) -> bool) -> bool {
        let mut seen = HashSet::new();
        let mut stack = vec![node];
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            let premises = match n {
                Node::Clause(id) => match self.derivation(id) {
                    Some(d) => {
                        if pred(&d.origin) {
                            return true;
                        }
                        &d.premises
                    }
                    None => continue,
                },
                Node::Level0(v) => match self.level0.get(v as usize).and_then(Option::as_ref) {
                    Some(p) => p,
                    None => continue,
                },
            };
            stack.extend(premises.iter().copied());
        }
        false
    }

    /// True if some non-symmetric input clause is an ancestor of `node`.
    pub fn touches_nonsymmetric(&self, node: Node) -> bool {
        self.reaches(node, |o| matches!(o, Origin::Input { symmetric: false }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reachability_through_level0() {
        let mut t = AuditTrace::new(3);
        t.record(0, Origin::Input { symmetric: true }, vec![]);
        t.record(1, Origin::Input { symmetric: false }, vec![]);
        t.level0[2] = Some(vec![Node::Clause(1)]);
        t.record(2, Origin::Learned, vec![Node::Clause(0), Node::Level0(2)]);
        t.record(3, Origin::Learned, vec![Node::Clause(0)]);
        assert!(t.touches_nonsymmetric(Node::Clause(2)));
        assert!(!t.touches_nonsymmetric(Node::Clause(3)));
        assert!(!t.touches_nonsymmetric(Node::Clause(99)));
    }
}
