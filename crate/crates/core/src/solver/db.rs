//! Clause storage with the three learned-clause tiers.

use serde::{Deserialize, Serialize};

use crate::eclause::meta::ClauseMeta;
use crate::lit::Lit;

/// Learned-clause tier, assigned by LBD and revisited when a clause's LBD
/// improves or it sits unused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tier {
    /// LBD <= 3, never deleted.
    Core,
    /// LBD 4..=6, demoted to Local after a long idle stretch.
    Tier2,
    /// Everything else, reduced by activity.
    Local,
}

impl Tier {
    pub fn for_lbd(lbd: u32) -> Tier {
        match lbd {
            0..=3 => Tier::Core,
            4..=6 => Tier::Tier2,
            _ => Tier::Local,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StoredClause {
    pub lits: Vec<Lit>,
    pub meta: ClauseMeta,
    pub id: u64,
    /// `None` for input clauses.
    pub tier: Option<Tier>,
    pub lbd: u32,
    pub activity: f64,
    /// Conflict count when the clause last took part in an analysis.
    pub last_used: u64,
    pub efamily: bool,
    pub deleted: bool,
}

impl StoredClause {
    pub fn learnt(&self) -> bool {
        self.tier.is_some()
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct ClauseDb {
    pub clauses: Vec<StoredClause>,
    free: Vec<u32>,
}

impl ClauseDb {
    pub fn add(&mut self, c: StoredClause) -> u32 {
        match self.free.pop() {
            Some(cref) => {
                self.clauses[cref as usize] = c;
                cref
            }
            None => {
                self.clauses.push(c);
                (self.clauses.len() - 1) as u32
            }
        }
    }

    /// Frees a slot. The caller must drop every watcher of `cref` before the
    /// next `add`.
    pub fn remove(&mut self, cref: u32) -> StoredClause {
        let slot = &mut self.clauses[cref as usize];
        debug_assert!(!slot.deleted);
        let mut taken = StoredClause { lits: Vec::new(), deleted: true, ..slot.clone_header() };
        std::mem::swap(slot, &mut taken);
        self.free.push(cref);
        taken
    }

    #[inline]
    pub fn get(&self, cref: u32) -> &StoredClause {
        &self.clauses[cref as usize]
    }

    #[cfg(test)]
    pub fn get_mut(&mut self, cref: u32) -> &mut StoredClause {
        &mut self.clauses[cref as usize]
    }

    pub fn live(&self) -> impl Iterator<Item = (u32, &StoredClause)> {
        self.clauses.iter().enumerate().filter(|(_, c)| !c.deleted).map(|(i, c)| (i as u32, c))
    }

    /// Local clauses to delete: the `floor(ratio * deletable)` least active
    /// among those not `locked`. Ties break on the older identifier.
    pub fn reduce_candidates(&self, ratio: f64, locked: impl Fn(u32) -> bool) -> Vec<u32> {
        let mut cands: Vec<u32> = self
            .live()
            .filter(|(cref, c)| c.tier == Some(Tier::Local) && !locked(*cref))
            .map(|(cref, _)| cref)
            .collect();
        let n = (ratio * cands.len() as f64).floor() as usize;
        cands.sort_by(|&a, &b| {
            let (ca, cb) = (self.get(a), self.get(b));
            ca.activity.total_cmp(&cb.activity).then(ca.id.cmp(&cb.id))
        });
        cands.truncate(n);
        cands
    }

    /// Moves Tier2 clauses unused for more than `idle` conflicts to Local.
    pub fn demote_idle(&mut self, now: u64, idle: u64) {
        for c in self.clauses.iter_mut().filter(|c| !c.deleted) {
            if c.tier == Some(Tier::Tier2) && now.saturating_sub(c.last_used) > idle {
                c.tier = Some(Tier::Local);
            }
        }
    }

    pub fn rescale_activity(&mut self, factor: f64) {
        for c in self.clauses.iter_mut().filter(|c| c.learnt()) {
            c.activity *= factor;
        }
    }
}

impl StoredClause {
    fn clone_header(&self) -> StoredClause {
        StoredClause {
            lits: Vec::new(),
            meta: self.meta,
            id: self.id,
            tier: self.tier,
            lbd: self.lbd,
            activity: self.activity,
            last_used: self.last_used,
            efamily: self.efamily,
            deleted: self.deleted,
        }
    }
}
