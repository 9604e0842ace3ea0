//! CDCL search with derivation-metadata folding at every derivation site
//! and restart-time installation of E-clauses.

mod audit;
mod config;
mod db;
mod heap;
mod luby;
mod report;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::eclause::filter::{check_assignment, filter, FilterCounters, FilterVerdict, PartialAssignment};
use crate::eclause::meta::{ClauseMeta, MetaFold};
use crate::eclause::perm::DynSymSource;
use crate::eclause::queue::{EclauseQueue, PendingEclause};
use crate::eclause::{Candidate, EmitError, GlidingSource, PythagoreanSource, SymmetrySource};
use crate::formula::{eval, Assignment, Clause, Evaluation, Formula};
use crate::lit::{Lit, Var};

pub use audit::{AuditTrace, Derivation, Node, Origin};
pub use config::{MetadataPlugin, SolverConfig};
pub use db::Tier;
pub use luby::{luby, restart_schedule};
pub use report::{Counters, Outcome, SolveReport};

use db::{ClauseDb, StoredClause};
use heap::VarOrder;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("E-clause emission failed: {0}")]
    Emit(#[from] EmitError),
    #[error("E-clause {clause:?} mentions a variable beyond {num_vars}")]
    EclauseOutOfRange { clause: Clause, num_vars: u32 },
    #[error("internal error: the model does not satisfy the formula")]
    BadModel,
}

/// Resource limits for one run. Exhaustion yields TIMEOUT.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_conflicts: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn conflicts(n: u64) -> Budget {
        Budget { max_conflicts: Some(n), time_limit: None }
    }

    pub fn time(limit: Duration) -> Budget {
        Budget { max_conflicts: None, time_limit: Some(limit) }
    }
}

/// Solves `formula` from scratch.
pub fn solve(formula: &Formula, cfg: SolverConfig, budget: Budget) -> Result<SolveReport, SolveError> {
    Solver::new(formula, cfg)?.run(budget)
}

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNDEF: i8 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reason {
    Decision,
    Clause(u32),
}

#[derive(Clone, Copy, Debug)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

#[derive(Debug, Default, Clone, Copy)]
struct Stats {
    conflicts: u64,
    decisions: u64,
    propagations: u64,
    restarts: u64,
    reductions: u64,
    generated: u64,
    filtered: u64,
    added: u64,
    efamily_total: u64,
    efamily_live: u64,
    learned_total: u64,
    learned_live: u64,
}

/// What a derivation has touched so far.
#[derive(Debug, Default)]
struct Premises {
    efamily: bool,
    consulted: usize,
    nodes: Option<Vec<Node>>,
    /// Level-0 variables folded in this analysis, in order.
    level0: Vec<u32>,
}

struct Learnt {
    lits: Vec<Lit>,
    meta: ClauseMeta,
    lbd: u32,
    backjump: u32,
    premises: Premises,
}

struct View<'a> {
    vals: &'a [i8],
    level: &'a [u32],
}

impl PartialAssignment for View<'_> {
    fn lit_value(&self, lit: Lit) -> Option<bool> {
        match self.vals[lit.code()] {
            TRUE => Some(true),
            FALSE => Some(false),
            _ => None,
        }
    }

    fn level(&self, var: Var) -> Option<u32> {
        (self.vals[var.pos().code()] != UNDEF).then(|| self.level[var.index()])
    }
}

pub struct Solver<'f> {
    formula: &'f Formula,
    cfg: SolverConfig,
    num_vars: u32,

    vals: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Reason>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    watches: Vec<Vec<Watcher>>,
    db: ClauseDb,

    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    order: VarOrder,
    phase: Vec<bool>,

    seen: Vec<bool>,
    toclear: Vec<Lit>,
    stack: Vec<Lit>,
    stamp: u64,
    level_stamp: Vec<u64>,
    analysis: u64,
    l0_stamp: Vec<u64>,
    level0_meta: Vec<ClauseMeta>,
    level0_efamily: Vec<bool>,

    sources: Vec<Box<dyn SymmetrySource>>,
    keys: HashSet<Vec<Lit>>,
    queue: EclauseQueue,
    fcount: FilterCounters,
    candidates: Vec<Candidate>,

    next_id: u64,
    unsat: bool,
    restart_limit: u64,
    since_restart: u64,
    stats: Stats,
    overhead: Duration,
    audit: Option<AuditTrace>,
}

impl<'f> Solver<'f> {
    pub fn new(formula: &'f Formula, cfg: SolverConfig) -> Result<Solver<'f>, SolveError> {
        cfg.validate()?;
        let n = formula.num_vars();
        let nv = n as usize + 1;

        let mut sources: Vec<Box<dyn SymmetrySource>> = Vec::new();
        match cfg.plugin {
            MetadataPlugin::None => {}
            MetadataPlugin::Gliding => sources.push(Box::new(GlidingSource)),
            MetadataPlugin::Pythagorean => sources.push(Box::new(PythagoreanSource { universe: n })),
        }
        if cfg.dyn_sym && !cfg.generators.is_empty() {
            for g in &cfg.generators {
                if let Some(c) = g.cycles().iter().flatten().find(|l| l.var().get() > n) {
                    return Err(SolveError::Config(format!("generator mentions {c} beyond {n} variables")));
                }
            }
            sources.push(Box::new(DynSymSource { generators: cfg.generators.clone() }));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut activity = vec![0.0; nv];
        for a in activity.iter_mut().skip(1) {
            *a = rng.random::<f64>() * 1e-5;
        }
        let mut order = VarOrder::new(n as usize);
        for v in 1..=n {
            order.insert(v, &activity);
        }

        let mut s = Solver {
            formula,
            num_vars: n,
            vals: vec![UNDEF; 2 * nv],
            level: vec![0; nv],
            reason: vec![Reason::Decision; nv],
            trail: Vec::with_capacity(nv),
            trail_lim: Vec::new(),
            qhead: 0,
            watches: (0..2 * nv).map(|_| Vec::new()).collect(),
            db: ClauseDb::default(),
            activity,
            var_inc: 1.0,
            cla_inc: 1.0,
            order,
            phase: vec![false; nv],
            seen: vec![false; nv],
            toclear: Vec::new(),
            stack: Vec::new(),
            stamp: 0,
            level_stamp: vec![0; nv + 1],
            analysis: 0,
            l0_stamp: vec![0; nv],
            level0_meta: vec![ClauseMeta::PLAIN; nv],
            level0_efamily: vec![false; nv],
            sources,
            keys: HashSet::new(),
            queue: EclauseQueue::new(),
            fcount: FilterCounters::default(),
            candidates: Vec::new(),
            next_id: formula.len() as u64,
            unsat: false,
            restart_limit: restart_schedule(1, cfg.restart_base),
            since_restart: 0,
            stats: Stats::default(),
            overhead: Duration::ZERO,
            audit: cfg.audit.then(|| AuditTrace::new(n)),
            cfg,
        };

        let emitting = !s.sources.is_empty();
        let mut units = Vec::new();
        for (i, (c, m)) in formula.iter().enumerate() {
            if let Some(a) = s.audit.as_mut() {
                a.record(i as u64, Origin::Input { symmetric: m.symmetric }, Vec::new());
            }
            if emitting {
                s.keys.insert(c.key());
            }
            match c.len() {
                0 => s.unsat = true,
                1 => units.push((i as u64, c.lits()[0], *m)),
                _ => {
                    let cref = s.db.add(StoredClause {
                        lits: c.lits().to_vec(),
                        meta: *m,
                        id: i as u64,
                        tier: None,
                        lbd: 0,
                        activity: 0.0,
                        last_used: 0,
                        efamily: false,
                        deleted: false,
                    });
                    s.attach(cref);
                }
            }
        }
        for (id, l, m) in units {
            match s.vals[l.code()] {
                TRUE => {}
                FALSE => s.unsat = true,
                _ => s.assign_unit(l, m, false, vec![Node::Clause(id)]),
            }
        }
        Ok(s)
    }

    /// Runs CDCL until an answer or budget exhaustion.
    pub fn run(&mut self, budget: Budget) -> Result<SolveReport, SolveError> {
        let start = Instant::now();
        let deadline = budget.time_limit.map(|d| start + d);
        let expired = |d: Option<Instant>| d.is_some_and(|d| Instant::now() >= d);

        let outcome = loop {
            if self.unsat {
                break Outcome::Unsat;
            }
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                if self.trail_lim.is_empty() {
                    self.unsat = true;
                    break Outcome::Unsat;
                }
                self.handle_conflict(confl)?;
                self.since_restart += 1;
                if self.stats.conflicts.is_multiple_of(self.cfg.reduce_interval) {
                    self.reduce();
                }
                if self.since_restart >= self.restart_limit {
                    self.restart();
                    if self.unsat {
                        break Outcome::Unsat;
                    }
                }
                if budget.max_conflicts.is_some_and(|m| self.stats.conflicts >= m)
                    || (self.stats.conflicts.is_multiple_of(64) && expired(deadline))
                {
                    break Outcome::Timeout;
                }
            } else {
                let Some(l) = self.pick_branch() else {
                    break Outcome::Sat;
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.assign(l, Reason::Decision);
                if self.stats.decisions.is_multiple_of(1024) && expired(deadline) {
                    break Outcome::Timeout;
                }
            }
        };

        let model = if outcome == Outcome::Sat {
            let model: Vec<i32> = (1..=self.num_vars)
                .map(|v| if self.vals[Var::new(v).pos().code()] == TRUE { v as i32 } else { -(v as i32) })
                .collect();
            let a = Assignment::from_lits(self.num_vars, model.iter().map(|&l| Lit::from_dimacs(l).unwrap()));
            if eval(self.formula, &a) != Evaluation::Satisfied {
                return Err(SolveError::BadModel);
            }
            Some(model)
        } else {
            None
        };

        let st = self.stats;
        Ok(SolveReport {
            outcome,
            model,
            conflicts: st.conflicts,
            decisions: st.decisions,
            propagations: st.propagations,
            restarts: st.restarts,
            reductions: st.reductions,
            eclauses_generated: st.generated,
            eclauses_filtered: st.filtered,
            eclauses_added: st.added,
            eclauses_live: st.efamily_live,
            eclause_family_total: st.efamily_total,
            conflict_clauses_live: st.learned_live,
            conflict_clauses_total: st.learned_total,
            eclause_overhead_time: self.overhead.as_secs_f64(),
            total_time: start.elapsed().as_secs_f64(),
        })
    }

    pub fn audit(&self) -> Option<&AuditTrace> {
        self.audit.as_ref()
    }

    pub fn take_audit(&mut self) -> Option<AuditTrace> {
        self.audit.take()
    }

    /// Variables fixed at level 0 by reasoning that touched a non-symmetric
    /// clause.
    pub fn level0_tainted(&self) -> Vec<Var> {
        (1..=self.num_vars)
            .map(Var::new)
            .filter(|v| self.vals[v.pos().code()] != UNDEF && self.level[v.index()] == 0)
            .filter(|v| !self.level0_meta[v.index()].symmetric)
            .collect()
    }

    /// Live learned clauses and installed E-clauses with their metadata.
    pub fn learned_clauses(&self) -> Vec<(Clause, ClauseMeta, u64)> {
        self.db
            .live()
            .filter(|(_, c)| c.learnt())
            .map(|(_, c)| (Clause::from_vec_unchecked(c.lits.clone()), c.meta, c.id))
            .collect()
    }

    // ---- assignment -------------------------------------------------------

    #[inline]
    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn assign(&mut self, lit: Lit, reason: Reason) {
        let v = lit.var().index();
        debug_assert_eq!(self.vals[lit.code()], UNDEF);
        self.vals[lit.code()] = TRUE;
        self.vals[(!lit).code()] = FALSE;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(lit);
        if let (true, Reason::Clause(cref)) = (self.trail_lim.is_empty(), reason) {
            self.fold_level0_reason(lit, cref);
        }
    }

    /// Level-0 assignment justified directly by a (learned, input or E-)
    /// unit whose metadata is `meta`.
    fn assign_unit(&mut self, lit: Lit, meta: ClauseMeta, efamily: bool, premises: Vec<Node>) {
        debug_assert!(self.trail_lim.is_empty());
        self.assign(lit, Reason::Decision);
        let v = lit.var().index();
        self.level0_meta[v] = meta;
        self.level0_efamily[v] = efamily;
        if let Some(a) = self.audit.as_mut() {
            a.level0[v] = Some(premises);
        }
    }

    /// A level-0 implication inherits the reason clause's metadata folded
    /// with that of every (level-0) literal the reason consumed.
    fn fold_level0_reason(&mut self, lit: Lit, cref: u32) {
        let c = self.db.get(cref);
        let mut fold = MetaFold::new();
        fold.absorb(&c.meta);
        let mut efamily = c.efamily;
        let mut nodes = self.audit.as_ref().map(|_| vec![Node::Clause(c.id)]);
        for &l in &c.lits[1..] {
            let u = l.var();
            fold.absorb(&self.level0_meta[u.index()]);
            efamily |= self.level0_efamily[u.index()];
            if let Some(n) = nodes.as_mut() {
                n.push(Node::Level0(u.get()));
            }
        }
        let v = lit.var().index();
        self.level0_meta[v] = fold.finish();
        self.level0_efamily[v] = efamily;
        if let (Some(a), Some(n)) = (self.audit.as_mut(), nodes) {
            a.level0[v] = Some(n);
        }
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let lim = self.trail_lim[lvl as usize];
        for i in (lim..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var().index();
            self.vals[l.code()] = UNDEF;
            self.vals[(!l).code()] = UNDEF;
            self.reason[v] = Reason::Decision;
            self.phase[v] = l.is_positive();
            self.order.insert(v as u32, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.order.pop_max(&self.activity) {
            let var = Var::new(v);
            if self.vals[var.pos().code()] == UNDEF {
                return Some(var.lit(self.phase[v as usize]));
            }
        }
        None
    }

    // ---- propagation ------------------------------------------------------

    fn attach(&mut self, cref: u32) {
        let c = self.db.get(cref);
        let (a, b) = (c.lits[0], c.lits[1]);
        self.watches[a.code()].push(Watcher { cref, blocker: b });
        self.watches[b.code()].push(Watcher { cref, blocker: a });
    }

    /// Unit propagation to fixpoint; returns a falsified clause on conflict.
    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() && conflict.is_none() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.vals[w.blocker.code()] == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let c = &mut self.db.clauses[w.cref as usize];
                debug_assert!(!c.deleted);
                if c.lits[0] == false_lit {
                    c.lits.swap(0, 1);
                }
                let first = c.lits[0];
                let nw = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && self.vals[first.code()] == TRUE {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.lits.len() {
                    let l = c.lits[k];
                    if self.vals[l.code()] != FALSE {
                        c.lits.swap(1, k);
                        self.watches[l.code()].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if self.vals[first.code()] == FALSE {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.assign(first, Reason::Clause(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
        }
        conflict
    }

    // ---- conflict analysis ------------------------------------------------

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.order.increased(v as u32, &self.activity);
    }

    /// Folds a clause consulted by the current derivation. Clauses used by
    /// the resolution chain proper (`bump`) also get their activity and LBD
    /// refreshed.
    fn consult(&mut self, cref: u32, fold: &mut MetaFold, pr: &mut Premises, bump: bool) {
        let c = &mut self.db.clauses[cref as usize];
        fold.absorb(&c.meta);
        pr.consulted += 1;
        pr.efamily |= c.efamily;
        if let Some(n) = pr.nodes.as_mut() {
            n.push(Node::Clause(c.id));
        }
        if !bump || !c.learnt() {
            return;
        }
        c.activity += self.cla_inc;
        c.last_used = self.stats.conflicts;
        if c.tier != Some(Tier::Core) {
            self.stamp += 1;
            let s = self.stamp;
            let mut lbd = 0;
            for l in &c.lits {
                let lv = self.level[l.var().index()] as usize;
                if self.level_stamp[lv] != s {
                    self.level_stamp[lv] = s;
                    lbd += 1;
                }
            }
            if lbd < c.lbd {
                c.lbd = lbd;
                let better = Tier::for_lbd(lbd);
                if better == Tier::Core || (better == Tier::Tier2 && c.tier == Some(Tier::Local)) {
                    c.tier = Some(better);
                }
            }
        }
        if c.activity > 1e20 {
            self.db.rescale_activity(1e-20);
            self.cla_inc *= 1e-20;
        }
    }

    /// Folds the level-0 assignment of `v` (once per analysis).
    fn consult_level0(&mut self, v: usize, fold: &mut MetaFold, pr: &mut Premises) {
        if self.l0_stamp[v] == self.analysis {
            return;
        }
        self.l0_stamp[v] = self.analysis;
        fold.absorb(&self.level0_meta[v]);
        pr.consulted += 1;
        pr.efamily |= self.level0_efamily[v];
        pr.level0.push(v as u32);
        if let Some(n) = pr.nodes.as_mut() {
            n.push(Node::Level0(v as u32));
        }
    }

    fn reason_of(&self, v: usize) -> u32 {
        match self.reason[v] {
            Reason::Clause(c) => c,
            Reason::Decision => unreachable!("implied literal without a reason"),
        }
    }

    fn abstract_level(&self, v: usize) -> u32 {
        1 << (self.level[v] & 31)
    }

    fn analyze(&mut self, confl: u32) -> Learnt {
        self.stamp += 1;
        self.analysis = self.stamp;
        let mut fold = MetaFold::new();
        let mut pr = Premises { nodes: self.audit.as_ref().map(|_| Vec::new()), ..Premises::default() };

        let cur = self.decision_level();
        let mut out: Vec<Lit> = vec![Lit::from_dimacs(1).unwrap()];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let mut cref = confl;
        loop {
            self.consult(cref, &mut fold, &mut pr, true);
            let skip = usize::from(p.is_some());
            let len = self.db.get(cref).lits.len();
            for k in skip..len {
                let q = self.db.get(cref).lits[k];
                let v = q.var().index();
                if self.seen[v] {
                    continue;
                }
                if self.level[v] == 0 {
                    self.consult_level0(v, &mut fold, &mut pr);
                    continue;
                }
                self.seen[v] = true;
                self.bump_var(v);
                if self.level[v] >= cur {
                    path += 1;
                } else {
                    out.push(q);
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var().index()] {
                    break;
                }
            }
            let pl = self.trail[idx];
            self.seen[pl.var().index()] = false;
            path -= 1;
            p = Some(pl);
            if path == 0 {
                break;
            }
            cref = self.reason_of(pl.var().index());
        }
        out[0] = !p.expect("at least one literal at the conflict level");

        // recursive minimization
        self.toclear.clear();
        self.toclear.extend_from_slice(&out);
        let abs = out[1..].iter().fold(0u32, |a, l| a | self.abstract_level(l.var().index()));
        let mut j = 1;
        for i in 1..out.len() {
            let l = out[i];
            let keep = self.reason[l.var().index()] == Reason::Decision
                || !self.lit_redundant(l, abs, &mut fold, &mut pr);
            if keep {
                out[j] = l;
                j += 1;
            }
        }
        out.truncate(j);
        for l in std::mem::take(&mut self.toclear) {
            self.seen[l.var().index()] = false;
        }

        if self.cfg.binary_minimization && out.len() > 2 {
            self.binary_minimize(&mut out, &mut fold, &mut pr);
        }

        debug_assert_eq!(fold.folded(), pr.consulted, "a consulted clause escaped the metadata fold");

        let backjump = if out.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..out.len() {
                if self.level[out[i].var().index()] > self.level[out[max_i].var().index()] {
                    max_i = i;
                }
            }
            out.swap(1, max_i);
            self.level[out[1].var().index()]
        };

        self.stamp += 1;
        let s = self.stamp;
        let mut lbd = 0;
        for l in &out {
            let lv = self.level[l.var().index()] as usize;
            if self.level_stamp[lv] != s {
                self.level_stamp[lv] = s;
                lbd += 1;
            }
        }

        Learnt { lits: out, meta: fold.finish(), lbd, backjump, premises: pr }
    }

    /// Is `p` implied by other literals of the learned clause? Metadata of a
    /// failed attempt is rolled back, so only clauses that end up justifying
    /// a removal are folded.
    fn lit_redundant(&mut self, p: Lit, abs: u32, fold: &mut MetaFold, pr: &mut Premises) -> bool {
        let saved_fold = *fold;
        let saved = (pr.consulted, pr.efamily, pr.nodes.as_ref().map_or(0, Vec::len), pr.level0.len());
        let top = self.toclear.len();
        self.stack.clear();
        self.stack.push(p);
        while let Some(q) = self.stack.pop() {
            let cref = self.reason_of(q.var().index());
            self.consult(cref, fold, pr, false);
            let len = self.db.get(cref).lits.len();
            for k in 1..len {
                let l = self.db.get(cref).lits[k];
                let v = l.var().index();
                if self.seen[v] {
                    continue;
                }
                if self.level[v] == 0 {
                    self.consult_level0(v, fold, pr);
                    continue;
                }
                if self.reason[v] != Reason::Decision && self.abstract_level(v) & abs != 0 {
                    self.seen[v] = true;
                    self.stack.push(l);
                    self.toclear.push(l);
                    continue;
                }
                for l in self.toclear.drain(top..) {
                    self.seen[l.var().index()] = false;
                }
                *fold = saved_fold;
                pr.consulted = saved.0;
                pr.efamily = saved.1;
                if let Some(n) = pr.nodes.as_mut() {
                    n.truncate(saved.2);
                }
                for v in pr.level0.drain(saved.3..) {
                    self.l0_stamp[v as usize] = 0;
                }
                return false;
            }
        }
        true
    }

    /// Removes `l` from the learned clause when `(out[0] ∨ ¬l)` is a binary
    /// clause.
    fn binary_minimize(&mut self, out: &mut Vec<Lit>, fold: &mut MetaFold, pr: &mut Premises) {
        for l in &out[1..] {
            self.seen[l.var().index()] = true;
        }
        let a = out[0];
        let mut used = Vec::new();
        for w in &self.watches[a.code()] {
            let c = &self.db.clauses[w.cref as usize];
            if c.lits.len() != 2 {
                continue;
            }
            let other = if c.lits[0] == a { c.lits[1] } else { c.lits[0] };
            // `other` true means `!other` is the (false) literal in `out`
            if self.vals[other.code()] == TRUE && self.seen[other.var().index()] {
                self.seen[other.var().index()] = false;
                used.push(w.cref);
            }
        }
        for &cref in &used {
            self.consult(cref, fold, pr, false);
        }
        let seen = &mut self.seen;
        let mut first = true;
        out.retain(|l| std::mem::take(&mut first) || std::mem::take(&mut seen[l.var().index()]));
    }

    fn handle_conflict(&mut self, confl: u32) -> Result<(), SolveError> {
        let learnt = self.analyze(confl);
        let id = self.next_id;
        self.next_id += 1;
        if !self.sources.is_empty() && learnt.meta.symmetric {
            self.generate(&learnt, id)?;
        }
        self.cancel_until(learnt.backjump);

        let Learnt { lits, meta, lbd, premises, .. } = learnt;
        if let Some(a) = self.audit.as_mut() {
            a.record(id, Origin::Learned, premises.nodes.unwrap_or_default());
        }
        if premises.efamily {
            self.stats.efamily_total += 1;
            self.stats.efamily_live += 1;
        } else {
            self.stats.learned_total += 1;
            self.stats.learned_live += 1;
        }
        if !self.sources.is_empty() {
            let mut key = lits.clone();
            key.sort_unstable();
            self.keys.insert(key);
        }
        if lits.len() == 1 {
            self.assign_unit(lits[0], meta, premises.efamily, vec![Node::Clause(id)]);
        } else {
            let asserting = lits[0];
            let cref = self.db.add(StoredClause {
                lits,
                meta,
                id,
                tier: Some(Tier::for_lbd(lbd)),
                lbd,
                activity: self.cla_inc,
                last_used: self.stats.conflicts,
                efamily: premises.efamily,
                deleted: false,
            });
            self.attach(cref);
            self.assign(asserting, Reason::Clause(cref));
        }
        self.var_inc /= self.cfg.var_decay;
        self.cla_inc /= self.cfg.clause_decay;
        Ok(())
    }

    // ---- E-clauses --------------------------------------------------------

    /// Emits E-clauses from a freshly learned clause and queues those that
    /// pass the filters under the conflict-time assignment.
    fn generate(&mut self, learnt: &Learnt, parent: u64) -> Result<(), SolveError> {
        let t0 = Instant::now();
        let clause = Clause::from_vec_unchecked(learnt.lits.clone());
        let mut cands = std::mem::take(&mut self.candidates);
        cands.clear();
        for src in &self.sources {
            src.emit(&clause, &learnt.meta, &mut cands)?;
        }
        for cand in cands.drain(..) {
            self.stats.generated += 1;
            if cand.clause.max_var().is_some_and(|v| v.get() > self.num_vars) {
                return Err(SolveError::EclauseOutOfRange { clause: cand.clause, num_vars: self.num_vars });
            }
            let view = View { vals: &self.vals, level: &self.level };
            // most candidates fail F1; without an F5 cap the examined count
            // is unobservable, so reject before paying for the duplicate check
            if self.cfg.filter.examine_cap.is_none()
                && check_assignment(&cand.clause, &view, &self.cfg.filter) != FilterVerdict::Accept
            {
                self.stats.filtered += 1;
                continue;
            }
            let key = cand.clause.key();
            if self.keys.contains(&key) || self.queue.contains_key(&key) {
                self.stats.filtered += 1;
                continue;
            }
            match filter(&cand.clause, &view, &self.cfg.filter, &mut self.fcount) {
                FilterVerdict::Accept => {
                    let e = PendingEclause { clause: cand.clause, meta: cand.meta, parent };
                    if let Some(a) = self.audit.as_mut() {
                        a.queued.push(e.clone());
                    }
                    self.queue.push(e);
                }
                _ => self.stats.filtered += 1,
            }
        }
        self.candidates = cands;
        self.overhead += t0.elapsed();
        Ok(())
    }

    fn restart(&mut self) {
        self.stats.restarts += 1;
        if let Some(a) = self.audit.as_mut() {
            a.restart_points.push(self.stats.conflicts);
        }
        if self.queue.is_empty() {
            self.cancel_until(0);
        } else {
            let t0 = Instant::now();
            let pending = self.queue.take();
            // F1/F2 again, against the assignment the restart interrupts
            let view = View { vals: &self.vals, level: &self.level };
            let (keep, drop): (Vec<_>, Vec<_>) = pending
                .into_iter()
                .partition(|e| check_assignment(&e.clause, &view, &self.cfg.filter) == FilterVerdict::Accept);
            for _ in drop {
                self.reject_pending();
            }
            self.cancel_until(0);
            for e in keep {
                self.install(e);
                if self.unsat {
                    break;
                }
            }
            self.overhead += t0.elapsed();
        }
        self.since_restart = 0;
        self.restart_limit = restart_schedule(self.stats.restarts + 1, self.cfg.restart_base);
    }

    fn reject_pending(&mut self) {
        self.stats.filtered += 1;
        self.fcount.accepted -= 1;
    }

    /// Adds one queued E-clause at level 0.
    fn install(&mut self, e: PendingEclause) {
        debug_assert!(self.trail_lim.is_empty());
        let key = e.clause.key();
        if self.keys.contains(&key) {
            self.reject_pending();
            return;
        }
        let mut lits = e.clause.into_lits();
        if lits.iter().any(|l| self.vals[l.code()] == TRUE) {
            self.reject_pending();
            return;
        }
        // unassigned literals first, so the watches land on them
        lits.sort_by_key(|l| self.vals[l.code()] == FALSE);
        let open = lits.iter().take_while(|l| self.vals[l.code()] == UNDEF).count();

        let id = self.next_id;
        self.next_id += 1;
        self.keys.insert(key);
        self.stats.added += 1;
        self.stats.efamily_total += 1;
        self.stats.efamily_live += 1;
        if let Some(a) = self.audit.as_mut() {
            a.record(id, Origin::Eclause { parent: e.parent }, vec![Node::Clause(e.parent)]);
        }

        match open {
            0 => self.unsat = true,
            1 => {
                let mut fold = MetaFold::new();
                fold.absorb(&e.meta);
                let mut premises = vec![Node::Clause(id)];
                for l in &lits[1..] {
                    fold.absorb(&self.level0_meta[l.var().index()]);
                    premises.push(Node::Level0(l.var().get()));
                }
                self.assign_unit(lits[0], fold.finish(), true, premises);
            }
            _ => {
                let lbd = lits.len() as u32;
                let cref = self.db.add(StoredClause {
                    lits,
                    meta: e.meta,
                    id,
                    tier: Some(Tier::Local),
                    lbd,
                    activity: self.cfg.eclause_activity * self.cla_inc,
                    last_used: self.stats.conflicts,
                    efamily: true,
                    deleted: false,
                });
                self.attach(cref);
            }
        }
    }

    // ---- clause database --------------------------------------------------

    fn locked(&self, cref: u32) -> bool {
        let l = self.db.get(cref).lits[0];
        self.reason[l.var().index()] == Reason::Clause(cref) && self.vals[l.code()] == TRUE
    }

    fn reduce(&mut self) {
        self.stats.reductions += 1;
        if let Some(a) = self.audit.as_mut() {
            a.reduce_points.push(self.stats.conflicts);
        }
        self.db.demote_idle(self.stats.conflicts, self.cfg.tier2_idle);
        let doomed = self.db.reduce_candidates(self.cfg.deletion_ratio, |c| self.locked(c));
        if doomed.is_empty() {
            return;
        }
        for cref in doomed {
            let mut c = self.db.remove(cref);
            if c.efamily {
                self.stats.efamily_live -= 1;
            } else {
                self.stats.learned_live -= 1;
            }
            if !self.sources.is_empty() {
                c.lits.sort_unstable();
                self.keys.remove(&c.lits);
            }
        }
        let db = &self.db;
        for ws in self.watches.iter_mut() {
            ws.retain(|w| !db.get(w.cref).deleted);
        }
    }
}
