//! Per-clause derivation metadata and the rules for folding it through
//! resolution.

use serde::{Deserialize, Serialize};

/// How far a clause can be shifted while every shifted copy stays in the
/// formula (or remains implied by it, for learned clauses).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlideBounds {
    /// Maximal shift toward variable 1.
    pub toward_zero: u32,
    /// Maximal shift toward the top variable.
    pub away: u32,
}

impl GlideBounds {
    pub const fn new(toward_zero: u32, away: u32) -> GlideBounds {
        GlideBounds { toward_zero, away }
    }
}

/// Scaling metadata for Pythagorean-triple formulas: the gcd of every
/// variable in the clause's original core and the largest such variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PythMeta {
    pub gcd: u32,
    pub maxvar: u32,
}

impl PythMeta {
    pub const fn new(gcd: u32, maxvar: u32) -> PythMeta {
        PythMeta { gcd, maxvar }
    }
}

/// Derivation metadata attached to every clause.
///
/// `symmetric == false` marks clauses of (or derived from) the asymmetric part
/// of the formula; such clauses never seed E-clauses. A missing plugin field
/// is absorbing: anything derived with it lacks that field too.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClauseMeta {
    pub symmetric: bool,
    pub glide: Option<GlideBounds>,
    pub pyth: Option<PythMeta>,
}

impl Default for ClauseMeta {
    fn default() -> Self {
        ClauseMeta::PLAIN
    }
}

impl ClauseMeta {
    /// Symmetric, no plugin metadata.
    pub const PLAIN: ClauseMeta = ClauseMeta { symmetric: true, glide: None, pyth: None };
    pub const NON_SYMMETRIC: ClauseMeta = ClauseMeta { symmetric: false, glide: None, pyth: None };

    pub const fn gliding(toward_zero: u32, away: u32) -> ClauseMeta {
        ClauseMeta { symmetric: true, glide: Some(GlideBounds::new(toward_zero, away)), pyth: None }
    }

    pub const fn pythagorean(gcd: u32, maxvar: u32) -> ClauseMeta {
        ClauseMeta { symmetric: true, glide: None, pyth: Some(PythMeta::new(gcd, maxvar)) }
    }
}

/// Accumulates antecedent metadata during one derivation.
///
/// Starts from the identity of every fold (symmetric, unbounded glide, gcd 0 /
/// maxvar 0) so that folding the first antecedent simply copies it.
#[derive(Clone, Copy, Debug)]
pub struct MetaFold {
    symmetric: bool,
    glide: Option<GlideBounds>,
    pyth: Option<PythMeta>,
    folded: usize,
}

impl Default for MetaFold {
    fn default() -> Self {
        MetaFold::new()
    }
}

impl MetaFold {
    pub fn new() -> MetaFold {
        MetaFold {
            symmetric: true,
            glide: Some(GlideBounds::new(u32::MAX, u32::MAX)),
            pyth: Some(PythMeta::new(0, 0)),
            folded: 0,
        }
    }

    pub fn absorb(&mut self, m: &ClauseMeta) {
        self.folded += 1;
        self.symmetric &= m.symmetric;
        self.glide = match (self.glide, m.glide) {
            (Some(a), Some(b)) => Some(GlideBounds::new(
                a.toward_zero.min(b.toward_zero),
                a.away.min(b.away),
            )),
            _ => None,
        };
        self.pyth = match (self.pyth, m.pyth) {
            (Some(a), Some(b)) => Some(PythMeta::new(gcd(a.gcd, b.gcd), a.maxvar.max(b.maxvar))),
            _ => None,
        };
    }

    /// Marks the derivation as touching the asymmetric part.
    pub fn taint(&mut self) {
        self.symmetric = false;
    }

    pub fn folded(&self) -> usize {
        self.folded
    }

    pub fn finish(self) -> ClauseMeta {
        if self.folded == 0 {
            return ClauseMeta::PLAIN;
        }
        if !self.symmetric {
            return ClauseMeta::NON_SYMMETRIC;
        }
        ClauseMeta { symmetric: true, glide: self.glide, pyth: self.pyth }
    }
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Componentwise minimum of the antecedents' gliding bounds; `None` if any
/// antecedent has no bounds (or is non-symmetric).
pub fn combine_glide(antecedents: &[ClauseMeta]) -> Option<GlideBounds> {
    fold_all(antecedents).glide
}

/// gcd of the antecedent gcds and max of their maxvars; `None` if any
/// antecedent lacks Pythagorean metadata (or is non-symmetric).
pub fn combine_pyth(antecedents: &[ClauseMeta]) -> Option<PythMeta> {
    fold_all(antecedents).pyth
}

fn fold_all(antecedents: &[ClauseMeta]) -> ClauseMeta {
    let mut fold = MetaFold::new();
    for m in antecedents {
        fold.absorb(m);
    }
    if antecedents.is_empty() {
        return ClauseMeta { symmetric: true, glide: None, pyth: None };
    }
    fold.finish()
}
