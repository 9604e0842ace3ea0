//! E-clause machinery: derivation metadata, the plugin contract, the three
//! built-in sources (gliding, Pythagorean scaling, generator images), the
//! F1–F5 filters and the queue that holds accepted E-clauses until the next
//! restart.

pub mod filter;
pub mod glide;
pub mod meta;
pub mod perm;
pub mod pyth;
pub mod queue;

use thiserror::Error;

use crate::formula::Clause;
use crate::lit::Lit;
use meta::ClauseMeta;

pub use filter::{FilterConfig, FilterVerdict, PartialAssignment};
pub use glide::{emit_gliding, glide_clause, GlidingSource};
pub use perm::{apply_permutation, parse_generators, write_generators, DynSymSource, Permutation};
pub use pyth::{emit_pythagorean, PythagoreanSource};
pub use queue::{EclauseQueue, PendingEclause};

/// An E-clause instantiation together with the metadata it inherits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub clause: Clause,
    pub meta: ClauseMeta,
}

/// Metadata corruption detected while instantiating E-clauses. These never
/// happen for well-formed inputs; they indicate a bad sidecar or a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("shifting {lit} by {shift} leaves the variable range")]
    ShiftOutOfRange { lit: Lit, shift: i64 },
    #[error("literal {lit} is not divisible by the recorded gcd {gcd}")]
    NotDivisible { lit: Lit, gcd: u32 },
    #[error("scaling {lit} by {factor}/{gcd} overflows")]
    ScaleOverflow { lit: Lit, factor: u64, gcd: u32 },
}

/// A source of E-clauses.
///
/// Metadata combination is fixed per field and performed by the solver at
/// every derivation site (conflict analysis, clause minimization, level-0
/// propagation); a source only reads the folded result. A future inprocessing
/// step (e.g. variable elimination) would be one more derivation site that
/// must fold the metadata of the clauses it resolves.
pub trait SymmetrySource: Send + Sync {
    fn name(&self) -> &'static str;

    /// Appends every E-clause licensed by the symmetric clause `clause`
    /// whose folded derivation metadata is `meta`.
    fn emit(&self, clause: &Clause, meta: &ClauseMeta, out: &mut Vec<Candidate>) -> Result<(), EmitError>;
}
