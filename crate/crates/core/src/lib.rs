//! `isosat` is a conflict-driven SAT solver whose clause learning carries
//! per-clause derivation metadata. Learned clauses whose derivation avoided
//! the asymmetric part of the formula are replayed under structure-preserving
//! literal maps, producing extra implied clauses ("E-clauses"):
//!
//! * gliding shifts for arithmetic-progression (Van der Waerden) formulas,
//! * integer scaling for Boolean Pythagorean triple formulas,
//! * generator images for classic dynamic symmetry exploitation.
//!
//! The crate also ships the instance generators for both families, an
//! independent verification toolkit and the metadata sidecar format used by
//! the command-line tool.

pub mod dimacs;
pub mod eclause;
pub mod formula;
pub mod generators;
pub mod instance;
pub mod lit;
pub mod sidecar;
pub mod solver;
pub mod verify;

pub use eclause::meta::{ClauseMeta, GlideBounds, PythMeta};
pub use formula::{Assignment, Clause, Evaluation, Formula, FormulaError};
pub use lit::{Lit, Var};
pub use solver::{solve, Budget, Outcome, SolveError, SolveReport, Solver, SolverConfig};
