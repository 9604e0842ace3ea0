use crate::formula::Clause;
use crate::lit::{Lit, Var};

use super::meta::{ClauseMeta, GlideBounds};
use super::{Candidate, EmitError, SymmetrySource};

/// Shifts every variable by `shift`, keeping polarities. Negative shifts move
/// toward variable 1.
pub fn glide_clause(c: &Clause, shift: i64) -> Result<Clause, EmitError> {
    let lits = c
        .lits()
        .iter()
        .map(|&l| {
            let v = l.var().get() as i64 + shift;
            if v < 1 || v > Var::MAX as i64 {
                return Err(EmitError::ShiftOutOfRange { lit: l, shift });
            }
            Ok(l.with_var(Var::new(v as u32)))
        })
        .collect::<Result<Vec<Lit>, _>>()?;
    // a uniform shift is injective, so no duplicates or tautologies appear
    Ok(Clause::from_vec_unchecked(lits))
}

/// Every shift licensed by the bounds `[z, nb]`, each carrying bounds moved
/// opposite to the shift so that chained emissions stay inside the range.
pub fn emit_gliding(c: &Clause, m: &ClauseMeta) -> Result<Vec<Candidate>, EmitError> {
    let mut out = Vec::new();
    GlidingSource.emit(c, m, &mut out)?;
    Ok(out)
}

#[derive(Debug, Default, Clone, Copy)]
pub struct GlidingSource;

impl SymmetrySource for GlidingSource {
    fn name(&self) -> &'static str {
        "waerden"
    }

    fn emit(&self, c: &Clause, m: &ClauseMeta, out: &mut Vec<Candidate>) -> Result<(), EmitError> {
        let Some(GlideBounds { toward_zero: z, away: nb }) = m.glide else {
            return Ok(());
        };
        if !m.symmetric {
            return Ok(());
        }
        for s in 1..=z {
            out.push(Candidate {
                clause: glide_clause(c, -(s as i64))?,
                meta: ClauseMeta::gliding(z - s, nb + s),
            });
        }
        for s in 1..=nb {
            out.push(Candidate {
                clause: glide_clause(c, s as i64)?,
                meta: ClauseMeta::gliding(z + s, nb - s),
            });
        }
        Ok(())
    }
}
