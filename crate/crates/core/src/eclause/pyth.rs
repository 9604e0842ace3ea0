use crate::formula::Clause;
use crate::lit::{Lit, Var};

use super::meta::{ClauseMeta, PythMeta};
use super::{Candidate, EmitError, SymmetrySource};

/// Scaled copies `i * c / gcd` for `i in 1..=floor(n * gcd / maxvar)`,
/// `i != gcd`. Each copy records gcd `i` and maxvar `maxvar * i / gcd`.
pub fn emit_pythagorean(c: &Clause, m: &ClauseMeta, universe: u32) -> Result<Vec<Candidate>, EmitError> {
    let mut out = Vec::new();
    PythagoreanSource { universe }.emit(c, m, &mut out)?;
    Ok(out)
}

/// Scaling source for a Pythagorean-triple formula over `1..=universe`.
#[derive(Debug, Clone, Copy)]
pub struct PythagoreanSource {
    pub universe: u32,
}

impl SymmetrySource for PythagoreanSource {
    fn name(&self) -> &'static str {
        "pythagorean"
    }

    fn emit(&self, c: &Clause, m: &ClauseMeta, out: &mut Vec<Candidate>) -> Result<(), EmitError> {
        let Some(PythMeta { gcd, maxvar }) = m.pyth else {
            return Ok(());
        };
        if !m.symmetric || gcd == 0 || maxvar == 0 {
            return Ok(());
        }
        if let Some(&lit) = c.lits().iter().find(|l| l.var().get() % gcd != 0) {
            return Err(EmitError::NotDivisible { lit, gcd });
        }
        if maxvar % gcd != 0 {
            return Err(EmitError::NotDivisible { lit: Var::new(maxvar).pos(), gcd });
        }
        let bound = self.universe as u64 * gcd as u64 / maxvar as u64;
        for i in (1..=bound).filter(|&i| i != gcd as u64) {
            let lits = c
                .lits()
                .iter()
                .map(|&l| {
                    let v = l.var().get() as u64 / gcd as u64 * i;
                    if v > Var::MAX as u64 {
                        return Err(EmitError::ScaleOverflow { lit: l, factor: i, gcd });
                    }
                    Ok(l.with_var(Var::new(v as u32)))
                })
                .collect::<Result<Vec<Lit>, _>>()?;
            // i <= bound keeps maxvar * i / gcd <= universe
            let scaled_max = (maxvar as u64 / gcd as u64 * i) as u32;
            out.push(Candidate {
                clause: Clause::from_vec_unchecked(lits),
                meta: ClauseMeta::pythagorean(i as u32, scaled_max),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(v: &[i32]) -> Clause {
        Clause::from_dimacs(v).unwrap()
    }

    #[test]
    fn doubling_a_learned_clause() {
        let out = emit_pythagorean(&cl(&[3, 4, -12, -13]), &ClauseMeta::pythagorean(1, 13), 26).unwrap();
        assert_eq!(
            out,
            vec![Candidate { clause: cl(&[6, 8, -24, -26]), meta: ClauseMeta::pythagorean(2, 26) }]
        );
    }

    #[test]
    fn identity_factor_is_skipped_and_division_happens() {
        // core gcd 2: (6 8 10) can be divided back down to (3 4 5)
        let out = emit_pythagorean(&cl(&[6, 8, 10]), &ClauseMeta::pythagorean(2, 10), 20).unwrap();
        let clauses: Vec<_> = out.iter().map(|c| c.clause.to_dimacs()).collect();
        assert_eq!(clauses, vec![vec![3, 4, 5], vec![9, 12, 15], vec![12, 16, 20]]);
        assert_eq!(out[0].meta, ClauseMeta::pythagorean(1, 5));
        assert_eq!(out[2].meta, ClauseMeta::pythagorean(4, 20));
    }

    #[test]
    fn out_of_universe_bound_is_empty() {
        assert!(emit_pythagorean(&cl(&[3, 4, 5]), &ClauseMeta::pythagorean(1, 13), 12).unwrap().is_empty());
        // bound 1 only yields the identity
        assert!(emit_pythagorean(&cl(&[3, 4, 5]), &ClauseMeta::pythagorean(1, 5), 9).unwrap().is_empty());
    }

    #[test]
    fn divisibility_is_enforced() {
        assert_eq!(
            emit_pythagorean(&cl(&[3, 8]), &ClauseMeta::pythagorean(2, 10), 100),
            Err(EmitError::NotDivisible { lit: Lit::from_dimacs(3).unwrap(), gcd: 2 })
        );
    }
}
