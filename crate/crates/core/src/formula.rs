use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::eclause::meta::ClauseMeta;
use crate::lit::{Lit, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause contains both {0} and its negation")]
    Tautology(Lit),
    #[error("literal {lit} exceeds the declared variable count {num_vars}")]
    VarOutOfRange { lit: i32, num_vars: u32 },
    #[error("0 is not a literal")]
    ZeroLiteral,
    #[error("variable {0} is not a pivot: it must occur positively in one clause and negatively in the other")]
    BadPivot(Var),
}

/// A disjunction of literals. Stored clauses never repeat a literal and never
/// contain a complementary pair; the order of first occurrence is kept.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Clause, FormulaError> {
        let mut out: Vec<Lit> = Vec::new();
        for l in lits {
            if out.contains(&!l) {
                return Err(FormulaError::Tautology(l));
            }
            if !out.contains(&l) {
                out.push(l);
            }
        }
        Ok(Clause { lits: out })
    }

    pub fn from_dimacs(values: &[i32]) -> Result<Clause, FormulaError> {
        let lits = values
            .iter()
            .map(|&v| Lit::from_dimacs(v).ok_or(FormulaError::ZeroLiteral))
            .collect::<Result<Vec<_>, _>>()?;
        Clause::new(lits)
    }

    /// Wraps literals that are already known to be duplicate- and tautology-free.
    pub(crate) fn from_vec_unchecked(lits: Vec<Lit>) -> Clause {
        debug_assert!(Clause::new(lits.iter().copied()).map(|c| c.lits.len()) == Ok(lits.len()));
        Clause { lits }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.contains(&lit)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.lits.iter().map(|l| l.var()).max()
    }

    pub fn to_dimacs(&self) -> Vec<i32> {
        self.lits.iter().map(|l| l.dimacs()).collect()
    }

    /// Order-insensitive identity of the clause.
    pub fn key(&self) -> Vec<Lit> {
        let mut k = self.lits.clone();
        k.sort_unstable();
        k
    }

    pub fn into_lits(self) -> Vec<Lit> {
        self.lits
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Resolves `c1` and `c2` on `pivot`. Shared literals are merged; a second
/// complementary pair makes the resolvent tautological, which is an error.
pub fn resolve(c1: &Clause, c2: &Clause, pivot: Var) -> Result<Clause, FormulaError> {
    let (pos, neg) = if c1.contains(pivot.pos()) && c2.contains(pivot.neg()) {
        (c1, c2)
    } else if c1.contains(pivot.neg()) && c2.contains(pivot.pos()) {
        (c2, c1)
    } else {
        return Err(FormulaError::BadPivot(pivot));
    };
    let rest = pos
        .lits()
        .iter()
        .chain(neg.lits())
        .copied()
        .filter(|l| l.var() != pivot);
    Clause::new(rest)
}

/// A CNF formula together with one metadata slot per clause.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Formula {
    num_vars: u32,
    clauses: Vec<Clause>,
    metas: Vec<ClauseMeta>,
}

impl Formula {
    pub fn new(num_vars: u32) -> Formula {
        Formula { num_vars, clauses: Vec::new(), metas: Vec::new() }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn metas(&self) -> &[ClauseMeta] {
        &self.metas
    }

    pub fn meta(&self, index: usize) -> &ClauseMeta {
        &self.metas[index]
    }

    pub fn set_meta(&mut self, index: usize, meta: ClauseMeta) {
        self.metas[index] = meta;
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Clause, &ClauseMeta)> {
        self.clauses.iter().zip(&self.metas)
    }

    /// Adds a symmetric clause without plugin metadata.
    pub fn push(&mut self, clause: Clause) -> Result<(), FormulaError> {
        self.push_with_meta(clause, ClauseMeta::PLAIN)
    }

    pub fn push_with_meta(&mut self, clause: Clause, meta: ClauseMeta) -> Result<(), FormulaError> {
        if let Some(l) = clause.lits().iter().find(|l| l.var().get() > self.num_vars) {
            return Err(FormulaError::VarOutOfRange { lit: l.dimacs(), num_vars: self.num_vars });
        }
        self.clauses.push(clause);
        self.metas.push(meta);
        Ok(())
    }

    /// True when both formulas have the same variable count and the same set
    /// of clauses, ignoring clause order and literal order.
    pub fn same_clauses(&self, other: &Formula) -> bool {
        if self.num_vars != other.num_vars || self.len() != other.len() {
            return false;
        }
        let mut a: Vec<Vec<Lit>> = self.clauses.iter().map(Clause::key).collect();
        let mut b: Vec<Vec<Lit>> = other.clauses.iter().map(Clause::key).collect();
        a.sort();
        b.sort();
        a == b
    }

    pub fn clause_keys(&self) -> HashSet<Vec<Lit>> {
        self.clauses.iter().map(Clause::key).collect()
    }
}

/// Ternary per-variable state, indexed by 1-based variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn new(num_vars: u32) -> Assignment {
        Assignment { values: vec![None; num_vars as usize + 1] }
    }

    /// Builds an assignment from literals that are true; variables beyond
    /// `num_vars` grow the assignment.
    pub fn from_lits<I: IntoIterator<Item = Lit>>(num_vars: u32, lits: I) -> Assignment {
        let mut a = Assignment::new(num_vars);
        for l in lits {
            a.set(l.var(), l.is_positive());
        }
        a
    }

    pub fn num_vars(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn set(&mut self, var: Var, value: bool) {
        if var.index() >= self.values.len() {
            self.values.resize(var.index() + 1, None);
        }
        self.values[var.index()] = Some(value);
    }

    pub fn unset(&mut self, var: Var) {
        if let Some(v) = self.values.get_mut(var.index()) {
            *v = None;
        }
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.values.get(var.index()).copied().flatten()
    }

    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| v == lit.is_positive())
    }

    /// True when every variable `1..=num_vars` has a value.
    pub fn is_total_for(&self, num_vars: u32) -> bool {
        (1..=num_vars).all(|v| self.get(Var::new(v)).is_some())
    }

    pub fn true_lits(&self) -> Vec<Lit> {
        (1..self.values.len())
            .filter_map(|v| self.values[v].map(|b| Var::new(v as u32).lit(b)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    Satisfied,
    Falsified,
    Undetermined,
}

pub fn eval_clause(clause: &Clause, a: &Assignment) -> Evaluation {
    let mut open = false;
    for &l in clause.lits() {
        match a.lit_value(l) {
            Some(true) => return Evaluation::Satisfied,
            Some(false) => {}
            None => open = true,
        }
    }
    if open {
        Evaluation::Undetermined
    } else {
        Evaluation::Falsified
    }
}

/// Falsified as soon as one clause is falsified; satisfied only if all are.
pub fn eval(f: &Formula, a: &Assignment) -> Evaluation {
    let mut result = Evaluation::Satisfied;
    for c in f.clauses() {
        match eval_clause(c, a) {
            Evaluation::Falsified => return Evaluation::Falsified,
            Evaluation::Undetermined => result = Evaluation::Undetermined,
            Evaluation::Satisfied => {}
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cl(v: &[i32]) -> Clause {
        Clause::from_dimacs(v).unwrap()
    }

    fn set(c: &Clause) -> Vec<i32> {
        let mut v = c.to_dimacs();
        v.sort();
        v
    }

    #[test]
    fn duplicates_are_merged_and_tautologies_rejected() {
        assert_eq!(cl(&[1, 2, 1, -3]).to_dimacs(), vec![1, 2, -3]);
        assert!(matches!(Clause::from_dimacs(&[1, -1]), Err(FormulaError::Tautology(_))));
        assert_eq!(Clause::from_dimacs(&[0]), Err(FormulaError::ZeroLiteral));
    }

    #[test]
    fn resolve_basic() {
        let (a, b) = (cl(&[1, 2, 3]), cl(&[-3, -4, -5]));
        let r = resolve(&a, &b, Var::new(3)).unwrap();
        assert_eq!(set(&r), vec![-5, -4, 1, 2]);
        assert!(brute_implies(&[&a, &b], &r, 5));
    }

    #[test]
    fn resolve_chain_of_the_conflict_example() {
        let r = resolve(&cl(&[1, 2, 3]), &cl(&[-3, -4, -5]), Var::new(3)).unwrap();
        let r = resolve(&r, &cl(&[2, 4, 6]), Var::new(4)).unwrap();
        assert_eq!(set(&r), vec![-5, 1, 2, 6]);
    }

    #[test]
    fn resolve_merges() {
        let r = resolve(&cl(&[1, 2]), &cl(&[-2, 1]), Var::new(2)).unwrap();
        assert_eq!(r.to_dimacs(), vec![1]);
    }

    #[test]
    fn resolve_errors() {
        assert_eq!(
            resolve(&cl(&[1, 2]), &cl(&[2, 3]), Var::new(2)),
            Err(FormulaError::BadPivot(Var::new(2)))
        );
        assert_eq!(
            resolve(&cl(&[1, 2]), &cl(&[3]), Var::new(2)),
            Err(FormulaError::BadPivot(Var::new(2)))
        );
        assert!(matches!(
            resolve(&cl(&[1, 2]), &cl(&[-1, -2]), Var::new(1)),
            Err(FormulaError::Tautology(_))
        ));
    }

    #[test]
    fn eval_cases() {
        let mut f = Formula::new(3);
        f.push(cl(&[1, -3])).unwrap();
        f.push(cl(&[-1, -2])).unwrap();
        let all_true = Assignment::from_lits(3, [1, 2, 3].map(|v| Lit::from_dimacs(v).unwrap()));
        assert_eq!(eval(&f, &all_true), Evaluation::Falsified);
        let mut partial = Assignment::new(3);
        partial.set(Var::new(1), true);
        assert_eq!(eval(&f, &partial), Evaluation::Undetermined);
        assert_eq!(eval(&Formula::new(0), &Assignment::new(0)), Evaluation::Satisfied);
    }

    #[test]
    fn out_of_range_clause_is_rejected() {
        let mut f = Formula::new(2);
        assert_eq!(
            f.push(cl(&[1, -3])),
            Err(FormulaError::VarOutOfRange { lit: -3, num_vars: 2 })
        );
    }

    fn brute_implies(premises: &[&Clause], conclusion: &Clause, num_vars: u32) -> bool {
        (0u32..1 << num_vars).all(|bits| {
            let a = Assignment::from_lits(
                num_vars,
                (1..=num_vars).map(|v| Var::new(v).lit(bits >> (v - 1) & 1 == 1)),
            );
            let holds = |c: &Clause| eval_clause(c, &a) == Evaluation::Satisfied;
            !premises.iter().all(|c| holds(c)) || holds(conclusion)
        })
    }

    fn small_clause() -> impl Strategy<Value = Vec<i32>> {
        prop::collection::vec((1i32..=6, any::<bool>()), 1..5)
            .prop_map(|v| v.into_iter().map(|(x, s)| if s { x } else { -x }).collect())
    }

    proptest! {
        #[test]
        fn resolvent_is_implied(a in small_clause(), b in small_clause(), pivot in 1u32..=6) {
            let (Ok(mut c1), Ok(mut c2)) = (Clause::from_dimacs(&a), Clause::from_dimacs(&b)) else {
                return Ok(());
            };
            let p = Var::new(pivot);
            // force the pivot into both clauses with opposite signs
            if !c1.contains(p.pos()) && !c1.contains(p.neg()) {
                c1.lits.push(p.pos());
            }
            let want = !c1.lits.iter().copied().find(|l| l.var() == p).unwrap();
            c2.lits.retain(|l| l.var() != p);
            c2.lits.push(want);
            match resolve(&c1, &c2, p) {
                Ok(r) => prop_assert!(brute_implies(&[&c1, &c2], &r, 6)),
                Err(FormulaError::Tautology(_)) => {}
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
