//! Benchmark families with their structural metadata attached at birth.

use thiserror::Error;

use crate::eclause::meta::{gcd, ClauseMeta};
use crate::eclause::perm::Permutation;
use crate::formula::{Clause, Formula};
use crate::lit::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("progression lengths must be at least 2 (got j={j}, k={k})")]
    ProgressionTooShort { j: u32, k: u32 },
    #[error("universe size must be at least 1")]
    EmptyUniverse,
    #[error("universe size {0} exceeds the variable range")]
    TooLarge(u32),
}

/// Does every 2-coloring of `1..=n` contain a `j`-progression of color 1 or a
/// `k`-progression of color 2? The CNF is satisfiable iff it does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VdwParams {
    j: u32,
    k: u32,
    n: u32,
}

impl VdwParams {
    pub fn new(j: u32, k: u32, n: u32) -> Result<VdwParams, ParamError> {
        if j < 2 || k < 2 {
            return Err(ParamError::ProgressionTooShort { j, k });
        }
        if n < 1 {
            return Err(ParamError::EmptyUniverse);
        }
        if n > Var::MAX {
            return Err(ParamError::TooLarge(n));
        }
        Ok(VdwParams { j, k, n })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PythParams {
    n: u32,
}

impl PythParams {
    pub fn new(n: u32) -> Result<PythParams, ParamError> {
        if n < 1 {
            return Err(ParamError::EmptyUniverse);
        }
        if n > Var::MAX {
            return Err(ParamError::TooLarge(n));
        }
        Ok(PythParams { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Progression clauses: for every gap `d` and start `i` with
/// `i + (len-1)d <= n`, the positive clause over the `j`-progression and the
/// negative clause over the `k`-progression. A clause with start `i` in a
/// family whose last start is `last` has gliding bounds `[i-1, last-i]`.
pub fn gen_vdw(p: VdwParams) -> Formula {
    let mut f = Formula::new(p.n);
    push_family(&mut f, p.j, p.n, true);
    push_family(&mut f, p.k, p.n, false);
    f
}

fn push_family(f: &mut Formula, len: u32, n: u32, positive: bool) {
    let span = (len - 1) as u64;
    let mut d = 1u64;
    while span * d < n as u64 {
        let last = n as u64 - span * d;
        for i in 1..=last {
            let lits = (0..len as u64).map(|t| Var::new((i + t * d) as u32).lit(positive));
            let meta = ClauseMeta::gliding((i - 1) as u32, (last - i) as u32);
            f.push_with_meta(Clause::from_vec_unchecked(lits.collect()), meta)
                .expect("progression stays inside 1..=n");
        }
        d += 1;
    }
}

/// Number of clauses [`gen_vdw`] produces, by direct summation.
pub fn vdw_clause_count(p: VdwParams) -> usize {
    let family = |len: u32| -> usize {
        (1..=p.n as u64)
            .map(|d| (p.n as i64 - ((len - 1) as u64 * d) as i64).max(0) as usize)
            .sum()
    };
    family(p.j) + family(p.k)
}

/// All `(a, b, c)` with `a < b < c <= n` and `a² + b² = c²`, ordered by `c`
/// then `a`.
pub fn enumerate_triples(n: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for c in 1..=n as u64 {
        let cc = c * c;
        for a in 1..c {
            let bb = cc - a * a;
            let b = isqrt(bb);
            if b <= a {
                break;
            }
            if b * b == bb {
                out.push((a as u32, b as u32, c as u32));
            }
        }
    }
    out
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Two clauses per triple, `(a b c)` and `(-a -b -c)`, each annotated with
/// `gcd(a, b, c)` and maxvar `c`.
pub fn gen_pythagorean(p: PythParams) -> Formula {
    let mut f = Formula::new(p.n);
    for (a, b, c) in enumerate_triples(p.n) {
        let meta = ClauseMeta::pythagorean(gcd(gcd(a, b), c), c);
        for positive in [true, false] {
            let lits = [a, b, c].map(|v| Var::new(v).lit(positive));
            f.push_with_meta(Clause::from_vec_unchecked(lits.to_vec()), meta)
                .expect("triple stays inside 1..=n");
        }
    }
    f
}

/// Automorphisms of [`gen_vdw`]: the reversal `i ↦ n+1-i`, plus the color
/// swap `i ↦ -i` when both progression lengths agree.
pub fn vdw_generators(p: VdwParams) -> Vec<Permutation> {
    let n = p.n as i32;
    let reversal: Vec<Vec<i32>> = (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
    let mut out = vec![Permutation::from_cycles(&reversal).expect("disjoint transpositions")];
    if p.j == p.k {
        out.push(color_swap(p.n));
    }
    out.retain(|g| !g.is_identity());
    out
}

/// The color swap, the one automorphism every Pythagorean formula has.
pub fn pyth_generators(p: PythParams) -> Vec<Permutation> {
    vec![color_swap(p.n)]
}

fn color_swap(n: u32) -> Permutation {
    let cycles: Vec<Vec<i32>> = (1..=n as i32).map(|i| vec![i, -i]).collect();
    Permutation::from_cycles(&cycles).expect("disjoint transpositions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Clause;

    fn keys(v: &[&[i32]]) -> Vec<Vec<i32>> {
        let mut out: Vec<Vec<i32>> = v
            .iter()
            .map(|c| {
                let mut c = c.to_vec();
                c.sort();
                c
            })
            .collect();
        out.sort();
        out
    }

    fn formula_keys(f: &Formula) -> Vec<Vec<i32>> {
        let mut out: Vec<Vec<i32>> = f
            .clauses()
            .iter()
            .map(|c| {
                let mut c = c.to_dimacs();
                c.sort();
                c
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn vdw_3_3_7_is_the_eighteen_clause_example() {
        let f = gen_vdw(VdwParams::new(3, 3, 7).unwrap());
        let expected: &[&[i32]] = &[
            &[1, 2, 3], &[-1, -2, -3], &[2, 3, 4], &[-2, -3, -4],
            &[3, 4, 5], &[-3, -4, -5], &[4, 5, 6], &[-4, -5, -6],
            &[5, 6, 7], &[-5, -6, -7], &[1, 3, 5], &[-1, -3, -5],
            &[2, 4, 6], &[-2, -4, -6], &[3, 5, 7], &[-3, -5, -7],
            &[1, 4, 7], &[-1, -4, -7],
        ];
        assert_eq!(f.num_vars(), 7);
        assert_eq!(formula_keys(&f), keys(expected));
    }

    #[test]
    fn vdw_3_3_10_families() {
        let f = gen_vdw(VdwParams::new(3, 3, 10).unwrap());
        assert_eq!(f.len(), 40);
        let positive: Vec<Vec<i32>> = f
            .clauses()
            .iter()
            .filter(|c| c.lits()[0].is_positive())
            .map(Clause::to_dimacs)
            .collect();
        assert_eq!(positive.len(), 20);
        assert_eq!(positive[0], vec![1, 2, 3]);
        assert_eq!(positive[7], vec![8, 9, 10]);
        assert_eq!(positive[8], vec![1, 3, 5]);
        assert_eq!(positive[13], vec![6, 8, 10]);
        assert_eq!(positive[14], vec![1, 4, 7]);
        assert_eq!(positive[17], vec![4, 7, 10]);
        assert_eq!(&positive[18..], &[vec![1, 5, 9], vec![2, 6, 10]]);
    }

    #[test]
    fn vdw_bounds_examples() {
        let f = gen_vdw(VdwParams::new(3, 3, 10).unwrap());
        let meta_of = |v: &[i32]| {
            let c = Clause::from_dimacs(v).unwrap();
            let i = f.clauses().iter().position(|x| *x == c).unwrap();
            f.meta(i).glide.unwrap()
        };
        let b = meta_of(&[2, 3, 4]);
        assert_eq!((b.toward_zero, b.away), (1, 6));
        let b = meta_of(&[-4, -5, -6]);
        assert_eq!((b.toward_zero, b.away), (3, 4));
        assert!(f.metas().iter().all(|m| m.symmetric));
    }

    #[test]
    fn vdw_degenerate_and_asymmetric() {
        assert!(gen_vdw(VdwParams::new(3, 3, 2).unwrap()).is_empty());
        let f = gen_vdw(VdwParams::new(3, 4, 8).unwrap());
        assert_eq!(f.len(), vdw_clause_count(VdwParams::new(3, 4, 8).unwrap()));
        assert!(VdwParams::new(1, 3, 5).is_err());
        assert!(VdwParams::new(3, 3, 0).is_err());
        assert!(PythParams::new(0).is_err());
    }

    #[test]
    fn triples_17_and_26() {
        assert_eq!(
            enumerate_triples(17),
            vec![(3, 4, 5), (6, 8, 10), (5, 12, 13), (9, 12, 15), (8, 15, 17)]
        );
        let mut t26 = enumerate_triples(26);
        t26.sort();
        let mut expected = vec![
            (3, 4, 5), (5, 12, 13), (6, 8, 10), (8, 15, 17), (9, 12, 15),
            (7, 24, 25), (10, 24, 26), (12, 16, 20), (15, 20, 25),
        ];
        expected.sort();
        assert_eq!(t26, expected);
        assert!(enumerate_triples(4).is_empty());
    }

    #[test]
    fn pythagorean_formula() {
        let f = gen_pythagorean(PythParams::new(17).unwrap());
        assert_eq!(f.num_vars(), 17);
        assert_eq!(f.len(), 10);
        let i = f.clauses().iter().position(|c| c.to_dimacs() == vec![6, 8, 10]).unwrap();
        assert_eq!(f.meta(i).pyth.map(|p| (p.gcd, p.maxvar)), Some((2, 10)));
        assert_eq!(f.meta(i + 1).pyth.map(|p| (p.gcd, p.maxvar)), Some((2, 10)));
        assert_eq!(f.clauses()[i + 1].to_dimacs(), vec![-6, -8, -10]);

        let empty = gen_pythagorean(PythParams::new(4).unwrap());
        assert_eq!((empty.len(), empty.num_vars()), (0, 4));
    }

    #[test]
    fn generators_are_automorphisms() {
        use crate::eclause::perm::apply_permutation;
        let check = |f: &Formula, gens: &[Permutation]| {
            let keys = f.clause_keys();
            for g in gens {
                for c in f.clauses() {
                    assert!(keys.contains(&apply_permutation(g, c).unwrap().key()), "{g:?} moves {c:?} out");
                }
            }
        };
        let p = VdwParams::new(3, 3, 9).unwrap();
        assert_eq!(vdw_generators(p).len(), 2);
        check(&gen_vdw(p), &vdw_generators(p));
        let p = VdwParams::new(3, 4, 12).unwrap();
        assert_eq!(vdw_generators(p).len(), 1);
        check(&gen_vdw(p), &vdw_generators(p));
        let p = PythParams::new(30).unwrap();
        check(&gen_pythagorean(p), &pyth_generators(p));
    }

    #[test]
    fn isqrt_is_exact() {
        for x in 0..5000u64 {
            let r = isqrt(x);
            assert!(r * r <= x && (r + 1) * (r + 1) > x);
        }
    }
}
