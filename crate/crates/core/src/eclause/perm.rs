use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formula::Clause;
use crate::lit::Lit;

use super::meta::ClauseMeta;
use super::{Candidate, EmitError, SymmetrySource};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("line {line}: bad token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: unbalanced bracket")]
    Unbalanced { line: usize },
    #[error("line {line}: literal {lit} is mapped twice")]
    MappedTwice { line: usize, lit: i32 },
    #[error("line {line}: {lit} maps to {image} but {neg} does not map to {neg_image}")]
    Inconsistent { line: usize, lit: i32, image: i32, neg: i32, neg_image: i32 },
    #[error("line {line}: mapping is not a bijection on its support")]
    NotBijective { line: usize },
}

/// A propositionally consistent literal permutation: `σ(-l) = -σ(l)`.
/// Literals outside the support map to themselves.
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation {
    map: BTreeMap<Lit, Lit>,
}

impl Permutation {
    pub fn identity() -> Permutation {
        Permutation { map: BTreeMap::new() }
    }

    /// Builds a permutation from cycles (`[a b c]` maps a→b→c→a), closing it
    /// under negation.
    pub fn from_cycles(cycles: &[Vec<i32>]) -> Result<Permutation, GeneratorError> {
        Self::from_cycles_at(cycles, 0)
    }

    fn from_cycles_at(cycles: &[Vec<i32>], line: usize) -> Result<Permutation, GeneratorError> {
        let mut explicit: BTreeMap<Lit, Lit> = BTreeMap::new();
        for cycle in cycles {
            let lits = cycle
                .iter()
                .map(|&v| Lit::from_dimacs(v).ok_or(GeneratorError::BadToken { line, token: v.to_string() }))
                .collect::<Result<Vec<_>, _>>()?;
            if lits.len() < 2 {
                continue;
            }
            for (i, &from) in lits.iter().enumerate() {
                let to = lits[(i + 1) % lits.len()];
                if explicit.insert(from, to).is_some() {
                    return Err(GeneratorError::MappedTwice { line, lit: from.dimacs() });
                }
            }
        }
        let mut map = explicit.clone();
        for (&from, &to) in &explicit {
            match map.get(&!from) {
                Some(&existing) if existing != !to => {
                    return Err(GeneratorError::Inconsistent {
                        line,
                        lit: from.dimacs(),
                        image: to.dimacs(),
                        neg: (!from).dimacs(),
                        neg_image: existing.dimacs(),
                    });
                }
                Some(_) => {}
                None => {
                    map.insert(!from, !to);
                }
            }
        }
        let mut images: Vec<Lit> = map.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        let domain: Vec<Lit> = map.keys().copied().collect();
        if images != domain {
            return Err(GeneratorError::NotBijective { line });
        }
        map.retain(|k, v| k != v);
        Ok(Permutation { map })
    }

    #[inline]
    pub fn image(&self, lit: Lit) -> Lit {
        self.map.get(&lit).copied().unwrap_or(lit)
    }

    pub fn support_len(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Cycle form over the full (negation-closed) support.
    pub fn cycles(&self) -> Vec<Vec<Lit>> {
        let mut done = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if done.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            done.insert(start);
            let mut cur = self.image(start);
            while cur != start {
                done.insert(cur);
                cycle.push(cur);
                cur = self.image(cur);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, cycle) in self.cycles().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "[")?;
            for l in cycle {
                write!(f, " {l}")?;
            }
            write!(f, " ]")?;
        }
        Ok(())
    }
}

/// Parses cycle-form generators, one permutation per line. Both `[ 1 7 ]` and
/// `( 1 7 )` brackets are accepted; lines without brackets are ignored.
pub fn parse_generators(text: &str) -> Result<Vec<Permutation>, GeneratorError> {
    let mut perms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.starts_with('c') || !trimmed.contains(['[', '(']) {
            continue;
        }
        let spaced = trimmed
            .replace(['[', '('], " [ ")
            .replace([']', ')'], " ] ");
        let mut cycles: Vec<Vec<i32>> = Vec::new();
        let mut open: Option<Vec<i32>> = None;
        for token in spaced.split_whitespace() {
            match token {
                "[" => {
                    if open.is_some() {
                        return Err(GeneratorError::Unbalanced { line });
                    }
                    open = Some(Vec::new());
                }
                "]" => cycles.push(open.take().ok_or(GeneratorError::Unbalanced { line })?),
                _ => {
                    let v: i32 = token
                        .parse()
                        .ok()
                        .filter(|&v| v != 0 && v != i32::MIN)
                        .ok_or_else(|| GeneratorError::BadToken { line, token: token.to_string() })?;
                    open.as_mut().ok_or(GeneratorError::Unbalanced { line })?.push(v);
                }
            }
        }
        if open.is_some() {
            return Err(GeneratorError::Unbalanced { line });
        }
        let perm = Permutation::from_cycles_at(&cycles, line)?;
        if !perm.is_identity() {
            perms.push(perm);
        }
    }
    Ok(perms)
}

/// One permutation per line in cycle form, readable by [`parse_generators`].
pub fn write_generators(perms: &[Permutation]) -> String {
    perms.iter().map(|p| format!("{p:?}\n")).collect()
}

/// Literal-wise image of `c`; `None` if the image is degenerate.
pub fn apply_permutation(sigma: &Permutation, c: &Clause) -> Option<Clause> {
    let image = Clause::new(c.lits().iter().map(|&l| sigma.image(l))).ok()?;
    (image.len() == c.len()).then_some(image)
}

/// Classic dynamic symmetry exploitation: every generator is applied once to
/// each symmetric learned clause.
#[derive(Debug, Clone)]
pub struct DynSymSource {
    pub generators: Vec<Permutation>,
}

impl SymmetrySource for DynSymSource {
    fn name(&self) -> &'static str {
        "dyn-sym-exploit"
    }

    fn emit(&self, c: &Clause, m: &ClauseMeta, out: &mut Vec<Candidate>) -> Result<(), EmitError> {
        if !m.symmetric {
            return Ok(());
        }
        for sigma in &self.generators {
            if let Some(image) = apply_permutation(sigma, c) {
                if image.key() != c.key() {
                    // images under a formula automorphism carry no structural metadata
                    out.push(Candidate { clause: image, meta: ClauseMeta::PLAIN });
                }
            }
        }
        Ok(())
    }
}
