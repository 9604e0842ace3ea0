//! DIMACS CNF reading and writing.
//!
//! The reader is strict about the things that matter for metadata alignment:
//! the clause count must match the header and tautologies are rejected, so
//! that clause `i` of the file is always clause `i` of the sidecar.

use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{Clause, Formula, FormulaError};
use crate::lit::Lit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: malformed header `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: bad token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {lit} exceeds the declared variable count {num_vars}")]
    VarOutOfRange { line: usize, lit: i64, num_vars: u32 },
    #[error("header declares {expected} clauses but {found} were read")]
    ClauseCountMismatch { expected: usize, found: usize },
    #[error("clause {index} (line {line}) is tautological")]
    Tautology { index: usize, line: usize },
}

/// Parses a complete DIMACS CNF document.
pub fn parse_dimacs(text: &str) -> Result<Formula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut formula = Formula::new(0);
    let mut current: Vec<Lit> = Vec::new();
    let mut clause_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            // SATLIB end marker
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line });
            }
            let (vars, clauses) = parse_header(trimmed).ok_or_else(|| DimacsError::MalformedHeader {
                line,
                text: trimmed.to_string(),
            })?;
            header = Some((vars, clauses));
            formula = Formula::new(vars);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(DimacsError::MissingHeader);
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| DimacsError::BadToken { line, token: token.to_string() })?;
            if value == 0 {
                finish_clause(&mut formula, &mut current, clause_line)?;
                continue;
            }
            if value.unsigned_abs() > num_vars as u64 {
                return Err(DimacsError::VarOutOfRange { line, lit: value, num_vars });
            }
            if current.is_empty() {
                clause_line = line;
            }
            current.push(Lit::from_dimacs(value as i32).expect("nonzero and in range"));
        }
    }

    let Some((_, expected)) = header else {
        return Err(DimacsError::MissingHeader);
    };
    if !current.is_empty() {
        // tolerate a missing terminator on the last clause
        finish_clause(&mut formula, &mut current, clause_line)?;
    }
    if formula.len() != expected {
        return Err(DimacsError::ClauseCountMismatch { expected, found: formula.len() });
    }
    Ok(formula)
}

fn parse_header(line: &str) -> Option<(u32, usize)> {
    let mut it = line.split_whitespace();
    if it.next()? != "p" || it.next()? != "cnf" {
        return None;
    }
    let vars: u32 = it.next()?.parse().ok()?;
    let clauses: usize = it.next()?.parse().ok()?;
    if it.next().is_some() || vars > crate::lit::Var::MAX {
        return None;
    }
    Some((vars, clauses))
}

fn finish_clause(formula: &mut Formula, current: &mut Vec<Lit>, line: usize) -> Result<(), DimacsError> {
    let index = formula.len();
    let clause = Clause::new(current.drain(..)).map_err(|_| DimacsError::Tautology { index, line })?;
    formula
        .push(clause)
        .map_err(|e| match e {
            FormulaError::VarOutOfRange { lit, num_vars } => {
                DimacsError::VarOutOfRange { line, lit: lit as i64, num_vars }
            }
            _ => unreachable!("push only checks ranges"),
        })
}

/// Parses zero-terminated clauses without a header, as used by the
/// non-symmetric clause file and E-clause lists. Comment lines are skipped.
pub fn parse_clause_lines(text: &str) -> Result<Vec<Clause>, DimacsError> {
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut clause_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('p') {
            continue;
        }
        for token in trimmed.split_whitespace() {
            let value: i32 = token
                .parse()
                .map_err(|_| DimacsError::BadToken { line, token: token.to_string() })?;
            if value == 0 {
                let index = clauses.len();
                clauses.push(
                    Clause::new(current.drain(..))
                        .map_err(|_| DimacsError::Tautology { index, line: clause_line })?,
                );
                continue;
            }
            if current.is_empty() {
                clause_line = line;
            }
            let lit = Lit::from_dimacs(value)
                .ok_or_else(|| DimacsError::BadToken { line, token: token.to_string() })?;
            current.push(lit);
        }
    }
    if !current.is_empty() {
        let index = clauses.len();
        clauses.push(Clause::new(current).map_err(|_| DimacsError::Tautology { index, line: clause_line })?);
    }
    Ok(clauses)
}

pub fn write_clause(out: &mut String, clause: &Clause) {
    for l in clause.lits() {
        let _ = write!(out, "{} ", l.dimacs());
    }
    out.push_str("0\n");
}

/// Serializes `f` with UNIX newlines and no comments.
pub fn write_dimacs(f: &Formula) -> String {
    let mut out = String::with_capacity(16 + f.len() * 12);
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.len());
    for c in f.clauses() {
        write_clause(&mut out, c);
    }
    out
}
