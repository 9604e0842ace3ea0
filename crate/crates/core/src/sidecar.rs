//! Per-clause metadata sidecar: one line per clause, in CNF order.
//!
//! ```text
//! g <toward_zero> <away>   gliding bounds
//! p <gcd> <maxvar>         Pythagorean scaling data
//! -                        no metadata (non-symmetric clause)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::eclause::meta::{ClauseMeta, GlideBounds, PythMeta};
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SidecarError {
    #[error("line {line}: cannot parse `{text}`")]
    Malformed { line: usize, text: String },
    #[error("sidecar has {rows} rows but the formula has {clauses} clauses")]
    RowCount { rows: usize, clauses: usize },
    #[error("clause {index}: gcd {gcd} does not divide every variable")]
    NotDivisible { index: usize, gcd: u32 },
    #[error("clause {index}: maxvar {maxvar} is smaller than a variable of the clause")]
    MaxvarTooSmall { index: usize, maxvar: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SidecarRow {
    Glide(GlideBounds),
    Pyth(PythMeta),
    NoMeta,
}

impl SidecarRow {
    pub fn meta(self) -> ClauseMeta {
        match self {
            SidecarRow::Glide(g) => ClauseMeta { symmetric: true, glide: Some(g), pyth: None },
            SidecarRow::Pyth(p) => ClauseMeta { symmetric: true, glide: None, pyth: Some(p) },
            SidecarRow::NoMeta => ClauseMeta::NON_SYMMETRIC,
        }
    }

    fn of(meta: &ClauseMeta) -> SidecarRow {
        match (meta.glide, meta.pyth) {
            (Some(g), _) if meta.symmetric => SidecarRow::Glide(g),
            (None, Some(p)) if meta.symmetric => SidecarRow::Pyth(p),
            _ => SidecarRow::NoMeta,
        }
    }
}

/// Symmetric clauses without plugin metadata are written as `-` as well; the
/// format has no row kind for them.
pub fn write_sidecar(f: &Formula) -> String {
    let mut out = String::with_capacity(f.len() * 8);
    for m in f.metas() {
        match SidecarRow::of(m) {
            SidecarRow::Glide(g) => writeln!(out, "g {} {}", g.toward_zero, g.away),
            SidecarRow::Pyth(p) => writeln!(out, "p {} {}", p.gcd, p.maxvar),
            SidecarRow::NoMeta => writeln!(out, "-"),
        }
        .expect("writing to a String");
    }
    out
}

pub fn parse_sidecar(text: &str) -> Result<Vec<SidecarRow>, SidecarError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let bad = || SidecarError::Malformed { line: idx + 1, text: trimmed.to_string() };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let row = match fields.as_slice() {
            ["-"] => SidecarRow::NoMeta,
            ["g", z, n] => SidecarRow::Glide(GlideBounds::new(
                z.parse().map_err(|_| bad())?,
                n.parse().map_err(|_| bad())?,
            )),
            ["p", g, m] => {
                let gcd: u32 = g.parse().map_err(|_| bad())?;
                let maxvar: u32 = m.parse().map_err(|_| bad())?;
                if gcd == 0 || maxvar == 0 {
                    return Err(bad());
                }
                SidecarRow::Pyth(PythMeta::new(gcd, maxvar))
            }
            _ => return Err(bad()),
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Installs sidecar rows as clause metadata, checking the row count and the
/// Pythagorean divisibility invariant.
pub fn apply_sidecar(f: &mut Formula, rows: &[SidecarRow]) -> Result<(), SidecarError> {
    if rows.len() != f.len() {
        return Err(SidecarError::RowCount { rows: rows.len(), clauses: f.len() });
    }
    for (index, row) in rows.iter().enumerate() {
        if let SidecarRow::Pyth(p) = row {
            let clause = &f.clauses()[index];
            if clause.lits().iter().any(|l| l.var().get() % p.gcd != 0) {
                return Err(SidecarError::NotDivisible { index, gcd: p.gcd });
            }
            if clause.max_var().is_some_and(|v| v.get() > p.maxvar) {
                return Err(SidecarError::MaxvarTooSmall { index, maxvar: p.maxvar });
            }
        }
        f.set_meta(index, row.meta());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_pythagorean, gen_vdw, PythParams, VdwParams};

    #[test]
    fn round_trip_generated_metadata() {
        for f in [
            gen_vdw(VdwParams::new(3, 4, 12).unwrap()),
            gen_pythagorean(PythParams::new(30).unwrap()),
        ] {
            let text = write_sidecar(&f);
            assert_eq!(text.lines().count(), f.len());
            let mut g = f.clone();
            for i in 0..g.len() {
                g.set_meta(i, ClauseMeta::PLAIN);
            }
            apply_sidecar(&mut g, &parse_sidecar(&text).unwrap()).unwrap();
            assert_eq!(g.metas(), f.metas());
        }
    }

    #[test]
    fn row_formats() {
        let rows = parse_sidecar("g 1 6\np 2 10\n-\n").unwrap();
        assert_eq!(
            rows,
            vec![
                SidecarRow::Glide(GlideBounds::new(1, 6)),
                SidecarRow::Pyth(PythMeta::new(2, 10)),
                SidecarRow::NoMeta
            ]
        );
        assert!(!rows[2].meta().symmetric);
        assert!(parse_sidecar("g 1\n").is_err());
        assert!(parse_sidecar("p 0 4\n").is_err());
        assert!(parse_sidecar("x\n").is_err());
    }

    #[test]
    fn mismatches_are_rejected() {
        let mut f = gen_pythagorean(PythParams::new(17).unwrap());
        assert_eq!(
            apply_sidecar(&mut f, &[SidecarRow::NoMeta]),
            Err(SidecarError::RowCount { rows: 1, clauses: 10 })
        );
        let mut rows = parse_sidecar(&write_sidecar(&f)).unwrap();
        rows[0] = SidecarRow::Pyth(PythMeta::new(2, 5));
        assert_eq!(apply_sidecar(&mut f, &rows), Err(SidecarError::NotDivisible { index: 0, gcd: 2 }));
    }
}
