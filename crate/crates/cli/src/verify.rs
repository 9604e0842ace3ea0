use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;

use isosat::dimacs::{parse_clause_lines, parse_dimacs};
use isosat::instance::read_text;
use isosat::verify::{check_implied, check_model, Implication, DEFAULT_IMPLICATION_BUDGET};
use isosat::{Assignment, Lit};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// DIMACS CNF to check against.
    cnf: PathBuf,
    /// Model: literals one per line, or DIMACS `v` lines.
    #[arg(long, value_name = "FILE", required_unless_present = "eclauses", conflicts_with = "eclauses")]
    model: Option<PathBuf>,
    /// Headerless DIMACS clauses, each checked for implication.
    #[arg(long, value_name = "FILE")]
    eclauses: Option<PathBuf>,
    /// Conflict budget per implication check.
    #[arg(long, default_value_t = DEFAULT_IMPLICATION_BUDGET)]
    budget: u64,
}

/// Reads a model file; `c` and `s` lines are skipped and a leading `v` is
/// stripped.
pub fn parse_model(text: &str, num_vars: u32) -> Result<Assignment> {
    let mut lits = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            let v: i32 = tok.parse().with_context(|| format!("line {}: bad literal `{tok}`", i + 1))?;
            if v == 0 {
                continue;
            }
            let l = Lit::from_dimacs(v).with_context(|| format!("line {}: bad literal `{tok}`", i + 1))?;
            if l.var().get() > num_vars {
                bail!("line {}: literal {v} beyond {num_vars} variables", i + 1);
            }
            lits.push(l);
        }
    }
    Ok(Assignment::from_lits(num_vars, lits))
}

pub fn run(args: VerifyArgs) -> Result<u8> {
    let f = parse_dimacs(&read_text(&args.cnf)?).with_context(|| format!("parsing {}", args.cnf.display()))?;
    if let Some(path) = &args.model {
        let m = parse_model(&read_text(path)?, f.num_vars())?;
        let ok = check_model(&f, &m)?;
        println!("{}", if ok { "PASS" } else { "FAIL" });
        return Ok(if ok { 0 } else { 1 });
    }
    let path = args.eclauses.as_ref().expect("clap requires one of the two");
    let clauses = parse_clause_lines(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let mut failures = 0;
    for c in &clauses {
        let verdict = check_implied(&f, c, args.budget)?;
        let tag = match verdict {
            Implication::Implied => "implied",
            Implication::NotImplied => "NOT-IMPLIED",
            Implication::Unknown => "UNKNOWN",
        };
        if verdict != Implication::Implied {
            failures += 1;
        }
        println!("{tag} {}", c.to_dimacs().iter().map(i32::to_string).collect::<Vec<_>>().join(" "));
    }
    println!("{}", if failures == 0 { "PASS" } else { "FAIL" });
    Ok(if failures == 0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_formats() {
        let a = parse_model("s SATISFIABLE\nv 1 -2\nv 3 0\n", 3).unwrap();
        assert_eq!(a.true_lits().iter().map(|l| l.dimacs()).collect::<Vec<_>>(), vec![1, -2, 3]);
        let b = parse_model("1\n-2\n3\n", 3).unwrap();
        assert_eq!(a, b);
        assert!(parse_model("4\n", 3).is_err());
        assert!(parse_model("x\n", 3).is_err());
    }
}
