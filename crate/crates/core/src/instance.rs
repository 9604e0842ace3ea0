//! Assembling a solver input from a CNF, an optional metadata sidecar and an
//! optional file of non-symmetric clauses.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::dimacs::{parse_clause_lines, parse_dimacs, DimacsError};
use crate::eclause::meta::ClauseMeta;
use crate::formula::{Formula, FormulaError};
use crate::sidecar::{apply_sidecar, parse_sidecar, SidecarError};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("CNF: {0}")]
    Cnf(#[from] DimacsError),
    #[error("sidecar: {0}")]
    Sidecar(#[from] SidecarError),
    #[error("non-symmetric clauses: {0}")]
    NonSymmetricParse(DimacsError),
    #[error("non-symmetric clauses: {0}")]
    NonSymmetricRange(FormulaError),
}

pub fn read_text(path: &Path) -> Result<String, InstanceError> {
    fs::read_to_string(path).map_err(|source| InstanceError::Io { path: path.to_path_buf(), source })
}

/// Without a sidecar every input clause is symmetric and carries no plugin
/// metadata. Non-symmetric clauses are appended after the CNF's clauses.
pub fn load_instance(
    cnf: &str,
    sidecar: Option<&str>,
    nonsym: Option<&str>,
) -> Result<Formula, InstanceError> {
    let mut f = parse_dimacs(cnf)?;
    if let Some(text) = sidecar {
        apply_sidecar(&mut f, &parse_sidecar(text)?)?;
    }
    if let Some(text) = nonsym {
        for c in parse_clause_lines(text).map_err(InstanceError::NonSymmetricParse)? {
            f.push_with_meta(c, ClauseMeta::NON_SYMMETRIC)
                .map_err(InstanceError::NonSymmetricRange)?;
        }
    }
    Ok(f)
}

pub fn load_instance_files(
    cnf: &Path,
    sidecar: Option<&Path>,
    nonsym: Option<&Path>,
) -> Result<Formula, InstanceError> {
    let cnf = read_text(cnf)?;
    let sidecar = sidecar.map(read_text).transpose()?;
    let nonsym = nonsym.map(read_text).transpose()?;
    load_instance(&cnf, sidecar.as_deref(), nonsym.as_deref())
}
