use serde::{Deserialize, Serialize};

use crate::eclause::filter::FilterConfig;
use crate::eclause::perm::Permutation;

use super::SolveError;

/// Which structural-metadata plugin drives E-clause emission.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetadataPlugin {
    #[default]
    None,
    Gliding,
    Pythagorean,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Conflicts per Luby unit.
    pub restart_base: u64,
    /// Fraction of deletable Local-tier clauses removed per reduction.
    pub deletion_ratio: f64,
    /// Initial activity of an installed E-clause, as a multiple of the
    /// current clause-activity increment.
    pub eclause_activity: f64,
    pub filter: FilterConfig,
    pub plugin: MetadataPlugin,
    /// Apply every generator once to each symmetric learned clause.
    pub dyn_sym: bool,
    pub generators: Vec<Permutation>,
    /// Seeds the initial variable-activity jitter.
    pub seed: u64,
    /// Conflicts between clause-database reductions.
    pub reduce_interval: u64,
    /// Conflicts a Tier2 clause may go unused before demotion to Local.
    pub tier2_idle: u64,
    pub var_decay: f64,
    pub clause_decay: f64,
    /// Strip literals via binary clauses of the asserting literal after
    /// recursive minimization.
    pub binary_minimization: bool,
    /// Record clause derivations, queued E-clauses and schedule points.
    pub audit: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restart_base: 100,
            deletion_ratio: 0.8,
            eclause_activity: 0.8,
            filter: FilterConfig::default(),
            plugin: MetadataPlugin::None,
            dyn_sym: false,
            generators: Vec::new(),
            seed: 0,
            reduce_interval: 2000,
            tier2_idle: 30_000,
            var_decay: 0.95,
            clause_decay: 0.999,
            binary_minimization: false,
            audit: false,
        }
    }
}

impl SolverConfig {
    pub fn with_plugin(plugin: MetadataPlugin) -> SolverConfig {
        SolverConfig { plugin, ..SolverConfig::default() }
    }

    pub fn with_dyn_sym(generators: Vec<Permutation>) -> SolverConfig {
        SolverConfig { dyn_sym: true, generators, ..SolverConfig::default() }
    }

    /// True when some source can emit E-clauses.
    pub fn emits_eclauses(&self) -> bool {
        self.plugin != MetadataPlugin::None || (self.dyn_sym && !self.generators.is_empty())
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |what: &str| Err(SolveError::Config(what.to_string()));
        if self.restart_base == 0 {
            return bad("restart base must be positive");
        }
        if !(self.deletion_ratio > 0.0 && self.deletion_ratio <= 1.0) {
            return bad("deletion ratio must lie in (0, 1]");
        }
        if !(self.eclause_activity.is_finite() && self.eclause_activity >= 0.0) {
            return bad("E-clause activity must be a finite non-negative number");
        }
        if self.reduce_interval == 0 {
            return bad("reduce interval must be positive");
        }
        if !(self.var_decay > 0.0 && self.var_decay < 1.0) || !(self.clause_decay > 0.0 && self.clause_decay < 1.0) {
            return bad("decay factors must lie in (0, 1)");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = SolverConfig::default();
        assert_eq!(c.restart_base, 100);
        assert_eq!(c.deletion_ratio, 0.8);
        assert_eq!(c.eclause_activity, 0.8);
        assert_eq!(c.filter.max_unfalsified, Some(3));
        assert_eq!(c.filter.size_cap, Some(20));
        assert!(!c.emits_eclauses());
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = SolverConfig { deletion_ratio: 1.5, ..SolverConfig::default() };
        assert!(c.validate().is_err());
        c.deletion_ratio = 0.5;
        c.eclause_activity = f64::NAN;
        assert!(c.validate().is_err());
        c.eclause_activity = 0.0;
        c.restart_base = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn dyn_sym_without_generators_emits_nothing() {
        assert!(!SolverConfig::with_dyn_sym(Vec::new()).emits_eclauses());
        assert!(SolverConfig::with_plugin(MetadataPlugin::Gliding).emits_eclauses());
    }
}
