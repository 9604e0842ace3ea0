use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser};
use serde::{Deserialize, Serialize};

use isosat::eclause::filter::FilterConfig;
use isosat::eclause::parse_generators;
use isosat::instance::{load_instance_files, read_text};
use isosat::solver::MetadataPlugin;
use isosat::{Budget, Formula, SolveReport, Solver, SolverConfig};

/// Solver flags shared by `solve` and bench configurations.
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveFlags {
    /// Gliding E-clauses (needs a sidecar with gliding bounds).
    #[arg(long, conflicts_with = "pythagorean")]
    pub waerden: bool,
    /// Scaling E-clauses (needs a sidecar with gcd/maxvar metadata).
    #[arg(long)]
    pub pythagorean: bool,
    /// Apply every generator to each symmetric learned clause.
    #[arg(long)]
    pub dyn_sym_exploit: bool,
    /// Cycle-form generators, one permutation per line.
    #[arg(long, value_name = "FILE")]
    pub generators: Option<PathBuf>,
    /// Headerless DIMACS clauses that break the symmetry.
    #[arg(long, value_name = "FILE")]
    pub nonsym: Option<PathBuf>,
    /// Per-clause metadata, one row per CNF clause.
    #[arg(long, value_name = "FILE")]
    pub sidecar: Option<PathBuf>,
    /// F1: at most this many non-false literals.
    #[arg(long, default_value_t = 3)]
    pub filter_x: u32,
    /// F3: longest E-clause accepted.
    #[arg(long, default_value_t = 20)]
    pub max_size: usize,
    /// F2: partial-LBD cap.
    #[arg(long)]
    pub lbd_cap: Option<u32>,
    /// F4: total E-clauses accepted over the run.
    #[arg(long)]
    pub max_eclauses: Option<u64>,
    /// F5: total candidates examined over the run.
    #[arg(long)]
    pub examine_cap: Option<u64>,
    #[arg(long, default_value_t = 0.8)]
    pub eclause_activity: f64,
    #[arg(long, default_value_t = 0.8)]
    pub deletion_ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 1800.0)]
    pub timeout: f64,
    /// Conflict limit; reaching it reports TIMEOUT.
    #[arg(long)]
    pub max_conflicts: Option<u64>,
    /// Disable F1-F5; only exact duplicates are dropped.
    #[arg(long)]
    pub no_filtering: bool,
}

/// Standalone parser for flag lists stored in bench manifests.
#[derive(Parser, Debug)]
#[command(no_binary_name = true)]
pub struct FlagList {
    #[command(flatten)]
    pub flags: SolveFlags,
}

impl SolveFlags {
    pub fn parse_list<S: AsRef<str>>(items: &[S]) -> Result<SolveFlags> {
        let parsed = FlagList::try_parse_from(items.iter().map(AsRef::as_ref)).map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(parsed.flags)
    }

    pub fn budget(&self) -> Result<Budget> {
        if !(self.timeout.is_finite() && self.timeout > 0.0) {
            bail!("--timeout must be a positive number of seconds");
        }
        Ok(Budget { max_conflicts: self.max_conflicts, time_limit: Some(Duration::from_secs_f64(self.timeout)) })
    }

    pub fn solver_config(&self) -> Result<SolverConfig> {
        let plugin = match (self.waerden, self.pythagorean) {
            (true, true) => bail!("--waerden and --pythagorean are mutually exclusive"),
            (true, false) => MetadataPlugin::Gliding,
            (false, true) => MetadataPlugin::Pythagorean,
            (false, false) => MetadataPlugin::None,
        };
        if plugin != MetadataPlugin::None && self.sidecar.is_none() {
            bail!("--waerden/--pythagorean need --sidecar");
        }
        let generators = match (&self.generators, self.dyn_sym_exploit) {
            (Some(path), true) => parse_generators(&read_text(path)?)
                .with_context(|| format!("parsing {}", path.display()))?,
            (None, true) => bail!("--dyn-sym-exploit needs --generators"),
            (_, false) => Vec::new(),
        };
        let filter = if self.no_filtering {
            FilterConfig::unfiltered()
        } else {
            FilterConfig {
                max_unfalsified: Some(self.filter_x),
                lbd_cap: self.lbd_cap,
                size_cap: Some(self.max_size),
                total_cap: self.max_eclauses,
                examine_cap: self.examine_cap,
            }
        };
        Ok(SolverConfig {
            plugin,
            dyn_sym: self.dyn_sym_exploit,
            generators,
            filter,
            eclause_activity: self.eclause_activity,
            deletion_ratio: self.deletion_ratio,
            seed: self.seed,
            ..SolverConfig::default()
        })
    }

    pub fn load(&self, cnf: &Path) -> Result<Formula> {
        load_instance_files(cnf, self.sidecar.as_deref(), self.nonsym.as_deref())
            .with_context(|| format!("loading {}", cnf.display()))
    }

    /// Loads and solves.
    pub fn solve(&self, cnf: &Path) -> Result<SolveReport> {
        let cfg = self.solver_config()?;
        let budget = self.budget()?;
        let f = self.load(cnf)?;
        Ok(Solver::new(&f, cfg)?.run(budget)?)
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// DIMACS CNF file.
    cnf: PathBuf,
    #[command(flatten)]
    flags: SolveFlags,
    /// Also write the report as JSON.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Print the model as a DIMACS `v` line.
    #[arg(long)]
    print_model: bool,
}

pub fn run(args: SolveArgs) -> Result<u8> {
    let report = args.flags.solve(&args.cnf)?;
    print!("{}", report.key_values());
    if args.print_model {
        if let Some(m) = &report.model {
            let lits: Vec<String> = m.iter().map(i32::to_string).collect();
            println!("v {} 0", lits.join(" "));
        }
    }
    if let Some(path) = &args.report {
        let json = serde_json::to_string_pretty(&report)?;
        fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.outcome.exit_code() as u8)
}
