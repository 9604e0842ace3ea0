//! Configuration × instance runs with par-2 aggregation.
//!
//! A manifest is TOML:
//!
//! ```toml
//! timeout = 60.0   # seconds, default 1800
//! jobs = 4         # default: available parallelism
//!
//! [[config]]
//! name = "waerden"
//! flags = ["--waerden"]
//!
//! [[instance]]
//! cnf = "vdw_3_3_9.cnf"          # relative to the manifest
//! sidecar = "vdw_3_3_9.meta"     # optional
//! generators = "vdw_3_3_9.gens"  # optional
//! nonsym = "extra.cnf"           # optional
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use isosat::{Outcome, SolveReport};

use crate::run::SolveFlags;

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// TOML manifest of configurations and instances.
    #[arg(required_unless_present = "from_records")]
    manifest: Option<PathBuf>,
    /// Rebuild the table from saved records instead of solving.
    #[arg(long, value_name = "FILE", conflicts_with = "manifest")]
    from_records: Option<PathBuf>,
    /// Write one JSON record per run (JSON lines).
    #[arg(long, value_name = "FILE")]
    records: Option<PathBuf>,
    /// Write the aggregated table as JSON.
    #[arg(long, value_name = "FILE")]
    table: Option<PathBuf>,
    /// Parallel solver runs; overrides the manifest.
    #[arg(long)]
    jobs: Option<usize>,
    /// Per-run limit in seconds; overrides the manifest.
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub timeout: Option<f64>,
    pub jobs: Option<usize>,
    #[serde(default, rename = "config")]
    pub configs: Vec<ConfigEntry>,
    #[serde(default, rename = "instance")]
    pub instances: Vec<InstanceEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEntry {
    pub name: String,
    #[serde(default)]
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceEntry {
    pub cnf: PathBuf,
    pub name: Option<String>,
    pub sidecar: Option<PathBuf>,
    pub generators: Option<PathBuf>,
    pub nonsym: Option<PathBuf>,
}

/// One (configuration, instance) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub config: String,
    pub instance: String,
    pub timeout: f64,
    pub report: SolveReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub config: String,
    pub instances: usize,
    pub timed_out: usize,
    pub mean_time: f64,
    pub mean_par2: f64,
    pub mean_conflicts: f64,
    pub mean_eclauses: f64,
    pub mean_overhead: f64,
    /// Live over total E-family clauses, summed across instances.
    pub active_e: Option<f64>,
    /// Live over total plain conflict clauses, summed across instances.
    pub active_c: Option<f64>,
}

/// Groups by configuration (first-appearance order), then sorts by par-2.
/// Timed-out runs count the limit as their time and twice the limit for
/// par-2; their counters are the values at the cutoff.
pub fn aggregate(records: &[Record]) -> Vec<BenchRow> {
    let mut names: Vec<&str> = Vec::new();
    for r in records {
        if !names.contains(&r.config.as_str()) {
            names.push(&r.config);
        }
    }
    let mut rows: Vec<BenchRow> = names
        .into_iter()
        .map(|name| {
            let runs: Vec<&Record> = records.iter().filter(|r| r.config == name).collect();
            let n = runs.len() as f64;
            let mean = |f: &dyn Fn(&Record) -> f64| runs.iter().map(|r| f(r)).sum::<f64>() / n;
            let timed_out = |r: &Record| r.report.outcome == Outcome::Timeout;
            let sum = |f: &dyn Fn(&SolveReport) -> u64| runs.iter().map(|r| f(&r.report)).sum::<u64>();
            let ratio = |live: u64, total: u64| (total > 0).then(|| live as f64 / total as f64);
            BenchRow {
                config: name.to_string(),
                instances: runs.len(),
                timed_out: runs.iter().filter(|r| timed_out(r)).count(),
                mean_time: mean(&|r| if timed_out(r) { r.timeout } else { r.report.total_time }),
                mean_par2: mean(&|r| if timed_out(r) { 2.0 * r.timeout } else { r.report.total_time }),
                mean_conflicts: mean(&|r| r.report.conflicts as f64),
                mean_eclauses: mean(&|r| r.report.eclauses_added as f64),
                mean_overhead: mean(&|r| r.report.eclause_overhead_time),
                active_e: ratio(sum(&|r| r.eclauses_live), sum(&|r| r.eclause_family_total)),
                active_c: ratio(sum(&|r| r.conflict_clauses_live), sum(&|r| r.conflict_clauses_total)),
            }
        })
        .collect();
    rows.sort_by(|a, b| a.mean_par2.total_cmp(&b.mean_par2).then_with(|| a.config.cmp(&b.config)));
    rows
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<28} {:>5} {:>9} {:>10} {:>10} {:>12} {:>10} {:>10} {:>8} {:>8}",
        "config", "n", "timed-out", "time", "par-2", "conflicts", "eclauses", "overhead", "activeE", "activeC"
    );
    let pct = |r: Option<f64>| r.map_or_else(|| "-".to_string(), |r| format!("{:.1}%", 100.0 * r));
    for r in rows {
        let _ = writeln!(
            s,
            "{:<28} {:>5} {:>9} {:>10.4} {:>10.4} {:>12.1} {:>10.1} {:>10.4} {:>8} {:>8}",
            r.config,
            r.instances,
            r.timed_out,
            r.mean_time,
            r.mean_par2,
            r.mean_conflicts,
            r.mean_eclauses,
            r.mean_overhead,
            pct(r.active_e),
            pct(r.active_c)
        );
    }
    s
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m: Manifest = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut seen = HashSet::new();
    for c in &m.configs {
        if !seen.insert(c.name.as_str()) {
            bail!("duplicate config name `{}`", c.name);
        }
    }
    Ok(m)
}

/// Runs every configuration on every instance. Records come back in
/// manifest order regardless of scheduling.
pub fn execute(m: &Manifest, base: &Path, timeout: f64, jobs: usize) -> Result<Vec<Record>> {
    let resolve = |p: &Option<PathBuf>| p.as_ref().map(|p| base.join(p));
    let mut runs = Vec::new();
    for c in &m.configs {
        let flags = SolveFlags::parse_list(&c.flags).with_context(|| format!("config `{}`", c.name))?;
        for inst in &m.instances {
            let cnf = base.join(&inst.cnf);
            if !cnf.is_file() {
                bail!("missing instance file {}", cnf.display());
            }
            let mut f = flags.clone();
            f.timeout = timeout;
            f.sidecar = f.sidecar.or_else(|| resolve(&inst.sidecar));
            f.generators = f.generators.or_else(|| resolve(&inst.generators));
            f.nonsym = f.nonsym.or_else(|| resolve(&inst.nonsym));
            for p in [&f.sidecar, &f.generators, &f.nonsym].into_iter().flatten() {
                if !p.is_file() {
                    bail!("missing file {}", p.display());
                }
            }
            // fail on bad combinations before anything runs
            f.solver_config().with_context(|| format!("config `{}` on {}", c.name, cnf.display()))?;
            let name = inst.name.clone().unwrap_or_else(|| {
                inst.cnf.file_stem().map_or_else(|| inst.cnf.display().to_string(), |s| s.to_string_lossy().into_owned())
            });
            runs.push((c.name.clone(), name, cnf, f));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    pool.install(|| {
        runs.par_iter()
            .map(|(config, instance, cnf, flags)| {
                let report = flags.solve(cnf).with_context(|| format!("{config} on {}", cnf.display()))?;
                eprintln!("{config:>24} {instance:<24} {} {:.3}s", report.outcome.as_str(), report.total_time);
                Ok(Record { config: config.clone(), instance: instance.clone(), timeout, report })
            })
            .collect()
    })
}

pub fn read_records(path: &Path) -> Result<Vec<Record>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("{}:{}", path.display(), i + 1)))
        .collect()
}

pub fn write_records(path: &Path, records: &[Record]) -> Result<()> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))
}

pub fn run(args: BenchArgs) -> Result<()> {
    let records = match (&args.from_records, &args.manifest) {
        (Some(path), _) => read_records(path)?,
        (None, Some(path)) => {
            let m = load_manifest(path)?;
            let base = path.parent().unwrap_or(Path::new("."));
            let timeout = args.timeout.or(m.timeout).unwrap_or(1800.0);
            let jobs = args
                .jobs
                .or(m.jobs)
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
                .max(1);
            execute(&m, base, timeout, jobs)?
        }
        (None, None) => bail!("either a manifest or --from-records is required"),
    };
    if let Some(path) = &args.records {
        write_records(path, &records)?;
    }
    let rows = aggregate(&records);
    print!("{}", format_table(&rows));
    if let Some(path) = &args.table {
        fs::write(path, serde_json::to_string_pretty(&rows)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(outcome: Outcome, time: f64, conflicts: u64) -> SolveReport {
        SolveReport {
            outcome,
            model: None,
            conflicts,
            decisions: 0,
            propagations: 0,
            restarts: 0,
            reductions: 0,
            eclauses_generated: 4,
            eclauses_filtered: 2,
            eclauses_added: 2,
            eclauses_live: 1,
            eclause_family_total: 2,
            conflict_clauses_live: 3,
            conflict_clauses_total: 4,
            eclause_overhead_time: 0.5,
            total_time: time,
        }
    }

    fn rec(config: &str, outcome: Outcome, time: f64) -> Record {
        Record { config: config.into(), instance: format!("i{time}"), timeout: 10.0, report: report(outcome, time, 7) }
    }

    #[test]
    fn par2_example() {
        let rows = aggregate(&[rec("a", Outcome::Timeout, 10.0), rec("a", Outcome::Unsat, 2.0)]);
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!((r.instances, r.timed_out), (2, 1));
        assert_eq!(r.mean_time, 6.0);
        assert_eq!(r.mean_par2, 11.0);
        assert!(r.mean_par2 >= r.mean_time);
        assert_eq!(r.active_e, Some(0.5));
        assert_eq!(r.active_c, Some(0.75));
    }

    #[test]
    fn timeout_counts_the_limit_not_the_overshoot() {
        let rows = aggregate(&[rec("a", Outcome::Timeout, 10.4)]);
        assert_eq!(rows[0].mean_time, 10.0);
        assert_eq!(rows[0].mean_par2, 20.0);
    }

    #[test]
    fn empty_and_sorted() {
        assert!(aggregate(&[]).is_empty());
        let rows = aggregate(&[rec("slow", Outcome::Sat, 5.0), rec("fast", Outcome::Sat, 1.0), rec("mid", Outcome::Sat, 3.0)]);
        let names: Vec<&str> = rows.iter().map(|r| r.config.as_str()).collect();
        assert_eq!(names, vec!["fast", "mid", "slow"]);
        assert!(format_table(&rows).lines().count() == 4);
    }

    #[test]
    fn records_round_trip_bit_exactly() {
        let mut records = Vec::new();
        for (i, t) in [0.1, 1.0 / 3.0, 2.718281828459046, 1e-9].iter().enumerate() {
            let mut r = rec(if i % 2 == 0 { "x" } else { "y" }, Outcome::Sat, *t);
            r.report.eclause_overhead_time = t / 7.0;
            records.push(r);
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        write_records(&path, &records).unwrap();
        let back = read_records(&path).unwrap();
        assert_eq!(back, records);
        assert_eq!(aggregate(&back), aggregate(&records));
    }

    #[test]
    fn duplicate_config_names_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.toml");
        fs::write(&path, "[[config]]\nname = \"a\"\n[[config]]\nname = \"a\"\n").unwrap();
        assert!(load_manifest(&path).is_err());
        fs::write(&path, "timeout = 5.0\n").unwrap();
        let m = load_manifest(&path).unwrap();
        assert!(execute(&m, dir.path(), 5.0, 1).unwrap().is_empty());
    }
}
